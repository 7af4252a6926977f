#pragma once

#include <vector>

#include "pwl2/classifier.hpp"
#include "pwl2/normalization.hpp"

namespace pwl2 {

/// A+- = [[lambda+-, mu], [0, lambda+-]] with lambda+ * lambda- < 0.
struct MuFamily {
    double lambda_plus = 1.0;
    double lambda_minus = -2.0;
    double mu = 0.0;

    [[nodiscard]] Mat2 a_plus() const { return {lambda_plus, mu, 0.0, lambda_plus}; }
    [[nodiscard]] Mat2 a_minus() const { return {lambda_minus, mu, 0.0, lambda_minus}; }
};

/// Throws Error(InvalidFamily) unless lambda_plus * lambda_minus < 0. mu = 0 is allowed and gives
/// the unobservable diagonal pair.
[[nodiscard]] NormalizedSystem mu_family(double lambda_plus, double lambda_minus, double mu);

struct RegimePoint {
    double mu = 0.0;
    HomoclinicInfo verdict;
    /// Opening angle of the homoclinic cone in radians; 0 without homoclinic orbits.
    double cone_width = 0.0;
    /// Area enclosed by the homoclinic loop through the unit boundary seed; 0 without one.
    double loop_area = 0.0;
};

/// exists flips somewhere in [mu_lo, mu_hi].
struct TransitionBracket {
    double mu_lo = 0.0;
    double mu_hi = 0.0;
};

struct ScanResult {
    std::vector<RegimePoint> grid;
    std::vector<TransitionBracket> transitions;
};

/// `mu_values` must be nonempty and sorted ascending (InvalidArgument otherwise).
[[nodiscard]] ScanResult sweep(double lambda_plus, double lambda_minus, const std::vector<double>& mu_values);

[[nodiscard]] double cone_width(const HomoclinicInfo& info);

/// |signed area| of the verified loop through the cone's unit boundary seed; 0 when there is no
/// homoclinic orbit or the witness fails to verify.
[[nodiscard]] double loop_area(const NormalizedSystem& ns, const HomoclinicInfo& info);

}  // namespace pwl2
