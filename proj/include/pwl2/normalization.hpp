#pragma once

#include "pwl2/linalg.hpp"
#include "pwl2/spectral.hpp"

namespace pwl2 {

/// xdot = A+ x where c.x > 0, xdot = A- x where c.x <= 0.
struct SystemSpec {
    Vec2 c{1.0, 0.0};
    Mat2 a_plus;
    Mat2 a_minus;

    [[nodiscard]] const Mat2& matrix(Side s) const { return s == Side::Plus ? a_plus : a_minus; }
};

/// The same system in coordinates y = T x, where the boundary is y1 = 0 and B+ governs y1 > 0.
struct NormalizedSystem {
    Mat2 b_plus;
    Mat2 b_minus;
    Mat2 t = Mat2::identity();
    SpectralData spectral_plus;
    SpectralData spectral_minus;
    SystemSpec source;
    /// b12 of each side from the closed scalar formula; kept for diagnostics only, the
    /// matrices above are authoritative.
    double b12_formula_plus = 0.0;
    double b12_formula_minus = 0.0;

    [[nodiscard]] const Mat2& matrix(Side s) const { return s == Side::Plus ? b_plus : b_minus; }
    [[nodiscard]] const SpectralData& spectral(Side s) const {
        return s == Side::Plus ? spectral_plus : spectral_minus;
    }
    /// b12+ * b12-; positive when both fields cross the boundary in the same direction.
    [[nodiscard]] double a12_product() const { return b_plus.a12 * b_minus.a12; }
};

enum class CrossingClass { Transversal, Sliding };

[[nodiscard]] const char* to_string(CrossingClass c);

/// det [c^T; c^T A].
[[nodiscard]] double observability_det(Vec2 c, const Mat2& a);

/// Rank test on [c^T; c^T A]. Throws Error(InvalidBoundary) for c = 0.
[[nodiscard]] bool observability(Vec2 c, const Mat2& a);

/// Change of variables y = T x taking c.x = 0 onto y1 = 0 and c.x > 0 onto y1 > 0.
[[nodiscard]] Mat2 build_T(Vec2 c);

/// The closed scalar expression for b12 (diagnostic).
[[nodiscard]] double b12_scalar_formula(Vec2 c, const Mat2& a);

/// Throws Error(NotObservable) naming the failing side, Error(InvalidBoundary) for c = 0, and
/// Error(Degenerate) for a singular or non-finite matrix.
[[nodiscard]] NormalizedSystem normalize(const SystemSpec& spec);

/// Wraps matrices that are already in boundary-normalized form. No observability check, so
/// degenerate members of a parametric family can still be represented.
[[nodiscard]] NormalizedSystem make_normalized(const Mat2& b_plus, const Mat2& b_minus);

/// The time-reversed system (B+- replaced by -B+-); same boundary and sides.
[[nodiscard]] NormalizedSystem reversed(const NormalizedSystem& ns);

/// Sign of det[c; cA+] * det[c; cA-]. Requires both pairs observable.
[[nodiscard]] CrossingClass crossing_condition(const SystemSpec& spec);

[[nodiscard]] CrossingClass crossing_condition(const NormalizedSystem& ns);

}  // namespace pwl2
