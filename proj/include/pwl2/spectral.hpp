#pragma once

#include <optional>
#include <vector>

#include "pwl2/linalg.hpp"

namespace pwl2 {

enum class SpectralKind { Focus, RepeatedDefective, RepeatedDiagonal, RealDistinct };

[[nodiscard]] const char* to_string(SpectralKind kind);

/**
 * Closed-form eigen data of a real 2x2 matrix.
 *
 * Real kinds store lambda1 >= lambda2 (equal for the repeated kinds). Focus stores
 * alpha +/- beta i with beta > 0.
 */
struct SpectralData {
    SpectralKind kind = SpectralKind::RealDistinct;
    double alpha = 0.0;
    double beta = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    /// Jordan-chain scalar (a11 - a22) / 2, set for RepeatedDefective.
    double m = 0.0;
    /// Larger-modulus real eigenvalue; empty for Focus.
    std::optional<double> dominant;
    /// Unit directions of the eigenlines: one per eigenvalue for RealDistinct (lambda1 first),
    /// one for RepeatedDefective, none otherwise.
    std::vector<Vec2> eigvec_lines;

    [[nodiscard]] bool is_focus() const { return kind == SpectralKind::Focus; }
    [[nodiscard]] bool is_repeated() const {
        return kind == SpectralKind::RepeatedDefective || kind == SpectralKind::RepeatedDiagonal;
    }
    /// Largest real part among the eigenvalues.
    [[nodiscard]] double max_real_part() const { return is_focus() ? alpha : lambda1; }
};

/// Relative band on tr^2 - 4 det inside which the eigenvalue is treated as repeated.
inline constexpr double kRepeatedTolerance = 1e-9;

[[nodiscard]] SpectralData eigen2(const Mat2& a);

/// Throws Error(FocusHasNoDominantReal) for a focus.
[[nodiscard]] double dominant_eigenvalue(const SpectralData& s);

/// The matrix M whose columns are the eigenvector / Jordan chain of `a`, so that
/// inverse(M) * a * M is the Jordan form. Requires a12 != 0 (NotObservable otherwise) and a
/// RepeatedDefective or RealDistinct spectrum (InvalidArgument otherwise).
[[nodiscard]] Mat2 jordan_chain_basis(const Mat2& a, const SpectralData& s);

/// [[l, 1], [0, l]] or diag(l1, l2) matching `jordan_chain_basis`.
[[nodiscard]] Mat2 jordan_form(const SpectralData& s);

/// Unit vector spanning ker(a - lambda I), first nonzero component positive.
[[nodiscard]] Vec2 eigenvector(const Mat2& a, double lambda);

/// Eigenvalue of smaller modulus for the real kinds (the slow direction of a node).
[[nodiscard]] double slow_eigenvalue(const SpectralData& s);

}  // namespace pwl2
