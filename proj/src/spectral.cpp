#include "pwl2/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace pwl2 {

namespace {

Vec2 canonical_direction(Vec2 v) {
    const double n = v.norm();
    v = (1.0 / n) * v;
    if (v.x1 < 0.0 || (v.x1 == 0.0 && v.x2 < 0.0)) {
        v = -v;
    }
    return v;
}

}  // namespace

const char* to_string(SpectralKind kind) {
    switch (kind) {
        case SpectralKind::Focus: return "Focus";
        case SpectralKind::RepeatedDefective: return "RepeatedDefective";
        case SpectralKind::RepeatedDiagonal: return "RepeatedDiagonal";
        case SpectralKind::RealDistinct: return "RealDistinct";
    }
    return "Unknown";
}

Vec2 eigenvector(const Mat2& a, double lambda) {
    const double n11 = a.a11 - lambda;
    const double n22 = a.a22 - lambda;
    // Each row (r1, r2) of A - lambda I annihilates (r2, -r1); use the better-conditioned row.
    const Vec2 from_row1{a.a12, -n11};
    const Vec2 from_row2{n22, -a.a21};
    const Vec2 v = from_row1.norm() >= from_row2.norm() ? from_row1 : from_row2;
    if (v.is_zero()) {
        return {1.0, 0.0};
    }
    return canonical_direction(v);
}

SpectralData eigen2(const Mat2& a) {
    SpectralData s;
    const double tr = a.trace();
    const double det = a.det();
    const double disc = tr * tr - 4.0 * det;
    const double scale = std::max({1.0, tr * tr, std::abs(det)});

    if (std::abs(disc) <= kRepeatedTolerance * scale) {
        const double lambda = 0.5 * tr;
        s.lambda1 = s.lambda2 = lambda;
        s.dominant = lambda;
        const Mat2 n = a - lambda * Mat2::identity();
        if (n.max_abs() <= 1e-12 * std::max(1.0, a.max_abs())) {
            s.kind = SpectralKind::RepeatedDiagonal;
        } else {
            s.kind = SpectralKind::RepeatedDefective;
            s.m = 0.5 * (a.a11 - a.a22);
            s.eigvec_lines.push_back(eigenvector(a, lambda));
        }
        return s;
    }

    if (disc < 0.0) {
        s.kind = SpectralKind::Focus;
        s.alpha = 0.5 * tr;
        s.beta = 0.5 * std::sqrt(-disc);
        return s;
    }

    s.kind = SpectralKind::RealDistinct;
    const double sq = std::sqrt(disc);
    // Pick the root free of cancellation first, recover the other from the product.
    if (tr >= 0.0) {
        s.lambda1 = 0.5 * (tr + sq);
        s.lambda2 = det / s.lambda1;
    } else {
        s.lambda2 = 0.5 * (tr - sq);
        s.lambda1 = det / s.lambda2;
    }
    s.dominant = std::abs(s.lambda1) >= std::abs(s.lambda2) ? s.lambda1 : s.lambda2;
    s.eigvec_lines.push_back(eigenvector(a, s.lambda1));
    s.eigvec_lines.push_back(eigenvector(a, s.lambda2));
    return s;
}

double dominant_eigenvalue(const SpectralData& s) {
    if (s.is_focus()) {
        throw Error(ErrorCode::FocusHasNoDominantReal, "a focus has no dominant real eigenvalue");
    }
    if (s.is_repeated()) {
        return s.lambda1;
    }
    return std::abs(s.lambda1) >= std::abs(s.lambda2) ? s.lambda1 : s.lambda2;
}

double slow_eigenvalue(const SpectralData& s) {
    if (s.is_focus()) {
        throw Error(ErrorCode::FocusHasNoDominantReal, "a focus has no real eigenvalue");
    }
    return std::abs(s.lambda1) <= std::abs(s.lambda2) ? s.lambda1 : s.lambda2;
}

Mat2 jordan_chain_basis(const Mat2& a, const SpectralData& s) {
    if (s.kind != SpectralKind::RepeatedDefective && s.kind != SpectralKind::RealDistinct) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("no Jordan chain basis for spectral kind ") + to_string(s.kind));
    }
    if (a.a12 == 0.0) {
        throw Error(ErrorCode::NotObservable, "a12 = 0: boundary line is invariant");
    }
    if (s.kind == SpectralKind::RepeatedDefective) {
        const double m = 0.5 * (a.a11 - a.a22);
        return {a.a12, 0.0, -m, 1.0};
    }
    return {a.a12, a.a12, s.lambda1 - a.a11, s.lambda2 - a.a11};
}

Mat2 jordan_form(const SpectralData& s) {
    switch (s.kind) {
        case SpectralKind::RepeatedDefective: return {s.lambda1, 1.0, 0.0, s.lambda1};
        case SpectralKind::RepeatedDiagonal:
        case SpectralKind::RealDistinct: return {s.lambda1, 0.0, 0.0, s.lambda2};
        case SpectralKind::Focus: return {s.alpha, -s.beta, s.beta, s.alpha};
    }
    return {};
}

}  // namespace pwl2
