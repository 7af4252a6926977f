#include "pwl2/normalization.hpp"

#include <cmath>

namespace pwl2 {

namespace {

constexpr double kObservabilityTolerance = 1e-12;

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_boundary(Vec2 c) {
    if (!c.is_finite() || c.is_zero()) {
        throw Error(ErrorCode::InvalidBoundary, "boundary covector c must be finite and nonzero");
    }
}

void require_matrix(const Mat2& a, Side side) {
    if (!a.is_finite()) {
        throw Error(ErrorCode::Degenerate, std::string("non-finite entry in A") + (side == Side::Plus ? "+" : "-"),
                    side);
    }
    const double scale = a.max_abs();
    if (scale == 0.0 || std::abs(a.det()) <= 1e-14 * scale * scale) {
        throw Error(ErrorCode::Degenerate, std::string("A") + (side == Side::Plus ? "+" : "-") + " is singular",
                    side);
    }
}

}  // namespace

const char* to_string(CrossingClass c) {
    return c == CrossingClass::Transversal ? "Transversal" : "Sliding";
}

double observability_det(Vec2 c, const Mat2& a) {
    const double r1 = c.x1 * a.a11 + c.x2 * a.a21;
    const double r2 = c.x1 * a.a12 + c.x2 * a.a22;
    return c.x1 * r2 - c.x2 * r1;
}

bool observability(Vec2 c, const Mat2& a) {
    require_boundary(c);
    const double d = observability_det(c, a);
    return std::abs(d) > kObservabilityTolerance * dot(c, c) * a.max_abs();
}

Mat2 build_T(Vec2 c) {
    require_boundary(c);
    if (c.x1 != 0.0) {
        return {c.x1, c.x2, 0.0, sign(c.x1)};
    }
    return {0.0, c.x2, -sign(c.x2), 0.0};
}

double b12_scalar_formula(Vec2 c, const Mat2& a) {
    require_boundary(c);
    const double d = observability_det(c, a);
    if (c.x1 != 0.0) {
        return d / (c.x1 * sign(c.x1));
    }
    return -d / (c.x2 * sign(c.x2));
}

NormalizedSystem make_normalized(const Mat2& b_plus, const Mat2& b_minus) {
    NormalizedSystem ns;
    ns.b_plus = b_plus;
    ns.b_minus = b_minus;
    ns.t = Mat2::identity();
    ns.spectral_plus = eigen2(b_plus);
    ns.spectral_minus = eigen2(b_minus);
    ns.source = SystemSpec{{1.0, 0.0}, b_plus, b_minus};
    ns.b12_formula_plus = b_plus.a12;
    ns.b12_formula_minus = b_minus.a12;
    return ns;
}

NormalizedSystem normalize(const SystemSpec& spec) {
    require_boundary(spec.c);
    for (Side side : {Side::Plus, Side::Minus}) {
        require_matrix(spec.matrix(side), side);
        if (!observability(spec.c, spec.matrix(side))) {
            throw Error(ErrorCode::NotObservable,
                        std::string("(c, A") + (side == Side::Plus ? "+" : "-") + ") is not observable", side);
        }
    }

    const Mat2 t = build_T(spec.c);
    const Mat2 t_inv = t.inverse();
    NormalizedSystem ns = make_normalized(t * spec.a_plus * t_inv, t * spec.a_minus * t_inv);
    ns.t = t;
    ns.source = spec;
    ns.b12_formula_plus = b12_scalar_formula(spec.c, spec.a_plus);
    ns.b12_formula_minus = b12_scalar_formula(spec.c, spec.a_minus);
    return ns;
}

NormalizedSystem reversed(const NormalizedSystem& ns) {
    NormalizedSystem r = make_normalized(-1.0 * ns.b_plus, -1.0 * ns.b_minus);
    r.t = ns.t;
    r.source = SystemSpec{ns.source.c, -1.0 * ns.source.a_plus, -1.0 * ns.source.a_minus};
    r.b12_formula_plus = -ns.b12_formula_plus;
    r.b12_formula_minus = -ns.b12_formula_minus;
    return r;
}

CrossingClass crossing_condition(const SystemSpec& spec) {
    for (Side side : {Side::Plus, Side::Minus}) {
        if (!observability(spec.c, spec.matrix(side))) {
            throw Error(ErrorCode::NotObservable, "crossing condition needs both pairs observable", side);
        }
    }
    const double product = observability_det(spec.c, spec.a_plus) * observability_det(spec.c, spec.a_minus);
    if (product == 0.0) {
        throw Error(ErrorCode::Degenerate, "crossing product vanished for observable pairs");
    }
    return product > 0.0 ? CrossingClass::Transversal : CrossingClass::Sliding;
}

CrossingClass crossing_condition(const NormalizedSystem& ns) {
    const double product = ns.a12_product();
    if (product == 0.0) {
        throw Error(ErrorCode::NotObservable, "b12 vanishes on at least one side");
    }
    return product > 0.0 ? CrossingClass::Transversal : CrossingClass::Sliding;
}

}  // namespace pwl2
