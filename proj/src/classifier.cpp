#include "pwl2/classifier.hpp"

#include <cmath>

namespace pwl2 {

namespace {

bool has_nonnegative_real_eigenvalue(const SpectralData& s) {
    return !s.is_focus() && s.lambda1 >= 0.0;
}

double focus_ratio(const SpectralData& s) { return s.alpha / s.beta; }

/// Node in the sense of the homoclinic criterion: real, nonzero, same-signed eigenvalues with a
/// one-dimensional eigenspace for the repeated case.
bool is_node(const SpectralData& s) {
    return (s.kind == SpectralKind::RepeatedDefective || s.kind == SpectralKind::RealDistinct) &&
           s.lambda1 * s.lambda2 > 0.0;
}

}  // namespace

const char* to_string(StabilityClause c) {
    switch (c) {
        case StabilityClause::SignCondition_a: return "SignCondition_a";
        case StabilityClause::NonnegRealEigen_b: return "NonnegRealEigen_b";
        case StabilityClause::FocusSum_c: return "FocusSum_c";
    }
    return "Unknown";
}

const char* to_string(Orientation o) {
    return o == Orientation::Clockwise ? "Clockwise" : "CounterClockwise";
}

const char* to_string(AxisSide s) { return s == AxisSide::Above_x1 ? "Above_x1" : "Below_x1"; }

const char* to_string(HomoclinicClause c) {
    switch (c) {
        case HomoclinicClause::NotObservable: return "NotObservable";
        case HomoclinicClause::NotNode_a: return "NotNode_a";
        case HomoclinicClause::SignCondition_b: return "SignCondition_b";
        case HomoclinicClause::DominantProduct_b: return "DominantProduct_b";
    }
    return "Unknown";
}

const char* to_string(HalfRay r) { return r == HalfRay::Positive ? "x2>0" : "x2<0"; }

const char* to_string(SlidingNature n) {
    return n == SlidingNature::Attractive ? "Attractive" : "Repelling";
}

bool HomoclinicCone::contains(Vec2 x) const {
    if (x.x1 > 0.0) {
        return dot(normal_plus, x) > 0.0;
    }
    if (x.x1 < 0.0) {
        return dot(normal_minus, x) > 0.0;
    }
    return seed_sign * x.x2 > 0.0;
}

Orientation crossing_orientation(const Mat2& b) {
    return b.a12 > 0.0 ? Orientation::Clockwise : Orientation::CounterClockwise;
}

std::optional<double> dominant_product(const NormalizedSystem& ns) {
    if (ns.spectral_plus.is_focus() || ns.spectral_minus.is_focus()) {
        return std::nullopt;
    }
    return dominant_eigenvalue(ns.spectral_plus) * dominant_eigenvalue(ns.spectral_minus);
}

StabilityVerdict classify_stability(const NormalizedSystem& ns) {
    StabilityVerdict v;
    if (!(ns.a12_product() > 0.0)) {
        v.failed_condition = StabilityClause::SignCondition_a;
    } else if (has_nonnegative_real_eigenvalue(ns.spectral_plus) ||
               has_nonnegative_real_eigenvalue(ns.spectral_minus)) {
        v.failed_condition = StabilityClause::NonnegRealEigen_b;
    } else if (ns.spectral_plus.is_focus() && ns.spectral_minus.is_focus() &&
               !(focus_ratio(ns.spectral_plus) + focus_ratio(ns.spectral_minus) < -kFocusSumTolerance)) {
        v.failed_condition = StabilityClause::FocusSum_c;
    }
    v.stable = !v.failed_condition.has_value();
    return v;
}

PeriodicInfo classify_periodic(const NormalizedSystem& ns) {
    PeriodicInfo info;
    if (ns.spectral_plus.is_focus() && ns.spectral_minus.is_focus()) {
        info.focus_sum = focus_ratio(ns.spectral_plus) + focus_ratio(ns.spectral_minus);
    }
    if (!(ns.a12_product() > 0.0)) {
        info.sliding = ns.a12_product() < 0.0;
        return info;
    }
    if (info.focus_sum && std::abs(*info.focus_sum) <= kFocusSumTolerance) {
        info.exists = true;
        info.period = M_PI / ns.spectral_plus.beta + M_PI / ns.spectral_minus.beta;
    }
    return info;
}

InvariantHalfLine slow_half_line(const Mat2& b, const SpectralData& s, Side side) {
    if (s.is_focus() || s.eigvec_lines.empty()) {
        throw Error(ErrorCode::InvalidArgument, "slow half-line needs a node with an eigenline", side);
    }
    InvariantHalfLine h;
    h.side = side;
    h.eigenvalue = slow_eigenvalue(s);
    Vec2 d = s.eigvec_lines.front();
    if (s.kind == SpectralKind::RealDistinct && h.eigenvalue != s.lambda1) {
        d = s.eigvec_lines.back();
    }
    if (b.a12 != 0.0) {
        h.line = {b.a11 - h.eigenvalue, b.a12};
    } else {
        h.line = {-d.x2, d.x1};
    }
    const double want = side == Side::Plus ? 1.0 : -1.0;
    if (d.x1 * want < 0.0) {
        d = -d;
    }
    h.direction = d;
    return h;
}

HomoclinicInfo classify_homoclinic(const NormalizedSystem& ns) {
    HomoclinicInfo info;
    const Mat2& bp = ns.b_plus;
    const Mat2& bm = ns.b_minus;
    if (bp.a12 == 0.0 || bm.a12 == 0.0) {
        info.failed = HomoclinicClause::NotObservable;
        return info;
    }
    if (!is_node(ns.spectral_plus) || !is_node(ns.spectral_minus)) {
        info.failed = HomoclinicClause::NotNode_a;
        return info;
    }
    if (!(ns.a12_product() > 0.0)) {
        info.failed = HomoclinicClause::SignCondition_b;
        return info;
    }
    const double lambda_plus = dominant_eigenvalue(ns.spectral_plus);
    if (!(lambda_plus * dominant_eigenvalue(ns.spectral_minus) < 0.0)) {
        info.failed = HomoclinicClause::DominantProduct_b;
        return info;
    }

    HomoclinicWitness w;
    w.manifold_plus = slow_half_line(bp, ns.spectral_plus, Side::Plus);
    w.manifold_minus = slow_half_line(bm, ns.spectral_minus, Side::Minus);

    // A boundary seed (0, x2) flows forward into the stable side and backward into the unstable
    // one exactly when sign(x2) = -sign(b12 * lambda+).
    const double s = (bp.a12 * lambda_plus > 0.0) ? -1.0 : 1.0;
    w.cone.seed_sign = s;
    const Vec2 dp = w.manifold_plus.direction;         // x1 > 0 already
    const Vec2 dm = -1.0 * w.manifold_minus.direction;  // flipped into x1 > 0
    w.cone.normal_plus = s * Vec2{-dp.x2, dp.x1};
    w.cone.normal_minus = s * Vec2{-dm.x2, dm.x1};

    w.orientation = crossing_orientation(bp);
    w.side_of_axis = s > 0.0 ? AxisSide::Above_x1 : AxisSide::Below_x1;

    info.exists = true;
    info.witness = w;
    return info;
}

std::vector<SlidingSegment> classify_sliding(const NormalizedSystem& ns) {
    std::vector<SlidingSegment> out;
    const double ap = ns.b_plus.a12;
    const double am = ns.b_minus.a12;
    if (ap * am > 0.0) {
        return out;
    }
    for (HalfRay ray : {HalfRay::Positive, HalfRay::Negative}) {
        const double x2 = ray == HalfRay::Positive ? 1.0 : -1.0;
        const double right_normal = ap * x2;  // x1-velocity of the field governing x1 > 0
        const double left_normal = am * x2;
        if (right_normal < 0.0 && left_normal > 0.0) {
            out.push_back({ray, SlidingNature::Attractive});
        } else if (right_normal > 0.0 && left_normal < 0.0) {
            out.push_back({ray, SlidingNature::Repelling});
        }
    }
    return out;
}

Verdicts classify_all(const NormalizedSystem& ns) {
    return {classify_stability(ns), classify_periodic(ns), classify_homoclinic(ns), classify_sliding(ns)};
}

}  // namespace pwl2
