#include "pwl2/flow.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace pwl2 {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr int kGridPointsPerEFold = 64;
constexpr double kGridSpan = 1e-9;  // first nonzero grid time relative to the horizon
constexpr std::size_t kVerifyMaxCrossings = 16;

Vec2 unit(Vec2 v) { return (1.0 / v.norm()) * v; }

bool in_side(Side side, double x1) { return side == Side::Plus ? x1 > 0.0 : x1 < 0.0; }

/// Decomposes the solution of a real-spectrum system into its asymptotic fate.
AsymptoticFate asymptotic_fate(const Mat2& a, const SpectralData& s, Vec2 x0) {
    AsymptoticFate fate;
    double rate = s.lambda1;
    Vec2 dir = x0;
    if (s.kind == SpectralKind::RealDistinct) {
        const double gap = s.lambda1 - s.lambda2;
        const Vec2 p1 = (1.0 / gap) * ((a - s.lambda2 * Mat2::identity()) * x0);
        const Vec2 p2 = (-1.0 / gap) * ((a - s.lambda1 * Mat2::identity()) * x0);
        if (p1.norm() > 1e-14 * x0.norm()) {
            dir = p1;
        } else {
            dir = p2;
            rate = s.lambda2;
        }
    } else if (s.kind == SpectralKind::RepeatedDefective) {
        const Vec2 nx = (a - s.lambda1 * Mat2::identity()) * x0;
        if (nx.norm() > 1e-14 * x0.norm()) {
            dir = nx;
        }
    }
    fate.kind = rate < 0.0 ? AsymptoticFate::Kind::Origin : AsymptoticFate::Kind::Infinity;
    fate.direction = unit(dir);
    return fate;
}

/// Time after which x1(t) can no longer change sign; 0 when it never does for t > 0.
double sign_change_horizon(const Mat2& a, const SpectralData& s, Vec2 x0) {
    switch (s.kind) {
        case SpectralKind::Focus:
            return M_PI / s.beta;
        case SpectralKind::RepeatedDiagonal:
            return 0.0;
        case SpectralKind::RepeatedDefective: {
            // x1(t) = e^{lambda t} (p + q t)
            const double p = x0.x1;
            const double q = ((a - s.lambda1 * Mat2::identity()) * x0).x1;
            if (q == 0.0 || p * q > 0.0) {
                return 0.0;
            }
            return 2.0 * std::abs(p / q) + 1.0;
        }
        case SpectralKind::RealDistinct: {
            // x1(t) = u e^{lambda1 t} + v e^{lambda2 t}
            const double gap = s.lambda1 - s.lambda2;
            const double u = ((a - s.lambda2 * Mat2::identity()) * x0).x1 / gap;
            const double v = -((a - s.lambda1 * Mat2::identity()) * x0).x1 / gap;
            if (u == 0.0 || v == 0.0 || u * v > 0.0) {
                return 0.0;
            }
            return (2.0 * std::abs(std::log(std::abs(v / u))) + 1.0) / gap;
        }
    }
    return 0.0;
}

/// Smallest positive root of x1(t) on (0, horizon], bracketed on a geometric grid.
std::optional<double> first_boundary_root(const Mat2& a, const SpectralData& s, Vec2 x0, double horizon) {
    const auto x1 = [&](double t) { return flow_closed_form(a, s, x0, t).x1; };
    const double sign0 = x0.x1 > 0.0 ? 1.0 : -1.0;
    const double ratio = std::exp(1.0 / kGridPointsPerEFold);

    double lo = 0.0;
    double t = kGridSpan * horizon;
    std::optional<double> hi;
    while (true) {
        const double tt = std::min(t, horizon);
        if (sign0 * x1(tt) <= 0.0) {
            hi = tt;
            break;
        }
        if (tt >= horizon) {
            break;
        }
        lo = tt;
        t *= ratio;
    }
    if (!hi) {
        return std::nullopt;
    }
    double h = *hi;
    for (int i = 0; i < 200 && h - lo > kRootTolerance * std::max(1.0, h); ++i) {
        const double mid = 0.5 * (lo + h);
        if (sign0 * x1(mid) > 0.0) {
            lo = mid;
        } else {
            h = mid;
        }
    }
    return 0.5 * (lo + h);
}

std::optional<double> first_time_below(const Arc& arc, double threshold, double max_time) {
    const double rate = std::max({std::abs(arc.spectral.lambda1), std::abs(arc.spectral.lambda2), 1e-3});
    const double dt = 1.0 / (16.0 * rate);
    const auto norm_at = [&](double tau) { return arc.at(arc.t0 + tau).norm(); };
    double prev = 0.0;
    if (norm_at(0.0) <= threshold) {
        return 0.0;
    }
    for (double tau = dt;; tau += dt) {
        const double tt = std::min(tau, max_time);
        if (norm_at(tt) <= threshold) {
            double lo = prev;
            double hi = tt;
            for (int i = 0; i < 100 && hi - lo > kRootTolerance * std::max(1.0, hi); ++i) {
                const double mid = 0.5 * (lo + hi);
                (norm_at(mid) <= threshold ? hi : lo) = mid;
            }
            return hi;
        }
        if (tt >= max_time) {
            return std::nullopt;
        }
        prev = tt;
    }
}

double finite_or_max(double v) { return std::isfinite(v) ? v : DBL_MAX; }

}  // namespace

const char* to_string(AsymptoticFate::Kind k) {
    return k == AsymptoticFate::Kind::Origin ? "Origin" : "Infinity";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::ReachedOrigin: return "ReachedOrigin";
        case Termination::Escaped: return "Escaped";
        case Termination::MaxCrossings: return "MaxCrossings";
        case Termination::HitSlidingSegment: return "HitSlidingSegment";
        case Termination::Closed: return "Closed";
        case Termination::Horizon: return "Horizon";
    }
    return "Unknown";
}

Vec2 flow_closed_form(const Mat2& a, const SpectralData& s, Vec2 x0, double t) {
    if (t == 0.0) {
        return x0;
    }
    switch (s.kind) {
        case SpectralKind::Focus: {
            // e^{At} = e^{alpha t} [cos(beta t) I + sin(beta t)/beta (A - alpha I)]
            const Vec2 rot = (a - s.alpha * Mat2::identity()) * x0;
            const double e = std::exp(s.alpha * t);
            const double c = std::cos(s.beta * t);
            const double sn = std::sin(s.beta * t) / s.beta;
            return e * (c * x0 + sn * rot);
        }
        case SpectralKind::RepeatedDefective: {
            // e^{At} = e^{lambda t} [I + t (A - lambda I)]
            const Vec2 nx = (a - s.lambda1 * Mat2::identity()) * x0;
            return std::exp(s.lambda1 * t) * (x0 + t * nx);
        }
        case SpectralKind::RepeatedDiagonal:
            return std::exp(s.lambda1 * t) * x0;
        case SpectralKind::RealDistinct: {
            // Spectral projectors: e^{At} = e^{l1 t} P1 + e^{l2 t} P2
            const double gap = s.lambda1 - s.lambda2;
            const Vec2 p1 = (a - s.lambda2 * Mat2::identity()) * x0;
            const Vec2 p2 = (a - s.lambda1 * Mat2::identity()) * x0;
            return (1.0 / gap) * (std::exp(s.lambda1 * t) * p1 - std::exp(s.lambda2 * t) * p2);
        }
    }
    return x0;
}

CrossingResult next_crossing(const Mat2& a, Side side, Vec2 x0) {
    return next_crossing(a, eigen2(a), side, x0);
}

CrossingResult next_crossing(const Mat2& a, const SpectralData& s, Side side, Vec2 x0) {
    if (x0.is_zero()) {
        throw Error(ErrorCode::OriginIsEquilibrium, "the origin is an equilibrium", side);
    }

    if (x0.x1 == 0.0) {
        const double normal = a.a12 * x0.x2;
        const bool enters = side == Side::Plus ? normal > 0.0 : normal <= 0.0;
        if (!enters) {
            throw Error(ErrorCode::WrongSide, "field at the boundary seed does not enter this side", side);
        }
        if (s.is_focus()) {
            CrossingEvent ev;
            ev.t_star = M_PI / s.beta;
            ev.point = {0.0, -x0.x2 * std::exp(s.alpha * M_PI / s.beta)};
            ev.incoming_side = side;
            ev.outgoing_side = opposite(side);
            return ev;
        }
        return asymptotic_fate(a, s, x0);
    }

    if (!in_side(side, x0.x1)) {
        throw Error(ErrorCode::WrongSide, "seed is not inside this half-plane", side);
    }
    const double horizon = sign_change_horizon(a, s, x0);
    if (horizon > 0.0) {
        if (const auto root = first_boundary_root(a, s, x0, horizon)) {
            CrossingEvent ev;
            ev.t_star = *root;
            ev.point = {0.0, flow_closed_form(a, s, x0, *root).x2};
            ev.incoming_side = side;
            ev.outgoing_side = opposite(side);
            return ev;
        }
    }
    if (s.is_focus()) {
        throw Error(ErrorCode::Degenerate, "focus half-turn failed to bracket a boundary root", side);
    }
    return asymptotic_fate(a, s, x0);
}

std::optional<double> half_return_map(const NormalizedSystem& ns, Side side, double x20) {
    if (x20 == 0.0) {
        throw Error(ErrorCode::OriginIsEquilibrium, "the origin is an equilibrium", side);
    }
    const double normal = ns.matrix(side).a12 * x20;
    const bool enters = side == Side::Plus ? normal > 0.0 : normal < 0.0;
    if (!enters) {
        throw Error(ErrorCode::WrongSide, "field at the boundary point does not enter this side", side);
    }
    const SpectralData& s = ns.spectral(side);
    if (!s.is_focus()) {
        return std::nullopt;
    }
    return -x20 * std::exp(s.alpha * M_PI / s.beta);
}

BoundaryFlow boundary_flow(const NormalizedSystem& ns, double x2) {
    const double right = ns.b_plus.a12 * x2;
    const double left = ns.b_minus.a12 * x2;
    if (right > 0.0 && left >= 0.0) {
        return BoundaryFlow::EnterPlus;
    }
    if (right <= 0.0 && left <= 0.0) {
        return BoundaryFlow::EnterMinus;
    }
    if (right > 0.0 && left < 0.0) {
        return BoundaryFlow::EnterPlus;  // repelling half-ray: leave to the right
    }
    return BoundaryFlow::Attracting;
}

Vec2 Orbit::at(double t) const {
    if (arcs.empty()) {
        return seed;
    }
    for (const Arc& arc : arcs) {
        if (t <= arc.t1) {
            return arc.at(t);
        }
    }
    return arcs.back().at(t);
}

Orbit trace_orbit(const NormalizedSystem& ns, Vec2 x0, std::size_t max_crossings, double horizon,
                  bool stop_on_closure) {
    if (x0.is_zero()) {
        throw Error(ErrorCode::OriginIsEquilibrium, "cannot trace from the origin");
    }
    Orbit orbit;
    orbit.seed = x0;
    const double threshold = kOriginThreshold * x0.norm();

    Side side = Side::Minus;
    if (x0.x1 > 0.0) {
        side = Side::Plus;
    } else if (x0.x1 == 0.0) {
        const BoundaryFlow bf = boundary_flow(ns, x0.x2);
        if (bf == BoundaryFlow::Attracting) {
            orbit.termination = Termination::HitSlidingSegment;
            return orbit;
        }
        side = bf == BoundaryFlow::EnterPlus ? Side::Plus : Side::Minus;
    }

    std::optional<Vec2> closure_ref;
    if (x0.x1 == 0.0) {
        closure_ref = x0;
    }

    double t = 0.0;
    Vec2 x = x0;
    while (true) {
        Arc arc;
        arc.side = side;
        arc.t0 = t;
        arc.start = x;
        arc.matrix = ns.matrix(side);
        arc.spectral = ns.spectral(side);

        const CrossingResult r = next_crossing(arc.matrix, arc.spectral, side, x);
        if (const auto* fate = std::get_if<AsymptoticFate>(&r)) {
            arc.t1 = kInfiniteTime;
            orbit.fate = *fate;
            if (fate->kind == AsymptoticFate::Kind::Infinity) {
                orbit.termination = Termination::Escaped;
                orbit.end_time = t;
            } else {
                arc.end = Vec2{0.0, 0.0};
                if (const auto reach = first_time_below(arc, threshold, horizon - t)) {
                    orbit.termination = Termination::ReachedOrigin;
                    orbit.end_time = t + *reach;
                } else {
                    orbit.termination = Termination::Horizon;
                    orbit.end_time = horizon;
                }
            }
            orbit.arcs.push_back(arc);
            break;
        }

        CrossingEvent ev = std::get<CrossingEvent>(r);
        const double te = t + ev.t_star;
        if (te > horizon) {
            arc.t1 = horizon;
            arc.end = arc.at(horizon);
            orbit.arcs.push_back(arc);
            orbit.termination = Termination::Horizon;
            orbit.end_time = horizon;
            break;
        }
        arc.t1 = te;
        arc.end = ev.point;
        orbit.arcs.push_back(arc);
        orbit.end_time = te;

        const BoundaryFlow bf = boundary_flow(ns, ev.point.x2);
        if (bf == BoundaryFlow::Attracting) {
            orbit.termination = Termination::HitSlidingSegment;
            break;
        }
        ev.t_star = te;
        ev.outgoing_side = bf == BoundaryFlow::EnterPlus ? Side::Plus : Side::Minus;
        orbit.events.push_back(ev);

        if (closure_ref) {
            if (stop_on_closure && (ev.point - *closure_ref).norm() <= kClosureTolerance * closure_ref->norm()) {
                orbit.termination = Termination::Closed;
                break;
            }
        } else {
            closure_ref = ev.point;
        }
        if (orbit.events.size() >= max_crossings) {
            orbit.termination = Termination::MaxCrossings;
            break;
        }
        x = ev.point;
        t = te;
        side = ev.outgoing_side;
    }
    return orbit;
}

double arc_signed_area(const Arc& arc, double t_end) {
    const double a = arc.t0;
    const double b = std::min(arc.t1, t_end);
    if (!(b > a)) {
        return 0.0;
    }
    const auto integrand = [&](double t) {
        const Vec2 x = arc.at(t);
        return cross(x, arc.matrix * x);
    };
    // Composite Simpson; closed forms are cheap so a fine fixed grid is enough.
    const int n = 2 * std::max(200, static_cast<int>(std::ceil((b - a) / 0.004)));
    const double h = (b - a) / n;
    double sum = integrand(a) + integrand(b);
    for (int i = 1; i < n; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(a + i * h);
    }
    return 0.5 * sum * h / 3.0;
}

VerificationReport verify_homoclinic(const NormalizedSystem& ns, Vec2 p, double horizon) {
    VerificationReport rep;
    rep.seed = p;
    rep.horizon = horizon;

    const NormalizedSystem back_ns = reversed(ns);
    const Orbit fwd = trace_orbit(ns, p, kVerifyMaxCrossings, horizon);
    const Orbit bwd = trace_orbit(back_ns, p, kVerifyMaxCrossings, horizon);

    rep.forward = fwd.termination;
    rep.backward = bwd.termination;
    rep.forward_crossings = fwd.events.size();
    rep.backward_crossings = bwd.events.size();
    if (!fwd.arcs.empty()) {
        rep.forward_norm_at_horizon = finite_or_max(fwd.at(horizon).norm());
    }
    if (!bwd.arcs.empty()) {
        rep.backward_norm_at_horizon = finite_or_max(bwd.at(horizon).norm());
    }

    double min_norm = DBL_MAX;
    for (int i = 0; i <= 100; ++i) {
        const double tau = i / 100.0;
        if (!fwd.arcs.empty()) {
            min_norm = std::min(min_norm, fwd.at(tau).norm());
        }
        if (!bwd.arcs.empty()) {
            min_norm = std::min(min_norm, bwd.at(tau).norm());
        }
    }
    rep.min_norm_near_seed = finite_or_max(min_norm / p.norm());

    rep.success = fwd.termination == Termination::ReachedOrigin && bwd.termination == Termination::ReachedOrigin &&
                  fwd.events.empty() && bwd.events.empty();
    if (rep.success) {
        // Backward arcs run under -A; flipping their sign restores the forward-time orientation.
        rep.signed_area = arc_signed_area(fwd.arcs.front(), horizon) - arc_signed_area(bwd.arcs.front(), horizon);
    }
    return rep;
}

}  // namespace pwl2
