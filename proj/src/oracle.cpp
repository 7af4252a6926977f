#include "pwl2/oracle.hpp"

#include <cmath>

namespace pwl2::oracle {

namespace {

bool crossed(Side side, double g) { return side == Side::Plus ? g <= 0.0 : g > 0.0; }

}  // namespace

Vec2 rk4_step(const Mat2& a, Vec2 x, double dt) {
    const Vec2 k1 = a * x;
    const Vec2 k2 = a * (x + (0.5 * dt) * k1);
    const Vec2 k3 = a * (x + (0.5 * dt) * k2);
    const Vec2 k4 = a * (x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory rk_integrate(const SystemSpec& field, Vec2 x0, double t_end, double h) {
    if (!(h > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "oracle step must be positive");
    }
    Trajectory traj;
    traj.samples.push_back({0.0, x0});
    if (t_end == 0.0) {
        return traj;
    }
    const Vec2 c = field.c;
    const double dir = t_end > 0.0 ? 1.0 : -1.0;
    const auto n_full = static_cast<long long>(std::floor(std::abs(t_end) / h));
    const double tail = std::abs(t_end) - static_cast<double>(n_full) * h;

    Side side = dot(c, x0) > 0.0 ? Side::Plus : Side::Minus;
    Vec2 x = x0;
    double t = 0.0;

    const long long n_steps = n_full + (tail > 1e-15 * std::abs(t_end) ? 1 : 0);
    for (long long k = 0; k < n_steps; ++k) {
        const double dt = dir * (k < n_full ? h : tail);
        double remaining = dt;
        double t_local = t;
        for (int sub = 0; sub < 8; ++sub) {
            const Mat2& a = field.matrix(side);
            const Vec2 y = rk4_step(a, x, remaining);
            if (!crossed(side, dot(c, y))) {
                x = y;
                break;
            }
            double lo = 0.0;
            double hi = 1.0;
            while ((hi - lo) * std::abs(remaining) > kEventTimeTolerance) {
                const double mid = 0.5 * (lo + hi);
                (crossed(side, dot(c, rk4_step(a, x, mid * remaining))) ? hi : lo) = mid;
            }
            const bool from_seed_on_line = t_local == 0.0 && dot(c, x) == 0.0;
            x = rk4_step(a, x, hi * remaining);
            t_local += hi * remaining;
            remaining -= hi * remaining;
            if (!from_seed_on_line) {
                traj.crossings.push_back(t_local);
            }
            side = opposite(side);
            const double normal = dir * dot(c, field.matrix(side) * x);
            const bool enters = side == Side::Plus ? normal > 0.0 : normal < 0.0;
            if (!enters) {
                traj.hit_sliding = true;
                traj.samples.push_back({t_local, x});
                return traj;
            }
        }
        t = k < n_full ? dir * static_cast<double>(k + 1) * h : t_end;
        traj.samples.push_back({t, x});
        if (x.is_zero()) {
            traj.hit_origin = true;
            return traj;
        }
    }
    return traj;
}

Trajectory rk_integrate(const NormalizedSystem& ns, Vec2 x0, double t_end, double h) {
    return rk_integrate(SystemSpec{{1.0, 0.0}, ns.b_plus, ns.b_minus}, x0, t_end, h);
}

Trajectory rk_integrate(const Mat2& a, Vec2 x0, double t_end, double h) {
    return rk_integrate(SystemSpec{{1.0, 0.0}, a, a}, x0, t_end, h);
}

}  // namespace pwl2::oracle
