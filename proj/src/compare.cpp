#include <algorithm>
#include <cmath>
#include <limits>

#include "pwl2/flow.hpp"
#include "pwl2/oracle.hpp"

namespace pwl2::oracle {

double compare_flow(const NormalizedSystem& ns, Vec2 x0, double t_end, double h) {
    if (t_end == 0.0) {
        return 0.0;
    }
    const bool backward = t_end < 0.0;
    const NormalizedSystem traced = backward ? reversed(ns) : ns;
    const Orbit orbit = trace_orbit(traced, x0, std::numeric_limits<std::size_t>::max(), std::abs(t_end), false);
    const Trajectory ref = rk_integrate(ns, x0, t_end, h);

    const double last = orbit.termination == Termination::HitSlidingSegment ? orbit.end_time : std::abs(t_end);
    const double floor = 1e-12 * x0.norm();
    double worst = 0.0;
    for (const Sample& s : ref.samples) {
        const double tau = std::abs(s.t);
        if (tau > last) {
            break;
        }
        const Vec2 exact = orbit.at(tau);
        worst = std::max(worst, (exact - s.x).norm() / std::max(exact.norm(), floor));
    }
    return worst;
}

}  // namespace pwl2::oracle
