#pragma once

#include <vector>

#include "pwl2/linalg.hpp"
#include "pwl2/normalization.hpp"

// Fixed-step RK4 reference integrator for the piecewise field. Validation only: it reads the
// raw matrices and never the closed-form machinery in flow.hpp.

namespace pwl2::oracle {

struct Sample {
    double t = 0.0;
    Vec2 x;
};

struct Trajectory {
    /// Spaced by the configured step, except a shorter final step landing on t_end.
    std::vector<Sample> samples;
    /// Boundary-crossing times, refined by bisection on the local RK4 solution.
    std::vector<double> crossings;
    bool hit_origin = false;
    /// Stopped at a boundary point where the new side's field points straight back.
    bool hit_sliding = false;

    [[nodiscard]] const Sample& back() const { return samples.back(); }
};

inline constexpr double kEventTimeTolerance = 1e-12;

/// One classic RK4 step of xdot = A x.
[[nodiscard]] Vec2 rk4_step(const Mat2& a, Vec2 x, double dt);

/// Integrates xdot = A+ x (c.x > 0), A- x (c.x <= 0) from x0 over [0, t_end] with step h > 0.
/// A negative t_end integrates backward in time.
[[nodiscard]] Trajectory rk_integrate(const SystemSpec& field, Vec2 x0, double t_end, double h);

/// Same, on the boundary-normalized matrices with c = (1, 0).
[[nodiscard]] Trajectory rk_integrate(const NormalizedSystem& ns, Vec2 x0, double t_end, double h);

/// Single linear field everywhere.
[[nodiscard]] Trajectory rk_integrate(const Mat2& a, Vec2 x0, double t_end, double h);

inline constexpr double kDefaultStep = 1e-4;

/// Sup over the oracle's sample times of |orbit(t) - oracle(t)| / |orbit(t)|, where orbit is the
/// closed-form stitched trace from flow.hpp.
[[nodiscard]] double compare_flow(const NormalizedSystem& ns, Vec2 x0, double t_end, double h = kDefaultStep);

}  // namespace pwl2::oracle
