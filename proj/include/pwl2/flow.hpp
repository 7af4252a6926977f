#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "pwl2/normalization.hpp"

namespace pwl2 {

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

/// ||x|| <= kOriginThreshold * ||seed|| counts as having reached the origin.
inline constexpr double kOriginThreshold = 1e-6;

/// Relative distance at which a returning boundary point counts as the same state.
inline constexpr double kClosureTolerance = 1e-9;

/// Where an orbit goes when it never meets the boundary again.
struct AsymptoticFate {
    enum class Kind { Origin, Infinity };
    Kind kind = Kind::Origin;
    /// Unit limiting direction: tangent at the origin, or asymptotic direction at infinity.
    Vec2 direction;
};

[[nodiscard]] const char* to_string(AsymptoticFate::Kind k);

struct CrossingEvent {
    /// Relative to the arc start when returned by next_crossing, absolute inside an Orbit.
    double t_star = 0.0;
    /// On the boundary: first coordinate exactly 0.
    Vec2 point;
    Side incoming_side = Side::Plus;
    Side outgoing_side = Side::Minus;
};

using CrossingResult = std::variant<CrossingEvent, AsymptoticFate>;

/// Exact solution of xdot = A x at time t (t may be negative).
[[nodiscard]] Vec2 flow_closed_form(const Mat2& a, const SpectralData& s, Vec2 x0, double t);

/**
 * First return of the half-system (a, side) to the boundary x1 = 0.
 *
 * Boundary seeds must have the field entering `side`; a focus then returns after exactly pi/beta
 * and every other spectrum never returns. Interior seeds are bracketed on a geometric time grid
 * and refined by bisection.
 *
 * Throws Error(OriginIsEquilibrium) for x0 = 0 and Error(WrongSide) when x0 is not in, or does
 * not enter, the side's half-plane.
 */
[[nodiscard]] CrossingResult next_crossing(const Mat2& a, const SpectralData& s, Side side, Vec2 x0);
[[nodiscard]] CrossingResult next_crossing(const Mat2& a, Side side, Vec2 x0);

/// Boundary coordinate after one pass through `side` from (0, x20); empty when there is no return.
[[nodiscard]] std::optional<double> half_return_map(const NormalizedSystem& ns, Side side, double x20);

/// How the piecewise field treats the boundary point (0, x2).
enum class BoundaryFlow { EnterPlus, EnterMinus, Attracting };

/// Repelling half-rays resolve to EnterPlus; a point where neither field leaves the line resolves
/// to EnterMinus (the closed half-plane x1 <= 0).
[[nodiscard]] BoundaryFlow boundary_flow(const NormalizedSystem& ns, double x2);

/// One closed-form piece of an orbit inside a single half-plane.
struct Arc {
    Side side = Side::Plus;
    double t0 = 0.0;
    /// kInfiniteTime when the arc never returns to the boundary.
    double t1 = kInfiniteTime;
    Vec2 start;
    /// Boundary point, truncation point, or the origin for arcs that decay into it. Empty for
    /// arcs that escape to infinity.
    std::optional<Vec2> end;
    Mat2 matrix;
    SpectralData spectral;

    [[nodiscard]] bool infinite() const { return t1 == kInfiniteTime; }
    [[nodiscard]] Vec2 at(double t) const { return flow_closed_form(matrix, spectral, start, t - t0); }
};

enum class Termination { ReachedOrigin, Escaped, MaxCrossings, HitSlidingSegment, Closed, Horizon };

[[nodiscard]] const char* to_string(Termination t);

struct Orbit {
    Vec2 seed;
    std::vector<Arc> arcs;
    std::vector<CrossingEvent> events;
    Termination termination = Termination::Horizon;
    std::optional<AsymptoticFate> fate;
    /// Time the trace stopped: origin reached, last event, or the horizon.
    double end_time = 0.0;

    /// Position at time t from the arc covering t (the last arc beyond the end).
    [[nodiscard]] Vec2 at(double t) const;
};

/**
 * Stitches closed-form arcs across the boundary until the orbit reaches the origin, escapes,
 * lands on an attracting sliding half-ray, closes up, exhausts `max_crossings`, or passes
 * `horizon`.
 */
[[nodiscard]] Orbit trace_orbit(const NormalizedSystem& ns, Vec2 x0, std::size_t max_crossings, double horizon,
                                bool stop_on_closure = true);

struct VerificationReport {
    Vec2 seed;
    double horizon = 0.0;
    Termination forward = Termination::Horizon;
    Termination backward = Termination::Horizon;
    std::size_t forward_crossings = 0;
    std::size_t backward_crossings = 0;
    /// ||x(T)|| and ||x(-T)||.
    double forward_norm_at_horizon = 0.0;
    double backward_norm_at_horizon = 0.0;
    /// min ||x(t)|| / ||seed|| over |t| <= 1; a genuine excursion stays away from the origin.
    double min_norm_near_seed = 0.0;
    /// Signed area enclosed by the loop, negative for clockwise; 0 unless success.
    double signed_area = 0.0;
    bool success = false;
};

inline constexpr double kVerifyHorizon = 40.0;

/// Traces p forward and backward; success when both directions reach the origin without
/// touching the boundary again.
[[nodiscard]] VerificationReport verify_homoclinic(const NormalizedSystem& ns, Vec2 p,
                                                   double horizon = kVerifyHorizon);

/// 1/2 * integral of cross(x, A x) dt over [t0, min(t1, t_end)] of one arc.
[[nodiscard]] double arc_signed_area(const Arc& arc, double t_end);

}  // namespace pwl2
