#pragma once

#include <optional>
#include <vector>

#include "pwl2/normalization.hpp"

namespace pwl2 {

/// Tolerance on |alpha+/beta+ + alpha-/beta-| separating center-like from spiralling pairs.
inline constexpr double kFocusSumTolerance = 1e-9;

enum class StabilityClause { SignCondition_a, NonnegRealEigen_b, FocusSum_c };

struct StabilityVerdict {
    bool stable = false;
    std::optional<StabilityClause> failed_condition;
};

struct PeriodicInfo {
    bool exists = false;
    /// pi/beta+ + pi/beta-, set when exists.
    double period = 0.0;
    /// alpha+/beta+ + alpha-/beta- when both sides are foci.
    std::optional<double> focus_sum;
    /// The boundary has sliding half-rays, so no crossing cycle is possible.
    bool sliding = false;
};

enum class Orientation { Clockwise, CounterClockwise };
enum class AxisSide { Above_x1, Below_x1 };

/// Why a system has no homoclinic orbit; first failing clause wins.
enum class HomoclinicClause { NotObservable, NotNode_a, SignCondition_b, DominantProduct_b };

/// Slow invariant half-line of one side, lying in that side's closed half-plane.
struct InvariantHalfLine {
    Side side = Side::Plus;
    /// Unit vector pointing into the side's half-plane.
    Vec2 direction;
    /// The slow eigenvalue the half-line belongs to.
    double eigenvalue = 0.0;
    /// Coefficients (n1, n2) of the supporting line n1 x1 + n2 x2 = 0.
    Vec2 line;
};

/**
 * The open wedge of homoclinic initial points. It is bounded by the two slow half-lines and
 * contains the boundary half-ray {x1 = 0, seed_sign * x2 > 0}. Each half-plane contributes one
 * strict inequality: normal_plus . x > 0 for x1 > 0, normal_minus . x > 0 for x1 < 0.
 */
struct HomoclinicCone {
    double seed_sign = 1.0;
    Vec2 normal_plus;
    Vec2 normal_minus;

    [[nodiscard]] bool contains(Vec2 x) const;
    /// (0, seed_sign): the midpoint ray of the cone's trace on the boundary.
    [[nodiscard]] Vec2 boundary_seed() const { return {0.0, seed_sign}; }
};

struct HomoclinicWitness {
    InvariantHalfLine manifold_plus;
    InvariantHalfLine manifold_minus;
    HomoclinicCone cone;
    Orientation orientation = Orientation::Clockwise;
    AxisSide side_of_axis = AxisSide::Above_x1;
};

struct HomoclinicInfo {
    bool exists = false;
    std::optional<HomoclinicWitness> witness;
    std::optional<HomoclinicClause> failed;
};

enum class HalfRay { Positive, Negative };  // x2 > 0, x2 < 0 on the boundary
enum class SlidingNature { Attractive, Repelling };

struct SlidingSegment {
    HalfRay half_ray = HalfRay::Positive;
    SlidingNature nature = SlidingNature::Attractive;

    friend bool operator==(const SlidingSegment&, const SlidingSegment&) = default;
};

struct Verdicts {
    StabilityVerdict stability;
    PeriodicInfo periodic;
    HomoclinicInfo homoclinic;
    std::vector<SlidingSegment> sliding;
};

[[nodiscard]] const char* to_string(StabilityClause c);
[[nodiscard]] const char* to_string(Orientation o);
[[nodiscard]] const char* to_string(AxisSide s);
[[nodiscard]] const char* to_string(HomoclinicClause c);
[[nodiscard]] const char* to_string(HalfRay r);
[[nodiscard]] const char* to_string(SlidingNature n);

[[nodiscard]] StabilityVerdict classify_stability(const NormalizedSystem& ns);
[[nodiscard]] PeriodicInfo classify_periodic(const NormalizedSystem& ns);
[[nodiscard]] HomoclinicInfo classify_homoclinic(const NormalizedSystem& ns);
[[nodiscard]] std::vector<SlidingSegment> classify_sliding(const NormalizedSystem& ns);
[[nodiscard]] Verdicts classify_all(const NormalizedSystem& ns);

/// Lemma-2 direction: b12 > 0 crosses the boundary clockwise.
[[nodiscard]] Orientation crossing_orientation(const Mat2& b);

/// dominant(lambda+) * dominant(lambda-) when both sides have real spectra.
[[nodiscard]] std::optional<double> dominant_product(const NormalizedSystem& ns);

/// Slow invariant half-line of a node side. Requires a real spectrum with an eigenline.
[[nodiscard]] InvariantHalfLine slow_half_line(const Mat2& b, const SpectralData& s, Side side);

}  // namespace pwl2
