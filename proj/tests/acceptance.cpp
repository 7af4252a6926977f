// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Randomized criteria draw from PWL2_SEED like the unit tests.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "pwl2/bifurcation.hpp"
#include "pwl2/classifier.hpp"
#include "pwl2/flow.hpp"
#include "pwl2/oracle.hpp"
#include "test_support.hpp"

using namespace pwl2;
using testing::Rng;

namespace {

// Tolerances and budgets, fixed here rather than tuned per run.
constexpr double kAc1Decay = 1e-4;
constexpr double kAc1Budget = 1.0;
constexpr double kAc2Closure = 1e-6;
constexpr double kAc2Budget = 1.0;
constexpr double kAc3SumMargin = 0.05;
constexpr double kAc3Time = 20.0;
constexpr double kAc3Budget = 30.0;
constexpr double kAc4Rel = 1e-5;
constexpr double kAc5Rel = 1e-9;
constexpr double kAc6Eig = 1e-10;
constexpr double kAc8Offset = 1e-6;
constexpr double kOracleStep = 1e-4;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& why) {
    if (o.pass) {
        o.detail = why;
    }
    o.pass = false;
}

double rel(Vec2 a, Vec2 b) { return (a - b).norm() / std::max(a.norm(), b.norm()); }

Outcome ac1_regimes() {
    Outcome o;
    const ScanResult r = sweep(1.0, -2.0, {-10, -2, 0, 2, 10});
    const bool exists[] = {true, true, false, true, true};
    const Orientation orient[] = {Orientation::CounterClockwise, Orientation::CounterClockwise, Orientation::Clockwise,
                                  Orientation::Clockwise, Orientation::Clockwise};
    const AxisSide side[] = {AxisSide::Above_x1, AxisSide::Above_x1, AxisSide::Above_x1, AxisSide::Below_x1,
                             AxisSide::Below_x1};
    for (std::size_t i = 0; i < 5; ++i) {
        const RegimePoint& p = r.grid[i];
        if (p.verdict.exists != exists[i]) {
            fail(o, "existence mismatch at mu=" + std::to_string(p.mu));
            continue;
        }
        if (!exists[i]) {
            continue;
        }
        const HomoclinicWitness& w = *p.verdict.witness;
        if (w.orientation != orient[i] || w.side_of_axis != side[i]) {
            fail(o, "orientation/side mismatch at mu=" + std::to_string(p.mu));
        }
        const Vec2 seed = w.cone.boundary_seed();
        const VerificationReport rep = verify_homoclinic(mu_family(1.0, -2.0, p.mu), seed, 40.0);
        if (!rep.success || rep.forward_norm_at_horizon > kAc1Decay * seed.norm() ||
            rep.backward_norm_at_horizon > kAc1Decay * seed.norm()) {
            fail(o, "witness failed to verify at mu=" + std::to_string(p.mu));
        }
    }
    return o;
}

Outcome ac2_period() {
    Outcome o;
    const NormalizedSystem ns = normalize({{1, 0}, {1, -2, 2, 1}, {-1, -2, 2, -1}});
    const PeriodicInfo info = classify_periodic(ns);
    if (!info.exists || std::abs(info.period - M_PI) > 1e-12) {
        fail(o, "period verdict wrong");
    }
    const Vec2 x0{0, 1};
    const auto traj = oracle::rk_integrate(ns, x0, info.period, kOracleStep);
    const double closure = (traj.back().x - x0).norm() / x0.norm();
    if (closure > kAc2Closure) {
        fail(o, "oracle closure " + std::to_string(closure));
    }
    const Orbit orbit = trace_orbit(ns, x0, 10, 10.0);
    if (orbit.termination != Termination::Closed || std::abs(orbit.end_time - M_PI) > 1e-12) {
        fail(o, "traced orbit did not close at pi");
    }
    return o;
}

Outcome ac3_stability(Rng& rng) {
    Outcome o;
    int agreed = 0, total = 0;
    while (total < 200) {
        const double sign = rng.sign();
        // Near-circular foci with at least ~5 turns by the sampling time, so the in-cycle swing
        // of ||x|| (half-turn growth times eccentricity) stays below the decay accumulated at
        // the smallest admissible focus sum.
        const auto focus = [&] {
            const double beta = rng.uniform(1.5, 3.0);
            const double alpha = rng.uniform(-0.15, 0.15) * beta;
            return testing::with_focus(alpha + rng.uniform(-0.05, 0.05) * beta, sign * rng.uniform(0.9, 1.1) * beta,
                                       alpha, beta);
        };
        const NormalizedSystem ns = make_normalized(focus(), focus());
        const double sum = *classify_periodic(ns).focus_sum;
        if (std::abs(sum) <= kAc3SumMargin) {
            continue;
        }
        ++total;
        const Vec2 x0{0, 1};
        const auto traj = oracle::rk_integrate(ns, x0, kAc3Time, kOracleStep);
        const bool decays = traj.back().x.norm() / x0.norm() < 1.0;
        const bool ok = decays == classify_stability(ns).stable;
        agreed += ok;
        if (!ok) {
            fail(o, "sum " + std::to_string(sum) + " ratio " + std::to_string(traj.back().x.norm()));
        }
    }
    if (agreed != total) {
        o.detail += " (" + std::to_string(agreed) + "/" + std::to_string(total) + " agree)";
    }
    return o;
}

Outcome ac4_multiplier(Rng& rng) {
    Outcome o;
    for (int i = 0; i < 100; ++i) {
        const double a12_sign = rng.sign();
        const Mat2 b = testing::random_focus(rng, a12_sign);
        const NormalizedSystem ns = make_normalized(b, b);
        const SpectralData& s = ns.spectral_plus;
        const double x20 = a12_sign;  // enters x1 > 0
        const double analytic = -x20 * std::exp(s.alpha * M_PI / s.beta);
        const auto mapped = half_return_map(ns, Side::Plus, x20);
        // The oracle integrates the single field and reads the first crossing.
        const auto traj = oracle::rk_integrate(ns, {0, x20}, 1.5 * M_PI / s.beta, kOracleStep);
        if (traj.crossings.empty()) {
            fail(o, "oracle saw no return");
            continue;
        }
        const double t_star = traj.crossings.front();
        const auto local = oracle::rk_integrate(b, {0, x20}, t_star, kOracleStep);
        const double measured = local.back().x.x2;
        if (!mapped || std::abs(*mapped - analytic) > 1e-14 * std::abs(analytic) ||
            std::abs(measured - analytic) > kAc4Rel * std::abs(analytic)) {
            fail(o, "multiplier mismatch " + std::to_string(measured) + " vs " + std::to_string(analytic));
        }
    }
    return o;
}

Outcome ac5_homogeneity(Rng& rng) {
    Outcome o;
    int done = 0;
    while (done < 100) {
        const NormalizedSystem ns = normalize(testing::random_observable_spec(rng));
        if (!(ns.a12_product() > 0.0)) {
            continue;
        }
        ++done;
        const Vec2 x0{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Orbit base = trace_orbit(ns, x0, 20, 20.0);
        for (double k : {0.5, 2.0, 10.0}) {
            const Orbit o2 = trace_orbit(ns, k * x0, 20, 20.0);
            bool ok = o2.termination == base.termination && o2.events.size() == base.events.size();
            for (std::size_t i = 0; ok && i < base.events.size(); ++i) {
                ok = testing::rel_diff(o2.events[i].t_star, base.events[i].t_star) <= kAc5Rel &&
                     rel(o2.events[i].point, k * base.events[i].point) <= kAc5Rel;
            }
            for (int j = 1; ok && j <= 20; ++j) {
                const double t = base.end_time * j / 20.0;
                ok = rel(o2.at(t), k * base.at(t)) <= kAc5Rel;
            }
            if (!ok) {
                fail(o, "scaled orbit differs for k=" + std::to_string(k));
            }
        }
    }
    return o;
}

bool same_verdicts(const Verdicts& a, const Verdicts& b) {
    bool ok = a.stability.stable == b.stability.stable && a.stability.failed_condition == b.stability.failed_condition &&
              a.periodic.exists == b.periodic.exists && a.homoclinic.exists == b.homoclinic.exists &&
              a.homoclinic.failed == b.homoclinic.failed && a.sliding == b.sliding;
    if (ok && a.homoclinic.witness) {
        ok = a.homoclinic.witness->orientation == b.homoclinic.witness->orientation &&
             a.homoclinic.witness->side_of_axis == b.homoclinic.witness->side_of_axis;
    }
    return ok;
}

// Sorted (re, |im|) pairs from the textbook quadratic formula.
std::array<double, 4> eigen_signature(const Mat2& a) {
    const double tr = a.trace();
    const double disc = tr * tr - 4.0 * a.det();
    if (disc < 0.0) {
        return {tr / 2, tr / 2, std::sqrt(-disc) / 2, std::sqrt(-disc) / 2};
    }
    return {(tr + std::sqrt(disc)) / 2, (tr - std::sqrt(disc)) / 2, 0.0, 0.0};
}

Outcome ac6_normalization(Rng& rng) {
    Outcome o;
    for (int i = 0; i < 500; ++i) {
        const SystemSpec spec = testing::random_observable_spec(rng);
        const NormalizedSystem ns = normalize(spec);
        for (Side s : {Side::Plus, Side::Minus}) {
            const Mat2& a = spec.matrix(s);
            const Mat2& b = ns.matrix(s);
            const double scale = std::max(1.0, b.max_abs() * b.max_abs());
            if (std::abs(a.trace() - b.trace()) > 1e-12 * std::sqrt(scale) || std::abs(a.det() - b.det()) > 1e-12 * scale) {
                fail(o, "characteristic polynomial drift");
            }
            if (std::abs(a.trace() * a.trace() - 4.0 * a.det()) < 1e-4 * scale) {
                continue;  // near-repeated roots lose half their digits in any formula
            }
            const auto ea = eigen_signature(a);
            const auto eb = eigen_signature(b);
            for (int k = 0; k < 4; ++k) {
                if (std::abs(ea[k] - eb[k]) > kAc6Eig * std::max(1.0, std::abs(ea[k]))) {
                    fail(o, "eigenvalue drift");
                }
            }
        }
        const Verdicts base = classify_all(ns);
        for (double k : {-2.5, -1.0, 0.3, 4.0}) {
            SystemSpec scaled = spec;
            scaled.c = k * spec.c;
            if (!same_verdicts(base, classify_all(normalize(scaled)))) {
                fail(o, "verdicts changed under c -> k c");
            }
        }
        const NormalizedSystem twice = normalize({{1, 0}, ns.b_plus, ns.b_minus});
        if (!same_verdicts(base, classify_all(twice)) || !(twice.b_plus == ns.b_plus) || !(twice.b_minus == ns.b_minus)) {
            fail(o, "normalize is not idempotent");
        }
    }
    return o;
}

NormalizedSystem random_homoclinic(Rng& rng) {
    const double a12_sign = rng.sign();
    const double plus_sign = rng.sign();
    return make_normalized(testing::random_node(rng, plus_sign, a12_sign),
                           testing::random_node(rng, -plus_sign, a12_sign));
}

Outcome ac7_completeness(Rng& rng) {
    Outcome o;
    for (int i = 0; i < 200; ++i) {
        const NormalizedSystem ns = random_homoclinic(rng);
        const HomoclinicInfo info = classify_homoclinic(ns);
        if (!info.exists || !verify_homoclinic(ns, info.witness->cone.boundary_seed()).success) {
            fail(o, "satisfying system did not verify");
        }
    }
    for (int i = 0; i < 200; ++i) {
        const NormalizedSystem ns = random_homoclinic(rng);
        const Vec2 seed = classify_homoclinic(ns).witness->cone.boundary_seed();
        Mat2 bp = ns.b_plus, bm = ns.b_minus;
        switch (i % 3) {
            case 0:  // sign flip of one a12 (diag(1, -1) similarity keeps the spectrum)
                bm.a12 = -bm.a12;
                bm.a21 = -bm.a21;
                break;
            case 1:  // one eigenvalue pair no longer a node: focus or saddle
                if (i % 2 == 0) {
                    bp = testing::random_focus(rng, bp.a12 > 0.0 ? 1.0 : -1.0);
                } else {
                    const double l = rng.uniform(0.5, 2.0);
                    bp = testing::with_eigenvalues(rng.uniform(-2, 2), bp.a12, l, -rng.uniform(0.5, 2.0));
                }
                break;
            default:  // dominant eigenvalues of one sign; a12 sign kept
                bm = -1.0 * bm;
                bm.a12 = -bm.a12;
                bm.a21 = -bm.a21;
                break;
        }
        const NormalizedSystem bad = make_normalized(bp, bm);
        if (classify_homoclinic(bad).exists || verify_homoclinic(bad, seed).success) {
            fail(o, "violating system still homoclinic");
        }
    }
    return o;
}

Outcome ac8_sliding(Rng& rng) {
    Outcome o;
    int done = 0;
    while (done < 100) {
        const SystemSpec spec = testing::random_observable_spec(rng);
        const NormalizedSystem ns = normalize(spec);
        if (!(ns.a12_product() < 0.0)) {
            continue;
        }
        ++done;
        const auto segments = classify_sliding(ns);
        if (segments.size() != 2) {
            fail(o, "expected two sliding half-rays");
            continue;
        }
        for (const SlidingSegment& seg : segments) {
            const double x2 = seg.half_ray == HalfRay::Positive ? 1.0 : -1.0;
            // Launch just off the ray on each side, in original coordinates, and watch |c.x|.
            for (double off : {kAc8Offset, -kAc8Offset}) {
                const Vec2 y0{off, x2};
                const Vec2 x0 = ns.t.inverse() * y0;
                const double dt = 1e-3 * kAc8Offset;
                const auto traj = oracle::rk_integrate(spec, x0, dt, dt / 10.0);
                const double before = std::abs(dot(spec.c, x0));
                const double after = std::abs(dot(spec.c, traj.back().x));
                const bool approaches = after < before || traj.hit_sliding || !traj.crossings.empty();
                if (approaches != (seg.nature == SlidingNature::Attractive)) {
                    fail(o, "sliding nature disagrees with micro-trajectory");
                }
            }
        }
    }
    return o;
}

}  // namespace

int main() {
    std::printf("acceptance suite (PWL2_SEED=%llu)\n", static_cast<unsigned long long>(testing::base_seed()));
    Rng rng(7);
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget;  // seconds; 0 means untimed
    };
    const Criterion criteria[] = {
        {"AC1 regime reproduction", ac1_regimes, kAc1Budget},
        {"AC2 period formula", ac2_period, kAc2Budget},
        {"AC3 stability trichotomy", [&] { return ac3_stability(rng); }, kAc3Budget},
        {"AC4 half-return multiplier", [&] { return ac4_multiplier(rng); }, 0.0},
        {"AC5 homogeneity", [&] { return ac5_homogeneity(rng); }, 0.0},
        {"AC6 normalization soundness", [&] { return ac6_normalization(rng); }, 0.0},
        {"AC7 criterion completeness", [&] { return ac7_completeness(rng); }, 0.0},
        {"AC8 sliding detection", [&] { return ac8_sliding(rng); }, 0.0},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            fail(out, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget > 0.0 && secs > c.budget) {
            fail(out, "over time budget");
        }
        failures += !out.pass;
        std::printf("%s %-30s %8.3fs%s%s\n", out.pass ? "PASS" : "FAIL", c.name, secs, out.pass ? "" : "  ",
                    out.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
