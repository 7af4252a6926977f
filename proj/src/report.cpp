#include <cmath>
#include <iomanip>
#include <sstream>

#include "pwl2/oracle.hpp"
#include "pwl2/report.hpp"

namespace pwl2 {

using nlohmann::json;

namespace {

json vec(Vec2 v) { return json::array({v.x1 + 0.0, v.x2 + 0.0}); }
json mat(const Mat2& m) { return json::array({m.a11, m.a12, m.a21, m.a22}); }

json half_line(const InvariantHalfLine& h) {
    return {{"side", to_string(h.side)},
            {"direction", vec(h.direction)},
            {"eigenvalue", h.eigenvalue},
            {"line", vec(h.line)}};
}

std::string full(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

json to_json(const SpectralData& s) {
    json j = {{"kind", to_string(s.kind)}};
    if (s.is_focus()) {
        j["alpha"] = s.alpha;
        j["beta"] = s.beta;
        return j;
    }
    j["lambda1"] = s.lambda1;
    j["lambda2"] = s.lambda2;
    j["dominant"] = s.dominant.value_or(0.0);
    if (s.kind == SpectralKind::RepeatedDefective) {
        j["m"] = s.m;
    }
    json lines = json::array();
    for (Vec2 v : s.eigvec_lines) {
        lines.push_back(vec(v));
    }
    j["eigvec_lines"] = lines;
    return j;
}

json to_json(const Verdicts& v) {
    json j;
    j["stability"] = {{"stable", v.stability.stable},
                      {"failed_condition", v.stability.failed_condition
                                               ? json(to_string(*v.stability.failed_condition))
                                               : json(nullptr)}};

    json periodic = {{"exists", v.periodic.exists}, {"sliding", v.periodic.sliding}};
    if (v.periodic.exists) {
        periodic["period"] = v.periodic.period;
    }
    if (v.periodic.focus_sum) {
        periodic["focus_sum"] = *v.periodic.focus_sum;
    }
    j["periodic"] = periodic;

    json homoclinic = {{"exists", v.homoclinic.exists}};
    if (v.homoclinic.failed) {
        homoclinic["failed"] = to_string(*v.homoclinic.failed);
    }
    if (v.homoclinic.witness) {
        const HomoclinicWitness& w = *v.homoclinic.witness;
        homoclinic["orientation"] = to_string(w.orientation);
        homoclinic["side_of_axis"] = to_string(w.side_of_axis);
        homoclinic["manifold_plus"] = half_line(w.manifold_plus);
        homoclinic["manifold_minus"] = half_line(w.manifold_minus);
        homoclinic["cone"] = {{"seed_sign", w.cone.seed_sign},
                              {"normal_plus", vec(w.cone.normal_plus)},
                              {"normal_minus", vec(w.cone.normal_minus)},
                              {"width", cone_width(v.homoclinic)}};
    }
    j["homoclinic"] = homoclinic;

    json sliding = json::array();
    for (const SlidingSegment& s : v.sliding) {
        sliding.push_back({{"half_ray", to_string(s.half_ray)}, {"nature", to_string(s.nature)}});
    }
    j["sliding"] = sliding;
    return j;
}

json to_json(const VerificationReport& r) {
    return {{"seed", vec(r.seed)},
            {"horizon", r.horizon},
            {"success", r.success},
            {"forward", to_string(r.forward)},
            {"backward", to_string(r.backward)},
            {"forward_crossings", r.forward_crossings},
            {"backward_crossings", r.backward_crossings},
            {"forward_norm_at_horizon", r.forward_norm_at_horizon},
            {"backward_norm_at_horizon", r.backward_norm_at_horizon},
            {"min_norm_near_seed", r.min_norm_near_seed},
            {"signed_area", r.signed_area}};
}

json input_json(const JobConfig& config) {
    json in;
    if (config.system) {
        in["system"] = {{"c", vec(config.system->c)},
                        {"A_plus", mat(config.system->a_plus)},
                        {"A_minus", mat(config.system->a_minus)}};
    } else {
        json f = {{"lambda_plus", config.family->lambda_plus}, {"lambda_minus", config.family->lambda_minus}};
        if (config.family->mu) {
            f["mu"] = *config.family->mu;
        }
        if (!config.family->mu_values.empty()) {
            f["mu_values"] = config.family->mu_values;
        }
        in["family"] = f;
    }
    if (!config.seeds.empty()) {
        json seeds = json::array();
        for (Vec2 s : config.seeds) {
            seeds.push_back(vec(s));
        }
        in["seeds"] = seeds;
    }
    in["horizon"] = config.horizon;
    in["max_crossings"] = config.max_crossings;
    return in;
}

json build_report(const JobConfig& config, const NormalizedSystem& ns) {
    const Verdicts verdicts = classify_all(ns);
    json report;
    report["tool"] = "pwl2";
    report["version"] = kToolVersion;
    report["input"] = input_json(config);

    json normalized = {{"T", mat(ns.t)}, {"B_plus", mat(ns.b_plus)}, {"B_minus", mat(ns.b_minus)}};
    const double product = ns.a12_product();
    normalized["crossing"] = product > 0.0 ? "Transversal" : (product < 0.0 ? "Sliding" : "Degenerate");
    report["normalized"] = normalized;
    report["spectral"] = {{"plus", to_json(ns.spectral_plus)}, {"minus", to_json(ns.spectral_minus)}};

    const json v = to_json(verdicts);
    for (const auto& [key, value] : v.items()) {
        report[key] = value;
    }
    report["homoclinic"]["loop_area"] = loop_area(ns, verdicts.homoclinic);

    json debug = {{"b12_plus", ns.b_plus.a12},
                  {"b12_minus", ns.b_minus.a12},
                  {"b12_formula_plus", ns.b12_formula_plus},
                  {"b12_formula_minus", ns.b12_formula_minus}};
    if (const auto dp = dominant_product(ns)) {
        debug["dominant_product"] = *dp;
    }
    report["debug"] = debug;

    if (config.check) {
        std::vector<Vec2> seeds = config.seeds;
        if (seeds.empty()) {
            seeds = {{0.0, 1.0}, {0.0, -1.0}};
        }
        const double t_end = std::min(config.horizon, 10.0);
        json residuals = json::array();
        for (Vec2 s : seeds) {
            residuals.push_back({{"seed", vec(s)}, {"t_end", t_end}, {"deviation", oracle::compare_flow(ns, s, t_end)}});
        }
        json check = {{"step", oracle::kDefaultStep}, {"residuals", residuals}};
        if (verdicts.periodic.exists) {
            const Vec2 x0{0.0, 1.0};
            const auto traj = oracle::rk_integrate(ns, x0, verdicts.periodic.period, oracle::kDefaultStep);
            check["periodic_closure"] = (traj.back().x - x0).norm() / x0.norm();
        }
        report["check"] = check;
    }
    return report;
}

std::string sweep_csv(const ScanResult& scan) {
    std::ostringstream os;
    os << "mu,exists,orientation,side_of_axis,cone_width,loop_area\r\n";
    for (const RegimePoint& p : scan.grid) {
        os << full(p.mu) << ',' << (p.verdict.exists ? 1 : 0) << ',';
        if (p.verdict.witness) {
            os << to_string(p.verdict.witness->orientation) << ',' << to_string(p.verdict.witness->side_of_axis);
        } else {
            os << ',';
        }
        os << ',' << full(p.cone_width) << ',' << full(p.loop_area) << "\r\n";
    }
    return os.str();
}

}  // namespace pwl2
