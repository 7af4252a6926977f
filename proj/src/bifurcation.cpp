#include "pwl2/bifurcation.hpp"

#include <algorithm>
#include <cmath>

#include "pwl2/flow.hpp"

namespace pwl2 {

namespace {

double angle_between(Vec2 a, Vec2 b) {
    const double cosine = dot(a, b) / (a.norm() * b.norm());
    return std::acos(std::clamp(cosine, -1.0, 1.0));
}

}  // namespace

NormalizedSystem mu_family(double lambda_plus, double lambda_minus, double mu) {
    if (!(lambda_plus * lambda_minus < 0.0) || !std::isfinite(mu)) {
        throw Error(ErrorCode::InvalidFamily, "family needs finite mu and lambda+ * lambda- < 0");
    }
    const MuFamily family{lambda_plus, lambda_minus, mu};
    return make_normalized(family.a_plus(), family.a_minus());
}

double cone_width(const HomoclinicInfo& info) {
    if (!info.exists || !info.witness) {
        return 0.0;
    }
    const HomoclinicWitness& w = *info.witness;
    const Vec2 ray = w.cone.boundary_seed();
    return angle_between(ray, w.manifold_plus.direction) + angle_between(ray, w.manifold_minus.direction);
}

double loop_area(const NormalizedSystem& ns, const HomoclinicInfo& info) {
    if (!info.exists || !info.witness) {
        return 0.0;
    }
    const VerificationReport rep = verify_homoclinic(ns, info.witness->cone.boundary_seed());
    return rep.success ? std::abs(rep.signed_area) : 0.0;
}

ScanResult sweep(double lambda_plus, double lambda_minus, const std::vector<double>& mu_values) {
    if (mu_values.empty()) {
        throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
    }
    if (!std::is_sorted(mu_values.begin(), mu_values.end())) {
        throw Error(ErrorCode::InvalidArgument, "sweep grid must be sorted ascending");
    }
    ScanResult result;
    result.grid.reserve(mu_values.size());
    for (double mu : mu_values) {
        const NormalizedSystem ns = mu_family(lambda_plus, lambda_minus, mu);
        RegimePoint point;
        point.mu = mu;
        point.verdict = classify_homoclinic(ns);
        point.cone_width = cone_width(point.verdict);
        point.loop_area = loop_area(ns, point.verdict);
        result.grid.push_back(point);
    }
    for (std::size_t i = 1; i < result.grid.size(); ++i) {
        if (result.grid[i].verdict.exists != result.grid[i - 1].verdict.exists) {
            result.transitions.push_back({result.grid[i - 1].mu, result.grid[i].mu});
        }
    }
    return result;
}

}  // namespace pwl2
