#include <fstream>
#include <future>
#include <ostream>

#include "pwl2/report.hpp"

namespace pwl2 {

using nlohmann::json;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write output file '" + path.string() + "'");
    }
    out << content;
}

int run_classify(const JobConfig& config, std::ostream& out) {
    const NormalizedSystem ns = resolve_system(config);
    out << build_report(config, ns).dump(2) << '\n';
    return 0;
}

int run_portrait(const JobConfig& config, std::ostream& out) {
    const NormalizedSystem ns = resolve_system(config);
    const NormalizedSystem back_ns = reversed(ns);

    // Seeds are independent; futures are collected in input order.
    std::vector<std::future<PortraitTrace>> jobs;
    for (Vec2 seed : config.seeds) {
        jobs.push_back(std::async(std::launch::async, [&, seed] {
            PortraitTrace trace{seed, trace_orbit(ns, seed, config.max_crossings, config.horizon), std::nullopt};
            trace.backward = trace_orbit(back_ns, seed, config.max_crossings, config.horizon);
            return trace;
        }));
    }
    std::vector<PortraitTrace> traces;
    for (auto& job : jobs) {
        traces.push_back(job.get());
    }

    std::filesystem::create_directories(config.out_dir);
    const Mat2 t_inv = ns.t.inverse();
    json files = json::array();
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto path = config.out_dir / ("orbit_" + std::to_string(i) + ".csv");
        write_file(path, orbit_csv(traces[i], t_inv));
        files.push_back({{"seed", {traces[i].seed.x1, traces[i].seed.x2}},
                         {"csv", path.string()},
                         {"termination", to_string(traces[i].forward.termination)},
                         {"crossings", traces[i].forward.events.size()}});
    }
    const auto svg_path = config.out_dir / "portrait.svg";
    write_file(svg_path, portrait_svg(ns, classify_all(ns), traces));
    out << json{{"orbits", files}, {"svg", svg_path.string()}}.dump(2) << '\n';
    return 0;
}

int run_sweep(const JobConfig& config, std::ostream& out) {
    const FamilyConfig& f = *config.family;
    const std::string csv = sweep_csv(sweep(f.lambda_plus, f.lambda_minus, f.mu_values));
    if (config.out_given) {
        std::filesystem::create_directories(config.out_dir);
        write_file(config.out_dir / "sweep.csv", csv);
    }
    out << csv;
    return 0;
}

int run_verify(const JobConfig& config, std::ostream& out) {
    const NormalizedSystem ns = resolve_system(config);
    const HomoclinicInfo info = classify_homoclinic(ns);
    json reports = json::array();
    for (Vec2 seed : config.seeds) {
        reports.push_back(to_json(verify_homoclinic(ns, seed, config.horizon)));
    }
    out << json{{"homoclinic_exists", info.exists}, {"verifications", reports}}.dump(2) << '\n';
    return 0;
}

}  // namespace

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::Classify: return run_classify(config, out);
            case Command::Portrait: return run_portrait(config, out);
            case Command::Sweep: return run_sweep(config, out);
            case Command::Verify: return run_verify(config, out);
        }
        return 3;
    } catch (const ConfigError& e) {
        err << "pwl2: invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::FocusHasNoDominantReal) {
            err << "pwl2: internal error: " << e.what() << '\n';
            return 3;
        }
        err << "pwl2: invalid system (" << to_string(e.code()) << "): " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "pwl2: internal error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace pwl2
