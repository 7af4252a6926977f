#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pwl2/report.hpp"
#include "test_support.hpp"

using namespace pwl2;
using nlohmann::json;
using Catch::Approx;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string config_error(const json& j, Command c) {
    try {
        (void)parse_config(j, c);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

json family_mu2() { return json::parse(R"({"family": {"lambda_plus": 1, "lambda_minus": -2, "mu": 2}})"); }

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("pwl2_test_" + name + "_" + std::to_string(testing::base_seed()));
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("config validation names the offending field", "[report]") {
    CHECK_THAT(config_error(json::object(), Command::Classify), Catch::Matchers::ContainsSubstring("exactly one"));
    json both = family_mu2();
    both["system"] = json::parse(R"({"c": [1, 0], "A_plus": [1, 2, 0, 1], "A_minus": [-2, 2, 0, -2]})");
    CHECK_THAT(config_error(both, Command::Classify), Catch::Matchers::ContainsSubstring("exactly one"));

    CHECK_THAT(config_error(family_mu2(), Command::Portrait), Catch::Matchers::ContainsSubstring("'seeds'"));
    CHECK_THAT(config_error(family_mu2(), Command::Verify), Catch::Matchers::ContainsSubstring("'seeds'"));
    CHECK_THAT(config_error(family_mu2(), Command::Sweep), Catch::Matchers::ContainsSubstring("mu_values"));

    const json bad_matrix = json::parse(R"({"system": {"c": [1, 0], "A_plus": [1, 2, 0], "A_minus": [-2, 2, 0, -2]}})");
    CHECK_THAT(config_error(bad_matrix, Command::Classify), Catch::Matchers::ContainsSubstring("system.A_plus"));
    const json bad_entry = json::parse(R"({"system": {"c": [1, "x"], "A_plus": [1, 2, 0, 1], "A_minus": [-2, 2, 0, -2]}})");
    CHECK_THAT(config_error(bad_entry, Command::Classify), Catch::Matchers::ContainsSubstring("system.c[1]"));
    const json no_mu = json::parse(R"({"family": {"lambda_plus": 1, "lambda_minus": -2}})");
    CHECK_THAT(config_error(no_mu, Command::Classify), Catch::Matchers::ContainsSubstring("family.mu"));
    json origin = family_mu2();
    origin["seeds"] = json::parse("[[0, 1], [0, 0]]");
    CHECK_THAT(config_error(origin, Command::Verify), Catch::Matchers::ContainsSubstring("seeds[1]"));
    json horizon = family_mu2();
    horizon["horizon"] = -1;
    CHECK_THAT(config_error(horizon, Command::Classify), Catch::Matchers::ContainsSubstring("horizon"));

    CHECK(config_error(family_mu2(), Command::Classify).empty());
}

TEST_CASE("load_config reports parse errors with a position", "[report]") {
    const auto dir = scratch_dir("parse");
    std::filesystem::create_directories(dir);
    const auto path = dir / "broken.json";
    std::ofstream(path) << "{\n  \"family\": {\"lambda_plus\": 1,,}\n}\n";
    try {
        (void)load_config(path, Command::Classify);
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("line 2"));
    }
    REQUIRE_THROWS_AS(load_config(dir / "missing.json", Command::Classify), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run maps failures to exit codes", "[report]") {
    std::ostringstream out, err;
    JobConfig cfg = parse_config(family_mu2(), Command::Classify);
    REQUIRE(run(cfg, out, err) == 0);

    cfg.system = SystemSpec{{1, 0}, {1, 0, 5, 1}, {1, 2, 0, 1}};
    cfg.family.reset();
    std::ostringstream out2, err2;
    REQUIRE(run(cfg, out2, err2) == 2);
    CHECK_THAT(err2.str(), Catch::Matchers::ContainsSubstring("NotObservable"));
}

TEST_CASE("classify report for the mu = 2 family", "[report]") {
    const JobConfig cfg = parse_config(family_mu2(), Command::Classify);
    const json r = build_report(cfg, resolve_system(cfg));
    REQUIRE(r["tool"] == "pwl2");
    REQUIRE(r["homoclinic"]["exists"] == true);
    REQUIRE(r["homoclinic"]["orientation"] == "Clockwise");
    REQUIRE(r["homoclinic"]["side_of_axis"] == "Below_x1");
    REQUIRE(r["homoclinic"]["loop_area"].get<double>() == Approx(0.75).epsilon(1e-6));
    REQUIRE(r["normalized"]["crossing"] == "Transversal");
    REQUIRE_FALSE(r.contains("check"));
    // No negative zeros leak into the witness.
    REQUIRE(r["homoclinic"]["cone"]["normal_plus"].dump().find("-0.0") == std::string::npos);
}

TEST_CASE("check block carries oracle residuals", "[report]") {
    JobConfig cfg = parse_config(json::parse(R"({"system": {"c": [1, 0], "A_plus": [1, -2, 2, 1], "A_minus": [-1, -2, 2, -1]}})"),
                                 Command::Classify);
    cfg.check = true;
    const json r = build_report(cfg, resolve_system(cfg));
    REQUIRE(r["periodic"]["exists"] == true);
    REQUIRE(r["check"]["residuals"].size() == 2);
    for (const json& res : r["check"]["residuals"]) {
        REQUIRE(res["deviation"].get<double>() <= 1e-6);
    }
    REQUIRE(r["check"]["periodic_closure"].get<double>() <= 1e-6);
}

TEST_CASE("a report re-ingested reproduces its verdicts", "[report][property]") {
    testing::Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        const SystemSpec spec = testing::random_observable_spec(rng);
        JobConfig cfg;
        cfg.system = spec;
        cfg.seeds = {{0.0, 1.0}};
        const json first = build_report(cfg, resolve_system(cfg));
        const json text = json::parse(first.dump());
        const JobConfig again = parse_config(text, Command::Classify);
        const json second = build_report(again, resolve_system(again));
        for (const char* key : {"normalized", "spectral", "stability", "periodic", "homoclinic", "sliding"}) {
            REQUIRE(first[key] == second[key]);
        }
    }
}

TEST_CASE("orbit CSV rows re-evaluate to the closed-form flow", "[report][property]") {
    testing::Rng rng(62);
    for (int i = 0; i < 30; ++i) {
        const NormalizedSystem ns = normalize(testing::random_observable_spec(rng));
        const Vec2 seed{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        PortraitTrace trace{seed, trace_orbit(ns, seed, 20, 10.0), trace_orbit(reversed(ns), seed, 20, 10.0)};
        const auto rows = parse_csv(orbit_csv(trace, ns.t.inverse()));
        REQUIRE(rows.front() == std::vector<std::string>{"t", "side", "y1", "y2", "x1", "x2"});
        REQUIRE(rows.size() > 10);
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const double t = std::stod(rows[k][0]);
            const Vec2 y{std::stod(rows[k][2]), std::stod(rows[k][3])};
            const Vec2 x{std::stod(rows[k][4]), std::stod(rows[k][5])};
            const Vec2 exact = t >= 0.0 ? trace.forward.at(t) : trace.backward->at(-t);
            REQUIRE((y - exact).norm() <= 1e-9 * std::max(1.0, exact.norm()));
            REQUIRE((ns.t * x - y).norm() <= 1e-9 * std::max(1.0, y.norm()));
        }
    }
}

TEST_CASE("sweep CSV for the regime grid", "[report]") {
    const std::string csv = sweep_csv(sweep(1, -2, {-10, -2, 0, 2, 10}));
    REQUIRE(csv.find("\r\n") != std::string::npos);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 6);
    REQUIRE(rows[0] == std::vector<std::string>{"mu", "exists", "orientation", "side_of_axis", "cone_width", "loop_area"});
    const char* exists[] = {"1", "1", "0", "1", "1"};
    for (int i = 0; i < 5; ++i) {
        REQUIRE(rows[i + 1].size() == 6);
        REQUIRE(rows[i + 1][1] == exists[i]);
    }
    REQUIRE(rows[1][2] == "CounterClockwise");
    REQUIRE(rows[5][3] == "Below_x1");
    REQUIRE(rows[3][2].empty());
}

TEST_CASE("portrait writes one CSV per seed and an SVG", "[report]") {
    const auto dir = scratch_dir("portrait");
    json j = family_mu2();
    j["seeds"] = json::parse("[[0, -1], [0, 1], [0.5, -0.2]]");
    JobConfig cfg = parse_config(j, Command::Portrait);
    cfg.out_dir = dir;
    cfg.out_given = true;
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == 0);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(std::filesystem::exists(dir / ("orbit_" + std::to_string(i) + ".csv")));
    }
    std::ifstream svg(dir / "portrait.svg");
    std::stringstream body;
    body << svg.rdbuf();
    REQUIRE(body.str().rfind("<?xml", 0) == 0);
    REQUIRE(body.str().find("<polygon") != std::string::npos);  // the wedge
    REQUIRE(body.str().find("</svg>") != std::string::npos);
    const json summary = json::parse(out.str());
    REQUIRE(summary["orbits"].size() == 3);
    REQUIRE(summary["orbits"][0]["termination"] == "ReachedOrigin");
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep and verify commands", "[report]") {
    json j = json::parse(R"({"family": {"lambda_plus": 1, "lambda_minus": -2, "mu_values": [-10, -2, 0, 2, 10]}})");
    std::ostringstream out, err;
    REQUIRE(run(parse_config(j, Command::Sweep), out, err) == 0);
    REQUIRE(parse_csv(out.str()).size() == 6);

    json v = family_mu2();
    v["seeds"] = json::parse("[[0, -1], [0, 1]]");
    std::ostringstream vout, verr;
    REQUIRE(run(parse_config(v, Command::Verify), vout, verr) == 0);
    const json r = json::parse(vout.str());
    REQUIRE(r["verifications"][0]["success"] == true);
    REQUIRE(r["verifications"][1]["success"] == false);
}
