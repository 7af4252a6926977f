#include <cmath>
#include <fstream>
#include <sstream>

#include "pwl2/report.hpp"

namespace pwl2 {

using nlohmann::json;

namespace {

double number_at(const json& j, const std::string& field) {
    if (!j.is_number()) {
        throw ConfigError("field '" + field + "': expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError("field '" + field + "': must be finite");
    }
    return v;
}

std::vector<double> numbers_at(const json& j, const std::string& field, std::optional<std::size_t> size) {
    if (!j.is_array() || (size && j.size() != *size)) {
        throw ConfigError("field '" + field + "': expected an array of " +
                          (size ? std::to_string(*size) + " numbers" : std::string("numbers")));
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number_at(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Mat2 matrix_at(const json& parent, const std::string& key, const std::string& prefix) {
    if (!parent.contains(key)) {
        throw ConfigError("field '" + prefix + key + "': missing");
    }
    const auto v = numbers_at(parent.at(key), prefix + key, 4);
    return {v[0], v[1], v[2], v[3]};
}

SystemSpec parse_system(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("field 'system': expected an object");
    }
    SystemSpec spec;
    if (!j.contains("c")) {
        throw ConfigError("field 'system.c': missing");
    }
    const auto c = numbers_at(j.at("c"), "system.c", 2);
    spec.c = {c[0], c[1]};
    spec.a_plus = matrix_at(j, "A_plus", "system.");
    spec.a_minus = matrix_at(j, "A_minus", "system.");
    return spec;
}

FamilyConfig parse_family(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("field 'family': expected an object");
    }
    FamilyConfig f;
    for (const char* key : {"lambda_plus", "lambda_minus"}) {
        if (!j.contains(key)) {
            throw ConfigError(std::string("field 'family.") + key + "': missing");
        }
    }
    f.lambda_plus = number_at(j.at("lambda_plus"), "family.lambda_plus");
    f.lambda_minus = number_at(j.at("lambda_minus"), "family.lambda_minus");
    if (j.contains("mu")) {
        f.mu = number_at(j.at("mu"), "family.mu");
    }
    if (j.contains("mu_values")) {
        f.mu_values = numbers_at(j.at("mu_values"), "family.mu_values", std::nullopt);
    }
    return f;
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::Classify: return "classify";
        case Command::Portrait: return "portrait";
        case Command::Sweep: return "sweep";
        case Command::Verify: return "verify";
    }
    return "unknown";
}

JobConfig parse_config(const json& root, Command command) {
    if (!root.is_object()) {
        throw ConfigError("config root: expected a JSON object");
    }
    // A report carries its originating input under "input"; settings live alongside.
    const json& j = root.contains("input") && root.at("input").is_object() ? root.at("input") : root;

    JobConfig cfg;
    cfg.command = command;
    const bool has_system = j.contains("system");
    const bool has_family = j.contains("family");
    if (has_system == has_family) {
        throw ConfigError("config: exactly one of 'system' or 'family' must be present");
    }
    if (has_system) {
        cfg.system = parse_system(j.at("system"));
    } else {
        cfg.family = parse_family(j.at("family"));
    }

    if (j.contains("seeds")) {
        const json& seeds = j.at("seeds");
        if (!seeds.is_array()) {
            throw ConfigError("field 'seeds': expected an array of [x1, x2] pairs");
        }
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const auto p = numbers_at(seeds[i], "seeds[" + std::to_string(i) + "]", 2);
            if (p[0] == 0.0 && p[1] == 0.0) {
                throw ConfigError("field 'seeds[" + std::to_string(i) + "]': the origin is an equilibrium");
            }
            cfg.seeds.push_back({p[0], p[1]});
        }
    }
    if (j.contains("horizon")) {
        cfg.horizon = number_at(j.at("horizon"), "horizon");
        if (!(cfg.horizon > 0.0)) {
            throw ConfigError("field 'horizon': must be positive");
        }
    }
    if (j.contains("max_crossings")) {
        const json& m = j.at("max_crossings");
        if (!m.is_number_integer() || m.get<long long>() < 0) {
            throw ConfigError("field 'max_crossings': expected a nonnegative integer");
        }
        cfg.max_crossings = m.get<std::size_t>();
    }

    switch (command) {
        case Command::Portrait:
        case Command::Verify:
            if (cfg.seeds.empty()) {
                throw ConfigError("field 'seeds': at least one seed is required for " + std::string(to_string(command)));
            }
            [[fallthrough]];
        case Command::Classify:
            if (cfg.family && !cfg.family->mu) {
                throw ConfigError("field 'family.mu': required for " + std::string(to_string(command)));
            }
            break;
        case Command::Sweep:
            if (!cfg.family) {
                throw ConfigError("field 'family': sweep needs a mu-family");
            }
            if (cfg.family->mu_values.empty()) {
                throw ConfigError("field 'family.mu_values': sweep needs a nonempty grid");
            }
            break;
    }
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path, Command command) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
    return parse_config(j, command);
}

NormalizedSystem resolve_system(const JobConfig& config) {
    if (config.system) {
        return normalize(*config.system);
    }
    const FamilyConfig& f = *config.family;
    return mu_family(f.lambda_plus, f.lambda_minus, f.mu.value_or(0.0));
}

}  // namespace pwl2
