#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwl2/bifurcation.hpp"
#include "pwl2/classifier.hpp"
#include "pwl2/flow.hpp"
#include "pwl2/normalization.hpp"

namespace pwl2 {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Classify, Portrait, Sweep, Verify };

[[nodiscard]] const char* to_string(Command c);

struct FamilyConfig {
    double lambda_plus = 1.0;
    double lambda_minus = -2.0;
    std::optional<double> mu;
    std::vector<double> mu_values;
};

struct JobConfig {
    Command command = Command::Classify;
    std::optional<SystemSpec> system;
    std::optional<FamilyConfig> family;
    /// In boundary-normalized coordinates.
    std::vector<Vec2> seeds;
    double horizon = kVerifyHorizon;
    std::size_t max_crossings = 50;
    std::filesystem::path out_dir = ".";
    bool out_given = false;
    bool check = false;
};

/// Malformed or inconsistent configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Accepts a job config or a previously emitted report (its "input" block is re-read).
[[nodiscard]] JobConfig parse_config(const nlohmann::json& j, Command command);
[[nodiscard]] JobConfig load_config(const std::filesystem::path& path, Command command);

/// Raw specs are normalized, families are built directly.
[[nodiscard]] NormalizedSystem resolve_system(const JobConfig& config);

[[nodiscard]] nlohmann::json to_json(const SpectralData& s);
[[nodiscard]] nlohmann::json to_json(const Verdicts& v);
[[nodiscard]] nlohmann::json to_json(const VerificationReport& r);
[[nodiscard]] nlohmann::json input_json(const JobConfig& config);

/// Full classification report for `ns`; oracle residuals are included when config.check is set.
[[nodiscard]] nlohmann::json build_report(const JobConfig& config, const NormalizedSystem& ns);

[[nodiscard]] std::string sweep_csv(const ScanResult& scan);

/// Sampled polyline of an orbit (and optionally its backward continuation, at negative times).
struct PortraitTrace {
    Vec2 seed;
    Orbit forward;
    std::optional<Orbit> backward;
};

inline constexpr double kRenderHorizon = 10.0;

/// Rows t,side,y1,y2,x1,x2 (y normalized, x = T^-1 y original coordinates).
[[nodiscard]] std::string orbit_csv(const PortraitTrace& trace, const Mat2& t_inverse);

[[nodiscard]] std::string portrait_svg(const NormalizedSystem& ns, const Verdicts& verdicts,
                                       const std::vector<PortraitTrace>& traces);

/// Executes the job. Returns the process exit status: 0 ok, 2 validation error, 3 internal error.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pwl2
