#include <iostream>

#include <CLI11.hpp>

#include "pwl2/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Analyze planar piecewise-linear systems with one switching line"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool check = false;

    const std::pair<const char*, pwl2::Command> commands[] = {
        {"classify", pwl2::Command::Classify},
        {"portrait", pwl2::Command::Portrait},
        {"sweep", pwl2::Command::Sweep},
        {"verify", pwl2::Command::Verify},
    };
    const char* help[] = {
        "Stability, periodic, homoclinic and sliding verdicts as a JSON report",
        "Trace seeds and write one CSV per seed plus an SVG overlay",
        "Scan the mu-family and print a CSV of regime points",
        "Check homoclinic witnesses seed by seed",
    };
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < 4; ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
        sub->add_option("--config", config_path, "JSON job configuration or a previous report")->required();
        sub->add_flag("--check", check, "Cross-check the closed-form flow against the RK4 oracle");
        sub->add_option("--out", out_dir, "Output directory for emitted files");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    pwl2::Command command = pwl2::Command::Classify;
    for (std::size_t i = 0; i < 4; ++i) {
        if (subs[i]->parsed()) {
            command = commands[i].second;
        }
    }

    pwl2::JobConfig config;
    try {
        config = pwl2::load_config(config_path, command);
    } catch (const pwl2::ConfigError& e) {
        std::cerr << "pwl2: invalid configuration: " << e.what() << '\n';
        return 2;
    }
    config.check = check;
    if (!out_dir.empty()) {
        config.out_dir = out_dir;
        config.out_given = true;
    }
    return pwl2::run(config, std::cout, std::cerr);
}
