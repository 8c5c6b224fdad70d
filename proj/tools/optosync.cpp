// Batch front end: scenario subcommands over a JSON run configuration.
// Exit codes: 0 success, 2 config error, 3 runtime divergence.

#include "optosync/run.hpp"
#include "optosync/version.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonFlags {
    std::string config_path;
    std::string output_dir;
    int workers = -1;
    bool render = false;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path, "JSON run configuration (defaults used if omitted)")
        ->check(CLI::ExistingFile);
    sub->add_option("--output", flags.output_dir, "output directory (overrides config)");
    sub->add_option("--workers", flags.workers,
                    "worker threads for sweeps, 0 = hardware concurrency (overrides config)");
    sub->add_flag("--render", flags.render, "also emit SVG figures");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"optosync: coupled-optomechanical synchronization simulator (deterministic; "
                 "no seed flag because the pipeline draws no random numbers)"};
    app.set_version_flag("--version", optosync::kVersion);
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> scenarios{
        {"simulate", "integrate one configuration and export trajectory + measures"},
        {"sweep-lyapunov", "largest-Lyapunov-exponent field over the (mu, lambda) grid"},
        {"sweep-spbar", "time-averaged S_p' field over the (mu, lambda) grid"},
        {"logic", "four-corner switch truth table at (mu_on, lambda_on)"},
        {"calibrate-drive", "scan the drive amplitude E and flag the attractor per level"},
        {"fig5", "the four switch on/off scenarios with theta(0) = pi/2"},
    };

    std::map<std::string, CommonFlags> flags;
    for (const auto& [name, help] : scenarios) add_common(app.add_subcommand(name, help), flags[name]);

    CLI11_PARSE(app, argc, argv);

    const std::string chosen = app.get_subcommands().front()->get_name();
    const CommonFlags& f = flags[chosen];

    try {
        optosync::RunConfig cfg;
        if (!f.config_path.empty()) {
            cfg = optosync::RunConfig::from_file(f.config_path);
        }
        cfg.scenario = optosync::scenario_from_string(chosen);
        if (!f.output_dir.empty()) cfg.output_dir = f.output_dir;
        if (f.workers >= 0) cfg.workers = f.workers;
        if (f.render) cfg.render = true;
        cfg.validate();

        const optosync::RunResult result = optosync::run_scenario(cfg);
        if (!result.message.empty())
            (result.exit_code == 0 ? std::cout : std::cerr) << result.message << "\n";
        return result.exit_code;
    } catch (const optosync::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
