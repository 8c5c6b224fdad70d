#pragma once

#include "optosync/config.hpp"

#include <string>

namespace optosync {

struct RunResult {
    int exit_code = 0;  ///< 0 success, 3 runtime divergence (2 = config, raised earlier)
    std::string message;
};

/// Executes the configured scenario and writes its artifacts under
/// cfg.output_dir. Throws ConfigError for configuration problems; any
/// runtime divergence is reported through the exit code with partial
/// artifacts already on disk.
RunResult run_scenario(const RunConfig& cfg);

} // namespace optosync
