#pragma once

#include "optosync/sweep.hpp"

#include <nlohmann/json_fwd.hpp>

#include <stdexcept>
#include <string>

namespace optosync {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scenario { simulate, sweep_lyapunov, sweep_spbar, logic, calibrate_drive, fig5 };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct InitialConfig {
    double beta = 1.0;        ///< initial mechanical amplitude
    bool covariance = true;   ///< propagate fluctuations from vacuum
};

struct LogicConfig {
    double mu_on = 0.004;
    double lambda_on = 0.16;
    std::string gate = "AND";
};

struct CalibrateConfig {
    double e_min = 4.0;
    double e_max = 16.0;
    int e_steps = 13;
};

/// Complete run description; every field has a documented default so a
/// config document only needs to state what it changes. The initial phase
/// error theta(0) lives in the lyapunov section and seeds every scenario.
struct RunConfig {
    Scenario scenario = Scenario::simulate;
    SystemParams params;
    InitialConfig initial;
    IntegratorConfig integrator;
    LyapunovConfig lyapunov;
    GridSpec grid;
    MeasureOptions measures;
    LogicConfig logic;
    CalibrateConfig calibrate;
    std::string output_dir = "out";
    bool render = false;
    int workers = 0;
    std::string note;  ///< free-form provenance remark, carried into outputs

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
    nlohmann::json to_json() const;  ///< full effective config (round-trips exactly)
    void validate() const;

    MeanState initial_state() const {
        return default_initial_state(initial.beta, lyapunov.theta0);
    }
};

} // namespace optosync
