#include "optosync/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace optosync {

using nlohmann::json;

namespace {

/// Reads known keys out of a JSON object, rejecting unknown ones so a typo
/// cannot silently fall back to a default.
struct Section {
    const json& j;
    std::string path;
    std::vector<std::string> known;

    Section(const json& obj, std::string p) : j(obj), path(std::move(p)) {
        if (!j.is_object()) throw ConfigError("config: " + path + " must be an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        known.emplace_back(key);
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(out);
        } catch (const json::exception& e) {
            throw ConfigError("config: bad value for " + path + "." + key + ": " + e.what());
        }
    }

    void finish() const {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (std::find(known.begin(), known.end(), it.key()) == known.end())
                throw ConfigError("config: unknown field " + path + "." + it.key());
    }
};

Method method_from_string(const std::string& s) {
    if (s == "rk4") return Method::rk4;
    if (s == "dopri5") return Method::dopri5;
    throw ConfigError("config: integrator.method must be \"rk4\" or \"dopri5\", got \"" + s +
                      "\"");
}

std::string method_to_string(Method m) { return m == Method::rk4 ? "rk4" : "dopri5"; }

} // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::simulate: return "simulate";
        case Scenario::sweep_lyapunov: return "sweep-lyapunov";
        case Scenario::sweep_spbar: return "sweep-spbar";
        case Scenario::logic: return "logic";
        case Scenario::calibrate_drive: return "calibrate-drive";
        default: return "fig5";
    }
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "simulate") return Scenario::simulate;
    if (s == "sweep-lyapunov") return Scenario::sweep_lyapunov;
    if (s == "sweep-spbar") return Scenario::sweep_spbar;
    if (s == "logic") return Scenario::logic;
    if (s == "calibrate-drive") return Scenario::calibrate_drive;
    if (s == "fig5") return Scenario::fig5;
    throw ConfigError("config: unknown scenario \"" + s + "\"");
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    Section root(j, "$");

    std::string scenario_name;
    root.get("scenario", scenario_name);
    if (scenario_name.empty())
        throw ConfigError("config: missing required field \"scenario\"");
    cfg.scenario = scenario_from_string(scenario_name);

    root.known.emplace_back("params");
    if (j.contains("params")) {
        Section s(j.at("params"), "params");
        s.get("omega1", cfg.params.omega1);
        s.get("omega2", cfg.params.omega2);
        s.get("delta1", cfg.params.delta1);
        s.get("delta2", cfg.params.delta2);
        s.get("g", cfg.params.g);
        s.get("E", cfg.params.E);
        s.get("kappa", cfg.params.kappa);
        s.get("gamma", cfg.params.gamma);
        s.get("mu", cfg.params.mu);
        s.get("lambda", cfg.params.lambda);
        s.get("n_b", cfg.params.n_b);
        s.finish();
    }

    root.known.emplace_back("initial");
    if (j.contains("initial")) {
        Section s(j.at("initial"), "initial");
        s.get("beta", cfg.initial.beta);
        std::string cov = cfg.initial.covariance ? "vacuum" : "none";
        s.get("covariance", cov);
        if (cov == "vacuum") cfg.initial.covariance = true;
        else if (cov == "none") cfg.initial.covariance = false;
        else throw ConfigError("config: initial.covariance must be \"vacuum\" or \"none\"");
        s.finish();
    }

    root.known.emplace_back("integrator");
    if (j.contains("integrator")) {
        Section s(j.at("integrator"), "integrator");
        s.get("dt", cfg.integrator.dt);
        s.get("t_end", cfg.integrator.t_end);
        s.get("sample_every", cfg.integrator.sample_every);
        std::string method = method_to_string(cfg.integrator.method);
        s.get("method", method);
        cfg.integrator.method = method_from_string(method);
        s.get("rel_tol", cfg.integrator.rel_tol);
        s.get("abs_tol", cfg.integrator.abs_tol);
        s.get("overflow_guard", cfg.integrator.overflow_guard);
        s.finish();
    }

    root.known.emplace_back("lyapunov");
    if (j.contains("lyapunov")) {
        Section s(j.at("lyapunov"), "lyapunov");
        s.get("delta0", cfg.lyapunov.delta0);
        s.get("renorm_interval", cfg.lyapunov.renorm_interval);
        s.get("t_transient", cfg.lyapunov.t_transient);
        s.get("t_total", cfg.lyapunov.t_total);
        s.get("theta0", cfg.lyapunov.theta0);
        s.get("dt", cfg.lyapunov.dt);
        s.get("overflow_guard", cfg.lyapunov.overflow_guard);
        s.finish();
    }

    root.known.emplace_back("grid");
    if (j.contains("grid")) {
        Section s(j.at("grid"), "grid");
        s.get("mu_min", cfg.grid.mu_min);
        s.get("mu_max", cfg.grid.mu_max);
        s.get("mu_steps", cfg.grid.mu_steps);
        s.get("lambda_min", cfg.grid.lambda_min);
        s.get("lambda_max", cfg.grid.lambda_max);
        s.get("lambda_steps", cfg.grid.lambda_steps);
        s.finish();
    }

    root.known.emplace_back("measures");
    if (j.contains("measures")) {
        Section s(j.at("measures"), "measures");
        s.get("sp_prefactor", cfg.measures.sp_prefactor);
        s.get("t_skip", cfg.measures.t_skip);
        s.get("amplitude_floor", cfg.measures.amplitude_floor);
        s.get("tol_phys", cfg.measures.tol_phys);
        s.finish();
    }

    root.known.emplace_back("logic");
    if (j.contains("logic")) {
        Section s(j.at("logic"), "logic");
        s.get("mu_on", cfg.logic.mu_on);
        s.get("lambda_on", cfg.logic.lambda_on);
        s.get("gate", cfg.logic.gate);
        s.finish();
    }

    root.known.emplace_back("calibrate");
    if (j.contains("calibrate")) {
        Section s(j.at("calibrate"), "calibrate");
        s.get("e_min", cfg.calibrate.e_min);
        s.get("e_max", cfg.calibrate.e_max);
        s.get("e_steps", cfg.calibrate.e_steps);
        s.finish();
    }

    root.get("output_dir", cfg.output_dir);
    root.get("render", cfg.render);
    root.get("workers", cfg.workers);
    root.get("note", cfg.note);
    root.finish();

    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    return from_json(j);
}

json RunConfig::to_json() const {
    json j;
    j["scenario"] = to_string(scenario);
    j["params"] = {{"omega1", params.omega1}, {"omega2", params.omega2},
                   {"delta1", params.delta1}, {"delta2", params.delta2},
                   {"g", params.g},           {"E", params.E},
                   {"kappa", params.kappa},   {"gamma", params.gamma},
                   {"mu", params.mu},         {"lambda", params.lambda},
                   {"n_b", params.n_b}};
    j["initial"] = {{"beta", initial.beta},
                    {"covariance", initial.covariance ? "vacuum" : "none"}};
    j["integrator"] = {{"dt", integrator.dt},
                       {"t_end", integrator.t_end},
                       {"sample_every", integrator.sample_every},
                       {"method", method_to_string(integrator.method)},
                       {"rel_tol", integrator.rel_tol},
                       {"abs_tol", integrator.abs_tol},
                       {"overflow_guard", integrator.overflow_guard}};
    j["lyapunov"] = {{"delta0", lyapunov.delta0},
                     {"renorm_interval", lyapunov.renorm_interval},
                     {"t_transient", lyapunov.t_transient},
                     {"t_total", lyapunov.t_total},
                     {"theta0", lyapunov.theta0},
                     {"dt", lyapunov.dt},
                     {"overflow_guard", lyapunov.overflow_guard}};
    j["grid"] = {{"mu_min", grid.mu_min},         {"mu_max", grid.mu_max},
                 {"mu_steps", grid.mu_steps},     {"lambda_min", grid.lambda_min},
                 {"lambda_max", grid.lambda_max}, {"lambda_steps", grid.lambda_steps}};
    j["measures"] = {{"sp_prefactor", measures.sp_prefactor},
                     {"t_skip", measures.t_skip},
                     {"amplitude_floor", measures.amplitude_floor},
                     {"tol_phys", measures.tol_phys}};
    j["logic"] = {{"mu_on", logic.mu_on}, {"lambda_on", logic.lambda_on}, {"gate", logic.gate}};
    j["calibrate"] = {{"e_min", calibrate.e_min},
                      {"e_max", calibrate.e_max},
                      {"e_steps", calibrate.e_steps}};
    j["output_dir"] = output_dir;
    j["render"] = render;
    j["workers"] = workers;
    if (!note.empty()) j["note"] = note;
    return j;
}

void RunConfig::validate() const {
    try {
        params.validate();
        integrator.validate();
        lyapunov.validate();
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(initial.beta > 0.0)) throw ConfigError("config: initial.beta must be > 0");
    if (!(measures.sp_prefactor > 0.0))
        throw ConfigError("config: measures.sp_prefactor must be > 0");
    if (measures.t_skip < 0.0) throw ConfigError("config: measures.t_skip must be >= 0");
    if (logic.mu_on < 0.0 || logic.lambda_on < 0.0)
        throw ConfigError("config: logic couplings must be >= 0");
    if (logic.gate != "AND" && logic.gate != "OR" && logic.gate != "XOR")
        throw ConfigError("config: logic.gate must be AND, OR or XOR");
    if (!(calibrate.e_min >= 0.0) || !(calibrate.e_max >= calibrate.e_min) ||
        calibrate.e_steps < 1)
        throw ConfigError("config: calibrate range invalid");
    if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
    if (workers < 0) throw ConfigError("config: workers must be >= 0");
}

} // namespace optosync
