#include "optosync/run.hpp"
#include "optosync/io.hpp"
#include "optosync/svg.hpp"
#include "optosync/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace optosync {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct PanelSpec {
    std::string name;
    double mu;
    double lambda;
};

/// Writes trajectory, phase and measure artifacts for one simulation.
/// Returns true if the run diverged.
bool write_simulation(const fs::path& dir, const RunConfig& cfg, const SystemParams& params,
                      Trajectory& traj_out) {
    fs::create_directories(dir);
    const auto init_cov =
        cfg.initial.covariance ? std::optional<CovState>(CovState::vacuum()) : std::nullopt;
    traj_out = evolve(params, cfg.initial_state(), init_cov, cfg.integrator);

    write_text_file(dir / "trajectory.csv", trajectory_csv(traj_out));
    write_meta_sidecar(dir / "trajectory.csv", cfg);

    if (!traj_out.times.empty()) {
        const PhaseSeries phase = phase_error(traj_out, cfg.measures.amplitude_floor);
        write_text_file(dir / "phase.csv", phase_csv(phase));
        write_meta_sidecar(dir / "phase.csv", cfg);
        if (traj_out.has_covariance()) {
            try {
                const MeasureSeries m = compute_measures(traj_out, cfg.measures);
                write_text_file(dir / "measures.csv", measures_csv(m));
                write_meta_sidecar(dir / "measures.csv", cfg);
                if (cfg.render) {
                    write_text_file(dir / "measures.svg",
                                    render_series({Series{"S_c'", m.times, m.sc_prime},
                                                   Series{"S_p'", m.times, m.sp_prime}},
                                                  "t", "measure", "synchronization measures"));
                }
            } catch (const std::domain_error&) {
                // no sample with all amplitudes populated (e.g. immediate
                // divergence); trajectory and phase artifacts still stand
            }
        }
        if (cfg.render) {
            write_text_file(dir / "theta.svg",
                            render_series({Series{"", phase.times, phase.theta}}, "t",
                                          "theta", "phase error"));
        }
    }
    return traj_out.terminated_early;
}

RunResult run_simulate(const RunConfig& cfg) {
    Trajectory traj;
    const bool diverged = write_simulation(cfg.output_dir, cfg, cfg.params, traj);
    if (diverged) return {3, traj.termination_reason};
    return {0, "simulate: " + std::to_string(traj.times.size()) + " samples written"};
}

RunResult run_sweep(const RunConfig& cfg) {
    const bool lyap = cfg.scenario == Scenario::sweep_lyapunov;
    SweepField field;
    if (lyap) {
        field = sweep_lyapunov(cfg.params, cfg.grid, cfg.lyapunov, cfg.initial_state(),
                               cfg.workers);
    } else {
        field = sweep_sp_bar(cfg.params, cfg.grid, cfg.integrator.t_end, cfg.integrator,
                             cfg.measures, cfg.initial_state(), cfg.workers);
    }
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    const std::string stem = lyap ? "sweep_lyapunov" : "sweep_spbar";
    write_text_file(dir / (stem + ".csv"), sweep_csv(field));
    write_json_file(dir / (stem + ".json"), sweep_metadata(field, cfg));
    if (cfg.render) {
        write_text_file(dir / (stem + "_continuous.svg"),
                        render_heatmap(field, HeatmapStyle::continuous,
                                       lyap ? "largest Lyapunov exponent" : "time-averaged S_p'"));
        if (lyap)
            write_text_file(dir / (stem + "_sign.svg"),
                            render_heatmap(field, HeatmapStyle::sign,
                                           "sign of the largest Lyapunov exponent"));
    }
    const auto divergent = static_cast<long>(
        std::count(field.status.begin(), field.status.end(), CellStatus::divergent));
    if (divergent > 0)
        return {3, stem + ": " + std::to_string(divergent) +
                       " divergent cells (see divergent_cells in " + stem + ".json)"};
    return {0, stem + ": " + std::to_string(field.grid.cells()) + " cells"};
}

RunResult run_logic(const RunConfig& cfg) {
    const LogicTable table = classify_logic(cfg.params, cfg.logic.mu_on, cfg.logic.lambda_on,
                                            cfg.lyapunov, cfg.initial_state());
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    json j = logic_table_json(table);
    j["tool_version"] = kVersion;
    j["config"] = cfg.to_json();
    write_json_file(dir / "logic.json", j);
    return {0, "logic: gate " + table.gate};
}

/// Attractor classification from the |B1| sample series: steady point
/// (flat or decaying oscillation), periodic orbit (up to period 4 in the
/// peak sequence), or aperiodic.
std::string classify_attractor(const std::vector<double>& times,
                               const std::vector<double>& amps) {
    const size_t n = times.size();
    if (n < 16) return "aperiodic";
    const size_t k0 = n / 2;

    double lo = amps[k0], hi = amps[k0];
    for (size_t k = k0; k < n; ++k) {
        lo = std::min(lo, amps[k]);
        hi = std::max(hi, amps[k]);
    }
    if (hi <= 0.0 || (hi - lo) / std::max(hi, 1e-300) < 1e-6) return "steady";

    // converging spiral: the oscillation amplitude keeps shrinking
    auto window_range = [&](size_t a, size_t b) {
        double wlo = amps[a], whi = amps[a];
        for (size_t k = a; k < b; ++k) {
            wlo = std::min(wlo, amps[k]);
            whi = std::max(whi, amps[k]);
        }
        return whi - wlo;
    };
    const size_t quarter = (n - k0) / 4;
    const double amp_early = window_range(k0, k0 + quarter);
    const double amp_late = window_range(n - quarter, n);
    if (amp_late < 0.7 * amp_early) return "steady";

    // parabola-interpolated local maxima of |B1|
    std::vector<double> peaks;
    for (size_t k = std::max(k0, size_t{1}); k + 1 < n; ++k) {
        if (!(amps[k] >= amps[k - 1] && amps[k] > amps[k + 1])) continue;
        const double a = amps[k - 1], b = amps[k], c = amps[k + 1];
        const double denom = a - 2.0 * b + c;
        double peak = b;
        if (denom < 0.0) {
            const double delta = 0.5 * (a - c) / denom;
            peak = b - 0.25 * (a - c) * delta;
        }
        peaks.push_back(peak);
    }
    if (peaks.size() < 6) return "aperiodic";

    for (int stride = 1; stride <= 4; ++stride) {
        bool match = true;
        for (size_t k = 0; k + stride < peaks.size() && match; ++k) {
            const double rel = std::abs(peaks[k + stride] - peaks[k]) /
                               std::max(std::abs(peaks[k]), 1e-300);
            if (rel > 1e-3) match = false;
        }
        if (match && peaks.size() > static_cast<size_t>(stride) + 1) return "periodic";
    }
    return "aperiodic";
}

RunResult run_calibrate(const RunConfig& cfg) {
    IntegratorConfig icfg = cfg.integrator;
    icfg.sample_every = 1;  // peak interpolation needs full resolution

    json report = json::array();
    for (int k = 0; k < cfg.calibrate.e_steps; ++k) {
        const double E =
            cfg.calibrate.e_steps == 1
                ? cfg.calibrate.e_min
                : cfg.calibrate.e_min + (cfg.calibrate.e_max - cfg.calibrate.e_min) *
                                            static_cast<double>(k) / (cfg.calibrate.e_steps - 1);
        SystemParams p = cfg.params.with_couplings(0.0, 0.0);  // uncoupled single-system regime
        p.E = E;
        const Trajectory traj = evolve(p, cfg.initial_state(), std::nullopt, icfg);
        json entry;
        entry["E"] = E;
        if (traj.terminated_early) {
            entry["flag"] = "divergent";
        } else {
            std::vector<double> amps(traj.times.size());
            double max_b = 0.0;
            for (size_t s = 0; s < traj.times.size(); ++s) {
                amps[s] = std::abs(traj.means[s].B1);
                max_b = std::max(max_b, amps[s]);
            }
            entry["flag"] = classify_attractor(traj.times, amps);
            entry["max_abs_b1"] = max_b;
        }
        entry["is_config_default"] = (E == cfg.params.E);
        report.push_back(std::move(entry));
    }

    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    json j;
    j["tool_version"] = kVersion;
    j["chosen_default_E"] = cfg.params.E;
    j["scan"] = report;
    j["config"] = cfg.to_json();
    write_json_file(dir / "calibrate.json", j);
    return {0, "calibrate-drive: " + std::to_string(cfg.calibrate.e_steps) + " drive levels"};
}

RunResult run_fig5(const RunConfig& cfg) {
    const std::array<PanelSpec, 4> panels{
        PanelSpec{"panel_a", 0.0, 0.0},
        PanelSpec{"panel_b", 0.0, cfg.logic.lambda_on},
        PanelSpec{"panel_c", cfg.logic.mu_on, 0.0},
        PanelSpec{"panel_d", cfg.logic.mu_on, cfg.logic.lambda_on}};

    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);

    json summary;
    summary["tool_version"] = kVersion;
    json panel_report = json::array();
    bool any_divergent = false;
    std::vector<PhaseSeries> phases;
    for (const auto& panel : panels) {
        const SystemParams p = cfg.params.with_couplings(panel.mu, panel.lambda);
        Trajectory traj;
        const bool diverged = write_simulation(dir / panel.name, cfg, p, traj);
        any_divergent = any_divergent || diverged;

        json entry;
        entry["panel"] = panel.name;
        entry["mu"] = panel.mu;
        entry["lambda"] = panel.lambda;
        entry["diverged"] = diverged;
        if (!diverged && !traj.times.empty()) {
            const PhaseSeries phase = phase_error(traj, cfg.measures.amplitude_floor);
            const double t_end = phase.times.back();
            double max_abs_theta = 0.0;
            for (size_t k = 0; k < phase.times.size(); ++k)
                if (phase.times[k] >= 0.9 * t_end)
                    max_abs_theta = std::max(max_abs_theta, std::abs(phase.theta[k]));
            entry["max_abs_theta_final_10pct"] = max_abs_theta;
            entry["theta_end"] = phase.theta.back();
            phases.push_back(phase);
        }
        panel_report.push_back(std::move(entry));
    }
    summary["panels"] = panel_report;
    summary["config"] = cfg.to_json();
    write_json_file(dir / "fig5_summary.json", summary);

    if (cfg.render && phases.size() == 4) {
        write_text_file(dir / "fig5_theta.svg",
                        render_series({Series{"mu=0, lambda=0", phases[0].times, phases[0].theta},
                                       Series{"mu=0, lambda=on", phases[1].times, phases[1].theta},
                                       Series{"mu=on, lambda=0", phases[2].times, phases[2].theta},
                                       Series{"mu=on, lambda=on", phases[3].times,
                                              phases[3].theta}},
                                      "t", "theta", "switch scenarios"));
    }
    if (any_divergent) return {3, "fig5: at least one panel diverged"};
    return {0, "fig5: four switch scenarios written"};
}

} // namespace

RunResult run_scenario(const RunConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.output_dir);
    write_json_file(fs::path(cfg.output_dir) / "effective_config.json", cfg.to_json());
    switch (cfg.scenario) {
        case Scenario::simulate: return run_simulate(cfg);
        case Scenario::sweep_lyapunov:
        case Scenario::sweep_spbar: return run_sweep(cfg);
        case Scenario::logic: return run_logic(cfg);
        case Scenario::calibrate_drive: return run_calibrate(cfg);
        case Scenario::fig5: return run_fig5(cfg);
    }
    throw std::logic_error("run_scenario: unhandled scenario");
}

} // namespace optosync
