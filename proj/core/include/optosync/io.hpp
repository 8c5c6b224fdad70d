#pragma once

#include "optosync/config.hpp"
#include "optosync/measures.hpp"
#include "optosync/sweep.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>

namespace optosync {

/// Shortest round-trip decimal form of a double ("nan" for NaN).
std::string format_double(double v);

/// Trajectory CSV: t, Re/Im of A1, A2, B1, B2, then (when covariance is
/// enabled) the 36 upper-triangle entries c_ij row-major (c11, c12, ...,
/// c18, c22, ..., c88).
std::string trajectory_csv(const Trajectory& traj);

/// Measure CSV: t, theta, sc_prime, sp_prime, mean_q_minus, mean_p_minus.
std::string measures_csv(const MeasureSeries& m);

/// Phase CSV: t, theta, phi1, phi2.
std::string phase_csv(const PhaseSeries& p);

/// Sweep CSV: mu, lambda, value, status (mu outer, lambda inner).
std::string sweep_csv(const SweepField& field);

/// Sweep JSON header: grid metadata, counts per status, config echo,
/// tool version, and the list of divergent cells.
nlohmann::json sweep_metadata(const SweepField& field, const RunConfig& cfg);

nlohmann::json lyapunov_result_json(const LyapunovResult& r);
nlohmann::json logic_table_json(const LogicTable& t);

void write_text_file(const std::filesystem::path& path, const std::string& content);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// Sidecar <stem>.meta.json carrying the effective config next to a CSV.
void write_meta_sidecar(const std::filesystem::path& csv_path, const RunConfig& cfg);

} // namespace optosync
