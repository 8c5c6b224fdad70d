#pragma once

#include "optosync/lyapunov.hpp"
#include "optosync/measures.hpp"

#include <string>
#include <vector>

namespace optosync {

/// Rectangular (mu, lambda) grid with inclusive endpoints and uniform
/// spacing; steps counts grid points (steps == 1 pins the coordinate at
/// the minimum).
struct GridSpec {
    double mu_min = 0.0;
    double mu_max = 0.01;
    int mu_steps = 26;
    double lambda_min = 0.0;
    double lambda_max = 0.2;
    int lambda_steps = 41;

    void validate() const;
    double mu_at(int i) const;
    double lambda_at(int j) const;
    int cells() const { return mu_steps * lambda_steps; }
};

enum class CellStatus { ok, divergent, marginal };

std::string to_string(CellStatus s);

/// One scalar per (mu, lambda) cell plus a status; values are stored
/// row-major with mu as the slow index.
struct SweepField {
    GridSpec grid;
    std::string kind;  ///< "lyapunov" | "sp_bar"
    std::vector<double> values;
    std::vector<CellStatus> status;

    int index(int i, int j) const { return i * grid.lambda_steps + j; }
    double value_at(int i, int j) const { return values[index(i, j)]; }
    CellStatus status_at(int i, int j) const { return status[index(i, j)]; }
};

/// Largest-Lyapunov-exponent field over the grid. Cells are independent
/// pure computations dispatched to a bounded worker pool and written to
/// pre-assigned slots, so the result is identical for any worker count.
/// Per-cell divergence is recorded in the status, never aborts the sweep.
SweepField sweep_lyapunov(const SystemParams& base, const GridSpec& grid,
                          const LyapunovConfig& cfg, int workers = 0);
SweepField sweep_lyapunov(const SystemParams& base, const GridSpec& grid,
                          const LyapunovConfig& cfg, const MeanState& init, int workers);

/// Time-averaged phase-measure field: per cell, evolve with covariance from
/// vacuum and average S_p'(t) over [0, T].
SweepField sweep_sp_bar(const SystemParams& base, const GridSpec& grid, double T,
                        const IntegratorConfig& icfg, const MeasureOptions& mopts,
                        const MeanState& init, int workers = 0);

struct GridCell {
    int i = 0;
    int j = 0;
    double mu = 0.0;
    double lambda = 0.0;
};

/// All (mu_on, lambda_on) cells whose four-corner truth table over the
/// sign-of-exponent labels matches the requested gate ("AND", "OR", "XOR").
/// Corners are read from the field's zero row/column; isolated single-cell
/// label mismatches are smoothed by an 8-neighborhood majority before the
/// table is evaluated (the raw field is never modified).
std::vector<GridCell> find_logic_regions(const SweepField& field, const std::string& gate);

} // namespace optosync
