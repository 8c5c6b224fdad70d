#include "optosync/sweep.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace optosync {

namespace {

void parallel_for_cells(int n_cells, int workers, const std::function<void(int)>& work) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n_cells));
    if (workers == 1) {
        for (int i = 0; i < n_cells; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_cells; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

bool cell_sync_label(const SweepField& field, int idx) {
    // only a decisive negative exponent supports a sync claim; marginal and
    // divergent cells label as not synchronized
    return field.status[idx] == CellStatus::ok && field.values[idx] < 0.0;
}

} // namespace

void GridSpec::validate() const {
    if (!(mu_max >= mu_min) || !(mu_min >= 0.0))
        throw std::invalid_argument("GridSpec: need mu_max >= mu_min >= 0");
    if (!(lambda_max >= lambda_min) || !(lambda_min >= 0.0))
        throw std::invalid_argument("GridSpec: need lambda_max >= lambda_min >= 0");
    if (mu_steps < 1 || lambda_steps < 1)
        throw std::invalid_argument("GridSpec: steps must be >= 1");
}

double GridSpec::mu_at(int i) const {
    if (mu_steps == 1) return mu_min;
    return mu_min + (mu_max - mu_min) * static_cast<double>(i) / (mu_steps - 1);
}

double GridSpec::lambda_at(int j) const {
    if (lambda_steps == 1) return lambda_min;
    return lambda_min + (lambda_max - lambda_min) * static_cast<double>(j) / (lambda_steps - 1);
}

std::string to_string(CellStatus s) {
    switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::divergent: return "divergent";
        default: return "marginal";
    }
}

SweepField sweep_lyapunov(const SystemParams& base, const GridSpec& grid,
                          const LyapunovConfig& cfg, int workers) {
    return sweep_lyapunov(base, grid, cfg, default_initial_state(1.0, cfg.theta0), workers);
}

SweepField sweep_lyapunov(const SystemParams& base, const GridSpec& grid,
                          const LyapunovConfig& cfg, const MeanState& init, int workers) {
    base.validate();
    grid.validate();
    cfg.validate();

    SweepField field;
    field.grid = grid;
    field.kind = "lyapunov";
    field.values.assign(static_cast<size_t>(grid.cells()),
                        std::numeric_limits<double>::quiet_NaN());
    field.status.assign(static_cast<size_t>(grid.cells()), CellStatus::ok);

    parallel_for_cells(grid.cells(), workers, [&](int idx) {
        const int i = idx / grid.lambda_steps;
        const int j = idx % grid.lambda_steps;
        const SystemParams p = base.with_couplings(grid.mu_at(i), grid.lambda_at(j));
        try {
            const LyapunovResult r = largest_lyapunov(p, init, cfg);
            field.values[static_cast<size_t>(idx)] = r.exponent;
            field.status[static_cast<size_t>(idx)] =
                r.classification == SyncClass::marginal ? CellStatus::marginal : CellStatus::ok;
        } catch (const DivergenceError&) {
            field.status[static_cast<size_t>(idx)] = CellStatus::divergent;
        }
    });
    return field;
}

SweepField sweep_sp_bar(const SystemParams& base, const GridSpec& grid, double T,
                        const IntegratorConfig& icfg, const MeasureOptions& mopts,
                        const MeanState& init, int workers) {
    base.validate();
    grid.validate();
    icfg.validate();
    if (!(T > 0.0)) throw std::invalid_argument("sweep_sp_bar: T must be > 0");

    IntegratorConfig cell_cfg = icfg;
    cell_cfg.t_end = T;

    SweepField field;
    field.grid = grid;
    field.kind = "sp_bar";
    field.values.assign(static_cast<size_t>(grid.cells()),
                        std::numeric_limits<double>::quiet_NaN());
    field.status.assign(static_cast<size_t>(grid.cells()), CellStatus::ok);

    parallel_for_cells(grid.cells(), workers, [&](int idx) {
        const int i = idx / grid.lambda_steps;
        const int j = idx % grid.lambda_steps;
        const SystemParams p = base.with_couplings(grid.mu_at(i), grid.lambda_at(j));
        const Trajectory traj = evolve(p, init, CovState::vacuum(), cell_cfg);
        if (traj.terminated_early) {
            field.status[static_cast<size_t>(idx)] = CellStatus::divergent;
            return;
        }
        const MeasureSeries m = compute_measures(traj, mopts);
        field.values[static_cast<size_t>(idx)] =
            time_average(m.times, m.sp_prime, T, mopts.t_skip);
    });
    return field;
}

std::vector<GridCell> find_logic_regions(const SweepField& field, const std::string& gate) {
    if (field.kind != "lyapunov")
        throw std::invalid_argument("find_logic_regions: field kind must be lyapunov");
    if (gate != "AND" && gate != "OR" && gate != "XOR")
        throw std::invalid_argument("find_logic_regions: gate must be AND, OR or XOR");
    const GridSpec& g = field.grid;
    if (g.mu_min != 0.0 || g.lambda_min != 0.0)
        throw std::invalid_argument(
            "find_logic_regions: grid must cover the mu=0 row and lambda=0 column");

    // raw sign labels
    std::vector<char> label(static_cast<size_t>(g.cells()));
    for (int idx = 0; idx < g.cells(); ++idx)
        label[static_cast<size_t>(idx)] = cell_sync_label(field, idx) ? 1 : 0;

    // smooth alone points: an interior cell none of whose neighbors shares
    // its label takes the neighborhood label (single simultaneous pass).
    // The zero row/column hold the truth-table reference corners and are
    // never rewritten.
    std::vector<char> smoothed = label;
    for (int i = 1; i < g.mu_steps; ++i)
        for (int j = 1; j < g.lambda_steps; ++j) {
            const char own = label[static_cast<size_t>(i * g.lambda_steps + j)];
            int same = 0, valid = 0;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ni = i + di, nj = j + dj;
                    if (ni < 0 || nj < 0 || ni >= g.mu_steps || nj >= g.lambda_steps) continue;
                    ++valid;
                    if (label[static_cast<size_t>(ni * g.lambda_steps + nj)] == own) ++same;
                }
            if (valid >= 3 && same == 0)
                smoothed[static_cast<size_t>(i * g.lambda_steps + j)] = own ? 0 : 1;
        }

    auto at = [&](int i, int j) { return smoothed[static_cast<size_t>(i * g.lambda_steps + j)] != 0; };

    std::vector<GridCell> out;
    for (int i = 0; i < g.mu_steps; ++i)
        for (int j = 0; j < g.lambda_steps; ++j) {
            const double mu = g.mu_at(i);
            const double lambda = g.lambda_at(j);
            if (!(mu > 0.0) || !(lambda > 0.0)) continue;
            if (field.status_at(i, j) == CellStatus::divergent) continue;
            const bool s00 = at(0, 0), s0l = at(0, j), sm0 = at(i, 0), sml = at(i, j);
            bool match = false;
            if (gate == "AND") match = !s00 && !s0l && !sm0 && sml;
            else if (gate == "OR") match = !s00 && s0l && sm0 && sml;
            else match = !s00 && s0l && sm0 && !sml;
            if (match) out.push_back(GridCell{i, j, mu, lambda});
        }
    return out;
}

} // namespace optosync
