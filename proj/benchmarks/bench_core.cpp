#include "optosync/lyapunov.hpp"
#include "optosync/measures.hpp"

#include <benchmark/benchmark.h>

using namespace optosync;

namespace {

SystemParams reference_point() {
    SystemParams p;
    p.mu = 0.004;
    p.lambda = 0.16;
    return p;
}

MeanState working_state() {
    MeanState s;
    s.A1 = Complex{35.0, -12.0};
    s.A2 = Complex{30.0, 14.0};
    s.B1 = Complex{150.0, 80.0};
    s.B2 = Complex{140.0, -90.0};
    return s;
}

void MeanFieldRhs(benchmark::State& state) {
    const SystemParams p = reference_point();
    const MeanState s = working_state();
    for (auto _ : state) benchmark::DoNotOptimize(mean_field_rhs(p, s));
}
BENCHMARK(MeanFieldRhs);

void DriftMatrix(benchmark::State& state) {
    const SystemParams p = reference_point();
    const MeanState s = working_state();
    for (auto _ : state) benchmark::DoNotOptimize(build_drift_matrix(p, s));
}
BENCHMARK(DriftMatrix);

void EvolveMeanField(benchmark::State& state) {
    const SystemParams p = reference_point();
    const MeanState init = default_initial_state(1.0, M_PI_2);
    IntegratorConfig cfg;
    cfg.t_end = state.range(0);
    cfg.sample_every = 1000000;
    for (auto _ : state) benchmark::DoNotOptimize(evolve(p, init, std::nullopt, cfg));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(cfg.t_end / cfg.dt));
}
BENCHMARK(EvolveMeanField)->Arg(10)->Arg(100);

void EvolveWithCovariance(benchmark::State& state) {
    const SystemParams p = reference_point();
    const MeanState init = default_initial_state(1.0, M_PI_2);
    IntegratorConfig cfg;
    cfg.t_end = state.range(0);
    cfg.sample_every = 1000000;
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve(p, init, CovState::vacuum(), cfg));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(cfg.t_end / cfg.dt));
}
BENCHMARK(EvolveWithCovariance)->Arg(10)->Arg(100);

void MeasuresAlongRun(benchmark::State& state) {
    const SystemParams p = reference_point();
    IntegratorConfig cfg;
    cfg.t_end = 100.0;
    cfg.sample_every = 10;
    const Trajectory traj = evolve(p, default_initial_state(1.0, M_PI_2), CovState::vacuum(), cfg);
    for (auto _ : state) benchmark::DoNotOptimize(compute_measures(traj));
}
BENCHMARK(MeasuresAlongRun);

void SymplecticEigenvalue(benchmark::State& state) {
    const CovState c = CovState::vacuum();
    for (auto _ : state) benchmark::DoNotOptimize(c.min_symplectic_eigenvalue());
}
BENCHMARK(SymplecticEigenvalue);

void LyapunovEstimate(benchmark::State& state) {
    const SystemParams p = reference_point();
    LyapunovConfig cfg;
    cfg.t_total = state.range(0);
    cfg.t_transient = cfg.t_total / 4.0;
    const MeanState init = default_initial_state(1.0, cfg.theta0);
    for (auto _ : state) benchmark::DoNotOptimize(largest_lyapunov(p, init, cfg));
}
BENCHMARK(LyapunovEstimate)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
