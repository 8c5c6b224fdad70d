#pragma once

#include "optosync/model.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace optosync {

/// Thrown when a computation's reference dynamics leaves the admissible
/// region (used by callers that cannot continue on divergence; evolve()
/// itself reports divergence through Trajectory::terminated_early).
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { rk4, dopri5 };

struct IntegratorConfig {
    // covariance components oscillate at sums of mode frequencies; 0.02 keeps
    // the propagated state physical over the full reference horizon
    double dt = 0.02;
    double t_end = 2000.0;
    int sample_every = 10;          ///< snapshot stride in accepted steps
    Method method = Method::rk4;
    double rel_tol = 1e-8;          ///< adaptive only
    double abs_tol = 1e-10;         ///< adaptive only
    double overflow_guard = 1e12;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
        if (!(t_end > 0.0)) throw std::invalid_argument("IntegratorConfig: t_end must be > 0");
        if (sample_every < 1)
            throw std::invalid_argument("IntegratorConfig: sample_every must be >= 1");
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("IntegratorConfig: tolerances must be > 0");
    }
};

/// Sampled result of a joint mean-field + covariance evolution.
/// covs is empty when covariance propagation was disabled; otherwise it
/// parallels times/means index for index.
struct Trajectory {
    std::vector<double> times;
    std::vector<MeanState> means;
    std::vector<CovState> covs;
    bool terminated_early = false;
    std::string termination_reason;

    bool has_covariance() const { return !covs.empty(); }
};

/// Joint deterministic integration of the mean-field ODE and, when
/// init_cov is present, the covariance equation dC = (S C + C S^T + N) dt.
/// The drift matrix is rebuilt from the stage's mean state inside every
/// stage evaluation, so mean and covariance advance in one fused step.
/// Covariance increments are symmetric by construction, which keeps C
/// bitwise symmetric for all time.
Trajectory evolve(const SystemParams& params, const MeanState& init_mean,
                  const std::optional<CovState>& init_cov, const IntegratorConfig& cfg);

/// One classical fourth-order Runge-Kutta step for any state type with
/// vector-space arithmetic.
template <class Sys>
typename Sys::State rk4_step(const Sys& sys, double t, double dt, const typename Sys::State& y) {
    using State = typename Sys::State;
    const State k1 = sys.deriv(t, y);
    const State k2 = sys.deriv(t + 0.5 * dt, y + (0.5 * dt) * k1);
    const State k3 = sys.deriv(t + 0.5 * dt, y + (0.5 * dt) * k2);
    const State k4 = sys.deriv(t + dt, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Measured convergence order of the fixed-step RK4 scheme on a probe
/// system with a known solution: least-squares slope of log(global error
/// at t_end) against log(dt). The probe must provide deriv, exact(t) and
/// a scalar error(a, b) distance.
template <class Probe>
double convergence_order(const Probe& probe, double t_end, std::span<const double> dts) {
    std::vector<double> log_dt, log_err;
    for (double dt : dts) {
        auto y = probe.exact(0.0);
        double t = 0.0;
        const auto n = static_cast<long>(std::llround(t_end / dt));
        for (long i = 0; i < n; ++i, t += dt) y = rk4_step(probe, t, dt, y);
        const double err = probe.error(y, probe.exact(t_end));
        if (err == 0.0) continue;  // exactly integrable probe, slope undefined
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
    }
    if (log_dt.size() < 2)
        throw std::invalid_argument("convergence_order: need >= 2 dt values with nonzero error");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(log_dt.size());
    for (size_t i = 0; i < log_dt.size(); ++i) {
        sx += log_dt[i];
        sy += log_err[i];
        sxx += log_dt[i] * log_dt[i];
        sxy += log_dt[i] * log_err[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Decaying-oscillator probe z' = (-damping + i*frequency) z used for
/// integrator qualification.
struct DecayingOscillatorProbe {
    double damping = 0.3;
    double frequency = 1.0;
    Complex z0{1.0, 0.0};
    using State = Complex;
    State deriv(double, const State& z) const { return Complex{-damping, frequency} * z; }
    State exact(double t) const { return z0 * std::exp(Complex{-damping, frequency} * t); }
    double error(const State& a, const State& b) const { return std::abs(a - b); }
};

/// Global error of RK4 on a probe at a single dt (for step-halving checks).
template <class Probe>
double probe_global_error(const Probe& probe, double t_end, double dt) {
    auto y = probe.exact(0.0);
    double t = 0.0;
    const auto n = static_cast<long>(std::llround(t_end / dt));
    for (long i = 0; i < n; ++i, t += dt) y = rk4_step(probe, t, dt, y);
    return probe.error(y, probe.exact(t_end));
}

} // namespace optosync
