#pragma once

#include "optosync/integrate.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace optosync {

struct LyapunovConfig {
    double delta0 = 1e-6;                      ///< initial phase perturbation (rad)
    double renorm_interval = 10.0 * 2.0 * M_PI;///< time between renormalizations
    double t_transient = 3000.0;               ///< discarded initial span
    double t_total = 12000.0;                  ///< accumulation horizon
    double theta0 = 0.5 * M_PI;                ///< reference initial phase error
    double dt = 0.01 * 2.0 * M_PI;             ///< fixed integration step
    double overflow_guard = 1e12;

    void validate() const {
        if (!(delta0 > 0.0)) throw std::invalid_argument("LyapunovConfig: delta0 must be > 0");
        if (!(renorm_interval > 0.0))
            throw std::invalid_argument("LyapunovConfig: renorm_interval must be > 0");
        if (!(t_transient >= 0.0) || !(t_total > t_transient))
            throw std::invalid_argument("LyapunovConfig: need t_total > t_transient >= 0");
        if (!(dt > 0.0)) throw std::invalid_argument("LyapunovConfig: dt must be > 0");
    }
};

enum class SyncClass { sync, no_sync, marginal };

std::string to_string(SyncClass c);

struct LyapunovResult {
    double exponent = 0.0;   ///< mean per-segment growth rate, units 1/time
    double std_error = 0.0;  ///< standard error over renormalization segments
    int segments = 0;
    SyncClass classification = SyncClass::marginal;
    bool collapsed = false;  ///< deviation fell below 1e-300 (trajectories coincide)
};

/// Dead-band classification: sync iff exponent + 2*std_error < 0,
/// no_sync iff exponent - 2*std_error > 0, marginal otherwise.
SyncClass classify(double exponent, double std_error);

struct BenettinSettings {
    double delta0;
    double renorm_interval;
    double t_transient;
    double t_total;
    double dt;
    double overflow_guard = 1e12;
};

/// Two-trajectory Benettin estimator generic over the dynamical system.
/// The renormalization acts on the full state deviation (rescaled back to
/// its initial norm at every interval, which keeps the pair inside the
/// linear regime without biasing the deviation direction), while growth is
/// measured through the scalar observable deviation(ref, clone). Each
/// rescale is compensated in a cumulative log offset so the recorded
/// log-deviation series is continuous; the exponent is the least-squares
/// slope of that series after the transient, and std_error is the OLS
/// slope error (the observable oscillates around its envelope, which the
/// fit treats as residual noise). If the observable contracts through its
/// resolvable floor before enough points are collected, the trajectories
/// coincide in the observable and the collapsed flag is set.
template <class Sys, class Obs>
LyapunovResult benettin_estimate(const Sys& sys, typename Sys::State ref,
                                 typename Sys::State clone, const BenettinSettings& s,
                                 Obs&& deviation) {
    const auto steps_per_segment =
        std::max<long>(1, std::llround(s.renorm_interval / s.dt));
    const auto total_steps = static_cast<long>(std::llround(s.t_total / s.dt));
    constexpr double kObservableFloor = 1e-13;

    const double norm0 = sys.norm(clone - ref);
    if (!(norm0 > 0.0))
        throw std::invalid_argument("benettin_estimate: clone coincides with reference");
    const double dev0 = std::abs(deviation(ref, clone));

    std::vector<double> fit_t, fit_logdev;
    double log_offset = 0.0;  // accumulates -log(rescale factors)
    double last_logdev = std::log(std::max(dev0, kObservableFloor));
    double last_t = 0.0;
    bool floored = false;

    double t = 0.0;
    for (long step = 1; step <= total_steps; ++step) {
        ref = rk4_step(sys, t, s.dt, ref);
        clone = rk4_step(sys, t, s.dt, clone);
        t = static_cast<double>(step) * s.dt;
        if (sys.norm(ref) > s.overflow_guard || sys.norm(clone) > s.overflow_guard) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), "lyapunov: trajectory diverged at t=%.6g", t);
            throw DivergenceError(buf);
        }
        if (step % steps_per_segment != 0) continue;

        const double dev = std::abs(deviation(ref, clone));
        if (dev <= kObservableFloor) {
            floored = true;  // observable contracted below resolution
            last_t = t;
            last_logdev = log_offset + std::log(kObservableFloor);
            break;
        }
        last_t = t;
        last_logdev = log_offset + std::log(dev);
        if (t > s.t_transient) {
            fit_t.push_back(t);
            fit_logdev.push_back(last_logdev);
        }

        const double norm_now = sys.norm(clone - ref);
        if (norm_now > 0.0) {
            const double factor = norm0 / norm_now;
            clone = ref + factor * (clone - ref);
            log_offset -= std::log(factor);
        }
    }

    LyapunovResult result;
    if (fit_t.size() < 3) {
        if (!floored)
            throw std::invalid_argument("benettin_estimate: too few segments after transient "
                                        "(t_total too short for renorm_interval)");
        // decisive contraction before statistics could accumulate
        result.collapsed = true;
        result.exponent = (last_logdev - std::log(dev0)) / last_t;
        result.std_error = 0.0;
        result.segments = static_cast<int>(fit_t.size());
        result.classification = SyncClass::sync;
        return result;
    }

    const auto n = static_cast<double>(fit_t.size());
    double tm = 0.0, lm = 0.0;
    for (size_t k = 0; k < fit_t.size(); ++k) {
        tm += fit_t[k];
        lm += fit_logdev[k];
    }
    tm /= n;
    lm /= n;
    double stt = 0.0, stl = 0.0;
    for (size_t k = 0; k < fit_t.size(); ++k) {
        stt += (fit_t[k] - tm) * (fit_t[k] - tm);
        stl += (fit_t[k] - tm) * (fit_logdev[k] - lm);
    }
    const double slope = stl / stt;
    double ss_res = 0.0;
    for (size_t k = 0; k < fit_t.size(); ++k) {
        const double r = fit_logdev[k] - lm - slope * (fit_t[k] - tm);
        ss_res += r * r;
    }
    result.exponent = slope;
    result.std_error = std::sqrt(ss_res / (n - 2.0) / stt);
    result.segments = static_cast<int>(fit_t.size());
    result.collapsed = floored;
    result.classification =
        floored ? SyncClass::sync : classify(result.exponent, result.std_error);
    return result;
}

/// Largest Lyapunov exponent of the phase error theta(t): reference and a
/// clone whose B1(0) phase is offset by delta0 are co-evolved; deviation is
/// measured as the difference of per-mode mechanical phase offsets.
LyapunovResult largest_lyapunov(const SystemParams& params, const MeanState& init,
                                const LyapunovConfig& cfg);

/// Four-corner switch truth table at coupling levels (mu_on, lambda_on):
/// corners evaluated at (0,0), (0,lambda_on), (mu_on,0), (mu_on,lambda_on).
/// A corner counts toward the gate as "on" only when it is decisively
/// classified sync; marginal corners gate as "off" (no demonstrated error
/// contraction) and are listed separately for inspection.
struct LogicTable {
    double mu_on = 0.0;
    double lambda_on = 0.0;
    std::array<LyapunovResult, 4> corners;
    std::string gate;  ///< "AND" | "OR" | "XOR" | "none"
    std::vector<int> indeterminate_corners;  ///< marginal corner indices
};

LogicTable classify_logic(const SystemParams& params_base, double mu_on, double lambda_on,
                          const LyapunovConfig& cfg);
LogicTable classify_logic(const SystemParams& params_base, double mu_on, double lambda_on,
                          const LyapunovConfig& cfg, const MeanState& init);

} // namespace optosync
