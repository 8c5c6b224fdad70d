#include "optosync/integrate.hpp"

#include <algorithm>
#include <cstdio>

namespace optosync {

namespace {

struct MeanFieldSystem {
    SystemParams params;
    using State = MeanState;
    State deriv(double, const State& s) const { return mean_field_rhs(params, s); }
};

/// Mean amplitudes and covariance advanced as one state so every RK stage
/// rebuilds S from that stage's mean values.
struct JointState {
    MeanState mean;
    Mat8 cov;

    JointState& operator+=(const JointState& o) {
        mean += o.mean;
        cov += o.cov;
        return *this;
    }
    friend JointState operator+(JointState a, const JointState& b) { return a += b; }
    friend JointState operator*(double s, JointState a) {
        a.mean = s * a.mean;
        a.cov *= s;
        return a;
    }
};

struct FullSystem {
    SystemParams params;
    Mat8 noise;
    using State = JointState;
    State deriv(double, const State& s) const {
        JointState d;
        d.mean = mean_field_rhs(params, s.mean);
        const Mat8 m = build_drift_matrix(params, s.mean) * s.cov;
        d.cov = m + m.transpose();  // entrywise a+b = b+a keeps this bitwise symmetric
        d.cov += noise;
        return d;
    }
};

double inf_norm(const MeanState& s) { return s.inf_norm(); }
double inf_norm(const JointState& s) {
    return std::max(s.mean.inf_norm(), s.cov.cwiseAbs().maxCoeff());
}

void accumulate_scaled(const Complex& err, const Complex& y0, const Complex& y1, double atol,
                       double rtol, double& sum, long& n) {
    const double scale = atol + rtol * std::max(std::abs(y0), std::abs(y1));
    const double w = std::abs(err) / scale;
    sum += w * w;
    n += 1;
}

double scaled_error_norm(const MeanState& err, const MeanState& y0, const MeanState& y1,
                         double atol, double rtol) {
    double sum = 0;
    long n = 0;
    accumulate_scaled(err.A1, y0.A1, y1.A1, atol, rtol, sum, n);
    accumulate_scaled(err.A2, y0.A2, y1.A2, atol, rtol, sum, n);
    accumulate_scaled(err.B1, y0.B1, y1.B1, atol, rtol, sum, n);
    accumulate_scaled(err.B2, y0.B2, y1.B2, atol, rtol, sum, n);
    return std::sqrt(sum / static_cast<double>(n));
}

double scaled_error_norm(const JointState& err, const JointState& y0, const JointState& y1,
                         double atol, double rtol) {
    double sum = 0;
    long n = 0;
    accumulate_scaled(err.mean.A1, y0.mean.A1, y1.mean.A1, atol, rtol, sum, n);
    accumulate_scaled(err.mean.A2, y0.mean.A2, y1.mean.A2, atol, rtol, sum, n);
    accumulate_scaled(err.mean.B1, y0.mean.B1, y1.mean.B1, atol, rtol, sum, n);
    accumulate_scaled(err.mean.B2, y0.mean.B2, y1.mean.B2, atol, rtol, sum, n);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double scale =
                atol + rtol * std::max(std::abs(y0.cov(i, j)), std::abs(y1.cov(i, j)));
            const double w = err.cov(i, j) / scale;
            sum += w * w;
            n += 1;
        }
    return std::sqrt(sum / static_cast<double>(n));
}

// Dormand-Prince 5(4) tableau
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

template <class Sys>
typename Sys::State dopri5_step(const Sys& sys, double t, double dt, const typename Sys::State& y,
                                double& err_norm, double atol, double rtol) {
    using State = typename Sys::State;
    const State k1 = sys.deriv(t, y);
    const State k2 = sys.deriv(t + C2 * dt, y + dt * (A21 * k1));
    const State k3 = sys.deriv(t + C3 * dt, y + dt * (A31 * k1 + A32 * k2));
    const State k4 = sys.deriv(t + C4 * dt, y + dt * (A41 * k1 + A42 * k2 + A43 * k3));
    const State k5 =
        sys.deriv(t + C5 * dt, y + dt * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
    const State k6 =
        sys.deriv(t + dt, y + dt * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
    const State y5 = y + dt * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    const State k7 = sys.deriv(t + dt, y5);
    const State err = dt * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
    err_norm = scaled_error_norm(err, y, y5, atol, rtol);
    return y5;
}

std::string divergence_reason(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "divergence at t=%.6g", t);
    return buf;
}

template <class Sys>
void record_sample(Trajectory& traj, double t, const typename Sys::State& y) {
    traj.times.push_back(t);
    if constexpr (std::is_same_v<typename Sys::State, JointState>) {
        traj.means.push_back(y.mean);
        traj.covs.push_back(CovState{y.cov});
    } else {
        traj.means.push_back(y);
    }
}

template <class Sys>
Trajectory integrate_fixed(const Sys& sys, typename Sys::State y, const IntegratorConfig& cfg) {
    Trajectory traj;
    const auto n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    record_sample<Sys>(traj, 0.0, y);
    double t = 0.0;
    for (long step = 1; step <= n_steps; ++step) {
        const double dt = std::min(cfg.dt, cfg.t_end - t);
        y = rk4_step(sys, t, dt, y);
        t = (step == n_steps) ? cfg.t_end : static_cast<double>(step) * cfg.dt;
        if (inf_norm(y) > cfg.overflow_guard) {
            traj.terminated_early = true;
            traj.termination_reason = divergence_reason(t);
            return traj;
        }
        if (step % cfg.sample_every == 0 || step == n_steps) record_sample<Sys>(traj, t, y);
    }
    return traj;
}

template <class Sys>
Trajectory integrate_adaptive(const Sys& sys, typename Sys::State y, const IntegratorConfig& cfg) {
    Trajectory traj;
    record_sample<Sys>(traj, 0.0, y);
    double t = 0.0;
    double dt = cfg.dt;
    long accepted = 0;
    while (t < cfg.t_end) {
        dt = std::min(dt, cfg.t_end - t);
        if (dt < 1e-14 * std::max(1.0, std::abs(t)))
            throw std::runtime_error("adaptive integrator: step size underflow at t=" +
                                     std::to_string(t));
        double err = 0.0;
        const auto y_new = dopri5_step(sys, t, dt, y, err, cfg.abs_tol, cfg.rel_tol);
        if (err <= 1.0) {
            t += dt;
            y = y_new;
            ++accepted;
            if (inf_norm(y) > cfg.overflow_guard) {
                traj.terminated_early = true;
                traj.termination_reason = divergence_reason(t);
                return traj;
            }
            if (accepted % cfg.sample_every == 0 || t >= cfg.t_end)
                record_sample<Sys>(traj, t, y);
        }
        const double factor =
            (err > 0.0) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        dt *= factor;
    }
    return traj;
}

} // namespace

Trajectory evolve(const SystemParams& params, const MeanState& init_mean,
                  const std::optional<CovState>& init_cov, const IntegratorConfig& cfg) {
    params.validate();
    cfg.validate();
    init_mean.require_finite();
    if (init_cov && init_cov->max_asymmetry() != 0.0)
        throw std::invalid_argument("evolve: init_cov must be exactly symmetric");

    if (init_cov) {
        FullSystem sys{params, build_noise_matrix(params)};
        JointState y{init_mean, init_cov->c};
        return cfg.method == Method::rk4 ? integrate_fixed(sys, y, cfg)
                                         : integrate_adaptive(sys, y, cfg);
    }
    MeanFieldSystem sys{params};
    return cfg.method == Method::rk4 ? integrate_fixed(sys, init_mean, cfg)
                                     : integrate_adaptive(sys, init_mean, cfg);
}

} // namespace optosync
