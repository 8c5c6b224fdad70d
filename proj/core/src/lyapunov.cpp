#include "optosync/lyapunov.hpp"

#include <complex>

namespace optosync {

namespace {

struct MeanFieldSystem {
    SystemParams params;
    using State = MeanState;
    State deriv(double, const State& s) const { return mean_field_rhs(params, s); }
    double norm(const State& s) const { return s.inf_norm(); }
};

/// Difference of the two trajectories' phase errors. Both trajectories stay
/// within the perturbation scale of each other, so each per-mode offset is
/// read directly from arg(clone * conj(ref)) without unwrapping.
double theta_deviation(const MeanState& ref, const MeanState& clone) {
    const double d1 = std::arg(clone.B1 * std::conj(ref.B1));
    const double d2 = std::arg(clone.B2 * std::conj(ref.B2));
    return d1 - d2;
}

} // namespace

std::string to_string(SyncClass c) {
    switch (c) {
        case SyncClass::sync: return "sync";
        case SyncClass::no_sync: return "no-sync";
        default: return "marginal";
    }
}

SyncClass classify(double exponent, double std_error) {
    if (exponent + 2.0 * std_error < 0.0) return SyncClass::sync;
    if (exponent - 2.0 * std_error > 0.0) return SyncClass::no_sync;
    return SyncClass::marginal;
}

LyapunovResult largest_lyapunov(const SystemParams& params, const MeanState& init,
                                const LyapunovConfig& cfg) {
    params.validate();
    cfg.validate();
    init.require_finite();

    MeanState clone = init;
    clone.B1 *= std::polar(1.0, cfg.delta0);

    const MeanFieldSystem sys{params};
    const BenettinSettings settings{cfg.delta0, cfg.renorm_interval, cfg.t_transient,
                                    cfg.t_total, cfg.dt, cfg.overflow_guard};
    return benettin_estimate(sys, init, clone, settings, theta_deviation);
}

LogicTable classify_logic(const SystemParams& params_base, double mu_on, double lambda_on,
                          const LyapunovConfig& cfg) {
    return classify_logic(params_base, mu_on, lambda_on, cfg,
                          default_initial_state(1.0, cfg.theta0));
}

LogicTable classify_logic(const SystemParams& params_base, double mu_on, double lambda_on,
                          const LyapunovConfig& cfg, const MeanState& init) {
    if (mu_on < 0.0 || lambda_on < 0.0)
        throw std::invalid_argument("classify_logic: couplings must be >= 0");

    LogicTable table;
    table.mu_on = mu_on;
    table.lambda_on = lambda_on;

    if (mu_on == 0.0 && lambda_on == 0.0) {
        // degenerate request: all four corners are the same point
        const auto r = largest_lyapunov(params_base.with_couplings(0.0, 0.0), init, cfg);
        table.corners = {r, r, r, r};
        table.gate = "none";
        return table;
    }

    const std::array<std::pair<double, double>, 4> corners{
        std::pair{0.0, 0.0}, {0.0, lambda_on}, {mu_on, 0.0}, {mu_on, lambda_on}};
    std::array<bool, 4> sync{};
    for (int k = 0; k < 4; ++k) {
        table.corners[k] = largest_lyapunov(
            params_base.with_couplings(corners[k].first, corners[k].second), init, cfg);
        if (table.corners[k].classification == SyncClass::marginal)
            table.indeterminate_corners.push_back(k);
        // synchronization is the positive claim: a marginal corner has not
        // demonstrated error contraction and gates as "off"
        sync[k] = table.corners[k].classification == SyncClass::sync;
    }
    if (!sync[0] && !sync[1] && !sync[2] && sync[3]) table.gate = "AND";
    else if (!sync[0] && sync[1] && sync[2] && sync[3]) table.gate = "OR";
    else if (!sync[0] && sync[1] && sync[2] && !sync[3]) table.gate = "XOR";
    else table.gate = "none";
    return table;
}

} // namespace optosync
