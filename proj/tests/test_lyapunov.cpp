#include "optosync/lyapunov.hpp"
#include "optosync/measures.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace optosync;

namespace {

LyapunovResult probe_estimate(double a, double delta0 = 1e-6) {
    const oracles::ScalarLinearProbe probe{a};
    const BenettinSettings settings{delta0, 2.0, 5.0, 100.0, 1e-3};
    return benettin_estimate(probe, 1.0, 1.0 + delta0, settings,
                             [](double ref, double clone) { return clone - ref; });
}

} // namespace

TEST_CASE("scalar probe recovers its decay rate") {
    const LyapunovResult r = probe_estimate(-0.3);
    CHECK(std::abs(r.exponent + 0.3) < 1e-3);
    CHECK(r.classification == SyncClass::sync);
}

TEST_CASE("estimator is linear across probe rates") {
    for (double a : {-0.5, -0.1, 0.1}) {
        const LyapunovResult r = probe_estimate(a);
        CHECK(std::abs(r.exponent - a) < 1e-3);
    }
    CHECK(probe_estimate(0.1).classification == SyncClass::no_sync);
}

TEST_CASE("observable collapse is flagged and classified sync") {
    const oracles::CollapsingProbe probe;
    const BenettinSettings settings{1e-6, 2.0, 5.0, 100.0, 1e-3};
    const LyapunovResult r =
        benettin_estimate(probe, Complex{1.0, 0.0}, Complex{1.0, 1e-6}, settings,
                          [](const Complex& ref, const Complex& clone) {
                              return clone.imag() - ref.imag();
                          });
    CHECK(r.collapsed);
    CHECK(r.classification == SyncClass::sync);
    CHECK(r.exponent < -1.0);
}

TEST_CASE("coincident clone is rejected") {
    const oracles::ScalarLinearProbe probe{-0.3};
    const BenettinSettings settings{1e-6, 2.0, 5.0, 100.0, 1e-3};
    CHECK_THROWS_AS(benettin_estimate(probe, 1.0, 1.0, settings,
                                      [](double ref, double clone) { return clone - ref; }),
                    std::invalid_argument);
}

TEST_CASE("classification dead band") {
    CHECK(classify(-1.0, 0.1) == SyncClass::sync);
    CHECK(classify(1.0, 0.1) == SyncClass::no_sync);
    CHECK(classify(0.05, 0.1) == SyncClass::marginal);
    CHECK(classify(-0.05, 0.1) == SyncClass::marginal);
}

TEST_CASE("uncoupled detuned systems do not classify sync" * doctest::timeout(120)) {
    const SystemParams p = SystemParams{}.with_couplings(0.0, 0.0);
    const LyapunovConfig cfg;
    const LyapunovResult r = largest_lyapunov(p, default_initial_state(1.0, cfg.theta0), cfg);
    CHECK(r.classification != SyncClass::sync);
    CHECK(r.exponent > -1e-5);
}

TEST_CASE("identical uncoupled systems hold the perturbation scale" * doctest::timeout(120)) {
    SystemParams p = SystemParams{}.with_couplings(0.0, 0.0);
    p.omega2 = p.omega1;
    p.delta2 = p.delta1;
    const LyapunovConfig cfg;
    const LyapunovResult r = largest_lyapunov(p, default_initial_state(1.0, 0.0), cfg);
    CHECK_FALSE(r.collapsed);
    CHECK(std::abs(r.exponent) < 1e-4);  // neutral phase direction
}

TEST_CASE("reference coupling point classifies sync" * doctest::timeout(120)) {
    const SystemParams p = SystemParams{}.with_couplings(0.004, 0.16);
    const LyapunovConfig cfg;
    const LyapunovResult r = largest_lyapunov(p, default_initial_state(1.0, cfg.theta0), cfg);
    CHECK(r.classification == SyncClass::sync);
    CHECK(r.exponent < -2e-4);
}

TEST_CASE("exponent is robust against the perturbation size" * doctest::timeout(120)) {
    const SystemParams p = SystemParams{}.with_couplings(0.004, 0.16);
    LyapunovConfig cfg;
    const MeanState init = default_initial_state(1.0, cfg.theta0);
    const LyapunovResult r6 = largest_lyapunov(p, init, cfg);
    cfg.delta0 = 1e-8;
    const LyapunovResult r8 = largest_lyapunov(p, init, cfg);
    const double tol = std::max(3.0 * (r6.std_error + r8.std_error), 5e-3);
    CHECK(std::abs(r6.exponent - r8.exponent) < tol);
}

TEST_CASE("divergent reference raises") {
    SystemParams p;
    LyapunovConfig cfg;
    cfg.t_total = 100.0;
    cfg.t_transient = 0.0;
    CHECK_THROWS_AS(largest_lyapunov(p, default_initial_state(1e13, 0.0), cfg), DivergenceError);
}

TEST_CASE("degenerate logic request returns gate none") {
    LyapunovConfig cfg;
    cfg.t_total = 2000.0;
    cfg.t_transient = 500.0;
    const LogicTable table = classify_logic(SystemParams{}, 0.0, 0.0, cfg);
    CHECK(table.gate == "none");
    CHECK(table.corners[0].exponent == table.corners[3].exponent);
}

TEST_CASE("corner estimates are invariant under a system label swap" * doctest::timeout(300)) {
    // relabeling the two systems mirrors every slot of the arithmetic, so a
    // mirrored estimator run (swapped parameters, states and perturbation)
    // reproduces the exponent bitwise at each truth-table corner
    struct Sys {
        SystemParams p;
        using State = MeanState;
        State deriv(double, const State& s) const { return mean_field_rhs(p, s); }
        double norm(const State& s) const { return s.inf_norm(); }
    };
    auto swap_state = [](const MeanState& s) {
        MeanState out;
        out.A1 = s.A2;
        out.A2 = s.A1;
        out.B1 = s.B2;
        out.B2 = s.B1;
        return out;
    };
    auto theta_dev = [](const MeanState& ref, const MeanState& clone) {
        return std::arg(clone.B1 * std::conj(ref.B1)) - std::arg(clone.B2 * std::conj(ref.B2));
    };

    const LyapunovConfig cfg;
    const BenettinSettings settings{cfg.delta0, cfg.renorm_interval, 500.0, 2000.0, cfg.dt};
    SystemParams base;
    SystemParams swapped = base;
    std::swap(swapped.omega1, swapped.omega2);
    std::swap(swapped.delta1, swapped.delta2);

    for (auto [mu, lam] : {std::pair{0.0, 0.0}, {0.0, 0.16}, {0.004, 0.0}, {0.004, 0.16}}) {
        const MeanState init = default_initial_state(1.0, cfg.theta0);
        MeanState clone = init;
        clone.B1 *= std::polar(1.0, cfg.delta0);

        const auto direct = benettin_estimate(Sys{base.with_couplings(mu, lam)}, init, clone,
                                              settings, theta_dev);
        const auto mirrored =
            benettin_estimate(Sys{swapped.with_couplings(mu, lam)}, swap_state(init),
                              swap_state(clone), settings, theta_dev);
        CHECK(direct.exponent == mirrored.exponent);
        CHECK(direct.std_error == mirrored.std_error);
        CHECK(direct.classification == mirrored.classification);
    }
}

TEST_CASE("negative couplings are rejected") {
    CHECK_THROWS_AS(classify_logic(SystemParams{}, -0.1, 0.1, LyapunovConfig{}),
                    std::invalid_argument);
}
