#include "optosync/measures.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace optosync;

namespace {

/// Hand-built trajectory with prescribed mechanical amplitudes.
Trajectory synthetic_trajectory(double dt, double t_end,
                                const std::function<Complex(double)>& b1,
                                const std::function<Complex(double)>& b2) {
    Trajectory traj;
    for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
        MeanState s;
        s.A1 = s.A2 = Complex{1.0, 0.0};
        s.B1 = b1(t);
        s.B2 = b2(t);
        traj.times.push_back(t);
        traj.means.push_back(s);
    }
    return traj;
}

CovState random_physical_covariance(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Mat8 g;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) g(i, j) = 0.4 * normal(rng);
    CovState c;
    c.c = 0.5 * Mat8::Identity() + g * g.transpose();  // vacuum plus positive matrix
    return c;
}

} // namespace

TEST_CASE("phase error of identical phases is zero") {
    const auto traj = synthetic_trajectory(0.1, 10.0, [](double) { return Complex{1.0, 0.0}; },
                                           [](double) { return Complex{1.0, 0.0}; });
    const PhaseSeries ph = phase_error(traj);
    for (double th : ph.theta) CHECK(th == 0.0);
}

TEST_CASE("phase error of a quarter-turn offset") {
    const auto traj = synthetic_trajectory(0.1, 1.0, [](double) { return Complex{0.0, 1.0}; },
                                           [](double) { return Complex{1.0, 0.0}; });
    const PhaseSeries ph = phase_error(traj);
    CHECK(ph.theta.front() == doctest::Approx(M_PI_2).epsilon(1e-14));
}

TEST_CASE("unwrapped rotating amplitudes accumulate the detuning") {
    const auto traj = synthetic_trajectory(
        0.1, 100.0, [](double t) { return std::polar(1.0, 1.005 * t); },
        [](double t) { return std::polar(1.0, 1.0 * t); });
    const PhaseSeries ph = phase_error(traj);
    CHECK(std::abs(ph.theta.back() - 0.5) < 1e-9);
    for (size_t k = 1; k < ph.times.size(); ++k) {
        CHECK(std::abs(ph.phi1[k] - ph.phi1[k - 1]) < M_PI);
        CHECK(std::abs(ph.phi2[k] - ph.phi2[k - 1]) < M_PI);
        CHECK(ph.theta[k] == ph.phi1[k] - ph.phi2[k]);
    }
}

TEST_CASE("phase error rejects amplitudes below the floor") {
    auto traj = synthetic_trajectory(0.1, 1.0, [](double) { return Complex{1.0, 0.0}; },
                                     [](double) { return Complex{1.0, 0.0}; });
    traj.means[3].B2 = Complex{0.0, 0.0};
    CHECK_THROWS_WITH_AS(phase_error(traj), doctest::Contains("phase undefined at t="),
                         std::domain_error);
}

TEST_CASE("complete-synchronization measure on reference covariances") {
    CHECK(sc_prime(CovState::vacuum()) == doctest::Approx(1.0).epsilon(1e-14));

    Eigen::Matrix<double, 8, 1> d;
    d << 0.5, 0.5, 0.5, 0.5, 1.0, 1.0, 1.0, 1.0;  // mechanical block at unit variance
    CHECK(sc_prime(CovState::diagonal(d)) == doctest::Approx(0.5).epsilon(1e-14));

    CovState degenerate = CovState::vacuum();
    degenerate.c(Q1, Q1) = degenerate.c(Q2, Q2) = degenerate.c(Q1, Q2) = degenerate.c(Q2, Q1) = 1.0;
    degenerate.c(P1, P1) = degenerate.c(P2, P2) = degenerate.c(P1, P2) = degenerate.c(P2, P1) = 2.0;
    CHECK_THROWS_WITH_AS(sc_prime(degenerate), doctest::Contains("unphysical"),
                         std::runtime_error);
}

TEST_CASE("first-order error means use the sqrt(2) convention") {
    MeanState s;
    s.B1 = Complex{3.0, 1.0};
    s.B2 = Complex{1.0, -2.0};
    // <q_j> = sqrt(2) Re B_j, so (q1 - q2)/sqrt(2) collapses to the Re difference
    CHECK(mean_q_minus(s) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mean_p_minus(s) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("rotation by zero phases is the identity") {
    std::mt19937_64 rng(11);
    const CovState c = random_physical_covariance(rng);
    MeanState mean;
    mean.A1 = mean.A2 = mean.B1 = mean.B2 = Complex{2.0, 0.0};
    const CovState rotated = rotate_covariance(c, mean);
    CHECK((rotated.c - c.c).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("quarter-turn rotation exchanges the quadratures of one mode") {
    Eigen::Matrix<double, 8, 1> d;
    d << 0.5, 0.5, 0.5, 0.5, 3.0, 7.0, 0.5, 0.5;  // B1 block [[3,0],[0,7]]
    MeanState mean;
    mean.A1 = mean.A2 = mean.B2 = Complex{1.0, 0.0};
    mean.B1 = Complex{0.0, 5.0};  // arg = pi/2
    const CovState rotated = rotate_covariance(CovState::diagonal(d), mean);
    CHECK(rotated.c(Q1, Q1) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(rotated.c(P1, P1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rotated.c(X1, X1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rotation preserves symmetry, trace, spectrum and physicality") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (int trial = 0; trial < 100; ++trial) {
        const CovState c = random_physical_covariance(rng);
        MeanState mean;
        mean.A1 = std::polar(1.0, phase(rng));
        mean.A2 = std::polar(2.0, phase(rng));
        mean.B1 = std::polar(0.5, phase(rng));
        mean.B2 = std::polar(3.0, phase(rng));
        const CovState r = rotate_covariance(c, mean);

        CHECK(r.max_asymmetry() == 0.0);
        CHECK(r.c.trace() == doctest::Approx(c.c.trace()).epsilon(1e-12));

        Eigen::SelfAdjointEigenSolver<Mat8> ea(c.c, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Mat8> eb(r.c, Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, ea.eigenvalues().cwiseAbs().maxCoeff());
        CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK(r.min_symplectic_eigenvalue() >= -1e-9);
    }
}

TEST_CASE("rotation requires all four mode amplitudes") {
    MeanState mean;
    mean.A1 = Complex{0.0, 0.0};
    mean.A2 = mean.B1 = mean.B2 = Complex{1.0, 0.0};
    CHECK_THROWS_AS(rotate_covariance(CovState::vacuum(), mean), std::domain_error);
}

TEST_CASE("phase-synchronization measure on reference covariances") {
    CHECK(sp_prime(CovState::vacuum()) == doctest::Approx(1.0).epsilon(1e-14));

    Eigen::Matrix<double, 8, 1> d;
    d << 0.5, 0.5, 0.5, 0.5, 0.5, 1.0, 0.5, 1.0;
    const double base = sp_prime(CovState::diagonal(d));
    d[P1] *= 2.0;
    d[P2] *= 2.0;
    CHECK(sp_prime(CovState::diagonal(d)) == doctest::Approx(0.5 * base).epsilon(1e-14));

    CovState degenerate = CovState::vacuum();
    degenerate.c(P1, P1) = degenerate.c(P2, P2) = degenerate.c(P1, P2) = degenerate.c(P2, P1) = 0.8;
    CHECK_THROWS_WITH_AS(sp_prime(degenerate), doctest::Contains("unphysical"),
                         std::runtime_error);
}

TEST_CASE("sp_prime prefactor is configurable") {
    CHECK(sp_prime(CovState::vacuum(), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("time average of simple series") {
    std::vector<double> times, values;
    for (double t = 0.0; t <= 5.0 + 1e-12; t += 0.01) {
        times.push_back(t);
        values.push_back(3.25);
    }
    CHECK(time_average(times, values, 5.0) == doctest::Approx(3.25).epsilon(1e-14));

    times.clear();
    values.clear();
    for (double t = 0.0; t <= 2.0 * M_PI + 1e-12; t += 1e-3) {
        times.push_back(t);
        values.push_back(std::sin(t));
    }
    CHECK(std::abs(time_average(times, values, 2.0 * M_PI)) < 1e-6);

    CHECK_THROWS_AS(time_average(times, values, 2.0 * M_PI, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(time_average(std::vector<double>{}, std::vector<double>{}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("measure series along a covariance run") {
    SystemParams p;
    p.mu = 0.004;
    p.lambda = 0.16;
    IntegratorConfig cfg;
    cfg.t_end = 300.0;
    cfg.sample_every = 10;
    const Trajectory traj = evolve(p, default_initial_state(1.0, M_PI_2), CovState::vacuum(), cfg);
    const MeasureSeries m = compute_measures(traj);

    // the cavities start empty, so the series begins at the first populated sample
    CHECK(m.times.front() > 0.0);
    CHECK(m.times.size() == m.sc_prime.size());
    CHECK(m.times.size() == m.sp_prime.size());
    for (size_t k = 0; k < m.times.size(); ++k) {
        CHECK(m.sc_prime[k] > 0.0);
        CHECK(m.sc_prime[k] <= 1.0 + 1e-12);
        CHECK(m.sp_prime[k] > 0.0);
    }
    // first-order means track the mean state, independent of the covariance
    const double q0 = mean_q_minus(traj.means.back());
    CHECK(m.mean_q_minus.back() == q0);

    CHECK_THROWS_AS(
        compute_measures(evolve(p, default_initial_state(1.0, 0.1), std::nullopt, cfg)),
        std::invalid_argument);
}
