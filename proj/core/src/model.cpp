#include "optosync/model.hpp"

#include <cmath>
#include <stdexcept>

namespace optosync {

namespace {

void require_nonneg(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("SystemParams: ") + name +
                                    " must be finite and >= 0");
}

constexpr Complex kI{0.0, 1.0};

} // namespace

void SystemParams::validate() const {
    if (!(omega1 > 0.0) || !std::isfinite(omega1))
        throw std::invalid_argument("SystemParams: omega1 must be finite and > 0");
    if (!std::isfinite(omega2))
        throw std::invalid_argument("SystemParams: omega2 must be finite");
    if (!std::isfinite(delta1) || !std::isfinite(delta2))
        throw std::invalid_argument("SystemParams: detunings must be finite");
    require_nonneg(kappa, "kappa");
    require_nonneg(gamma, "gamma");
    require_nonneg(n_b, "n_b");
    require_nonneg(g, "g");
    require_nonneg(E, "E");
    require_nonneg(mu, "mu");
    require_nonneg(lambda, "lambda");
}

bool MeanState::finite() const {
    auto ok = [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    };
    return ok(A1) && ok(A2) && ok(B1) && ok(B2);
}

void MeanState::require_finite() const {
    auto check = [](const Complex& z, const char* name) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error(std::string("MeanState: non-finite amplitude ") + name);
    };
    check(A1, "A1");
    check(A2, "A2");
    check(B1, "B1");
    check(B2, "B2");
}

double MeanState::inf_norm() const {
    return std::max(std::max(std::abs(A1), std::abs(A2)),
                    std::max(std::abs(B1), std::abs(B2)));
}

MeanState default_initial_state(double beta, double theta0) {
    MeanState s;
    s.A1 = s.A2 = Complex{0.0, 0.0};
    s.B1 = beta * std::polar(1.0, theta0);
    s.B2 = Complex{beta, 0.0};
    return s;
}

Mat8 symplectic_form() {
    Mat8 omega = Mat8::Zero();
    for (int m = 0; m < 4; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

CovState CovState::vacuum() {
    CovState s;
    s.c = 0.5 * Mat8::Identity();
    return s;
}

CovState CovState::diagonal(const Eigen::Matrix<double, 8, 1>& d) {
    CovState s;
    s.c = d.asDiagonal();
    return s;
}

double CovState::max_asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            m = std::max(m, std::abs(c(i, j) - c(j, i)));
    return m;
}

double CovState::min_symplectic_eigenvalue() const {
    CMat8 h = c.cast<Complex>() + Complex{0.0, 0.5} * symplectic_form().cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMat8> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

MeanState mean_field_rhs(const SystemParams& params, const MeanState& s) {
    s.require_finite();
    MeanState d;
    d.A1 = (-params.kappa + kI * (params.delta1 + 2.0 * params.g * s.B1.real())) * s.A1 +
           params.E - kI * params.lambda * s.A2;
    d.A2 = (-params.kappa + kI * (params.delta2 + 2.0 * params.g * s.B2.real())) * s.A2 +
           params.E - kI * params.lambda * s.A1;
    d.B1 = (-params.gamma - kI * params.omega1) * s.B1 + kI * params.g * std::norm(s.A1) +
           kI * params.mu * s.B2;
    d.B2 = (-params.gamma - kI * params.omega2) * s.B2 + kI * params.g * std::norm(s.A2) +
           kI * params.mu * s.B1;
    return d;
}

Mat8 build_drift_matrix(const SystemParams& params, const MeanState& s) {
    s.require_finite();
    const double k = params.kappa;
    const double gm = params.gamma;
    const double mu = params.mu;
    const double lm = params.lambda;
    const double w1 = params.omega1;
    const double w2 = params.omega2;
    // effective detunings shifted by the mechanical displacement
    const double d1 = params.delta1 + 2.0 * params.g * s.B1.real();
    const double d2 = params.delta2 + 2.0 * params.g * s.B2.real();
    const double gra1 = 2.0 * params.g * s.A1.real();
    const double gia1 = 2.0 * params.g * s.A1.imag();
    const double gra2 = 2.0 * params.g * s.A2.real();
    const double gia2 = 2.0 * params.g * s.A2.imag();

    Mat8 m = Mat8::Zero();
    m(X1, X1) = -k;   m(X1, Y1) = -d1;  m(X1, Y2) = lm;   m(X1, Q1) = -gia1;
    m(Y1, X1) = d1;   m(Y1, Y1) = -k;   m(Y1, X2) = -lm;  m(Y1, Q1) = gra1;
    m(X2, Y1) = lm;   m(X2, X2) = -k;   m(X2, Y2) = -d2;  m(X2, Q2) = -gia2;
    m(Y2, X1) = -lm;  m(Y2, X2) = d2;   m(Y2, Y2) = -k;   m(Y2, Q2) = gra2;
    m(Q1, Q1) = -gm;  m(Q1, P1) = w1;   m(Q1, P2) = -mu;
    m(P1, X1) = gra1; m(P1, Y1) = gia1; m(P1, Q1) = -w1;  m(P1, P1) = -gm; m(P1, Q2) = mu;
    m(Q2, P1) = -mu;  m(Q2, Q2) = -gm;  m(Q2, P2) = w2;
    m(P2, X2) = gra2; m(P2, Y2) = gia2; m(P2, Q1) = mu;   m(P2, Q2) = -w2; m(P2, P2) = -gm;
    return m;
}

Mat8 build_noise_matrix(const SystemParams& params) {
    params.validate();
    Mat8 n = Mat8::Zero();
    const double optical = params.kappa;
    const double mechanical = params.gamma * (2.0 * params.n_b + 1.0);
    n(X1, X1) = n(Y1, Y1) = n(X2, X2) = n(Y2, Y2) = optical;
    n(Q1, Q1) = n(P1, P1) = n(Q2, Q2) = n(P2, P2) = mechanical;
    return n;
}

Eigen::Matrix<double, 8, 1> mean_to_quadratures(const MeanState& s) {
    const double r2 = std::sqrt(2.0);
    Eigen::Matrix<double, 8, 1> v;
    v << r2 * s.A1.real(), r2 * s.A1.imag(), r2 * s.A2.real(), r2 * s.A2.imag(),
        r2 * s.B1.real(), r2 * s.B1.imag(), r2 * s.B2.real(), r2 * s.B2.imag();
    return v;
}

MeanState quadratures_to_mean(const Eigen::Matrix<double, 8, 1>& v) {
    const double r2 = std::sqrt(2.0);
    MeanState s;
    s.A1 = Complex{v[X1], v[Y1]} / r2;
    s.A2 = Complex{v[X2], v[Y2]} / r2;
    s.B1 = Complex{v[Q1], v[P1]} / r2;
    s.B2 = Complex{v[Q2], v[P2]} / r2;
    return s;
}

Eigen::Matrix<double, 8, 1> mean_field_rhs_quadratures(const SystemParams& params,
                                                       const Eigen::Matrix<double, 8, 1>& v) {
    return mean_to_quadratures(mean_field_rhs(params, quadratures_to_mean(v)));
}

} // namespace optosync
