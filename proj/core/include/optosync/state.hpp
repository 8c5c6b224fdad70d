#pragma once

#include <Eigen/Dense>
#include <complex>

namespace optosync {

using Complex = std::complex<double>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using CMat8 = Eigen::Matrix<Complex, 8, 8>;

/// Index of each quadrature in the 8-component fluctuation vector
/// u = (dx1, dy1, dx2, dy2, dq1, dp1, dq2, dp2).
/// x,y are the optical quadratures, q,p the mechanical ones.
enum Quad : int { X1 = 0, Y1 = 1, X2 = 2, Y2 = 3, Q1 = 4, P1 = 5, Q2 = 6, P2 = 7 };

/// Mean-field amplitudes <a1>, <a2>, <b1>, <b2>.
struct MeanState {
    Complex A1{0.0, 0.0};
    Complex A2{0.0, 0.0};
    Complex B1{0.0, 0.0};
    Complex B2{0.0, 0.0};

    bool finite() const;

    /// Throws std::domain_error naming the first non-finite field.
    void require_finite() const;

    /// Largest absolute value over the four amplitudes.
    double inf_norm() const;

    MeanState& operator+=(const MeanState& o) {
        A1 += o.A1; A2 += o.A2; B1 += o.B1; B2 += o.B2;
        return *this;
    }
    friend MeanState operator+(MeanState a, const MeanState& b) { return a += b; }
    friend MeanState operator-(MeanState a, const MeanState& b) {
        a.A1 -= b.A1; a.A2 -= b.A2; a.B1 -= b.B1; a.B2 -= b.B2;
        return a;
    }
    friend MeanState operator*(double s, MeanState a) {
        a.A1 *= s; a.A2 *= s; a.B1 *= s; a.B2 *= s;
        return a;
    }
};

/// Default mean-field initial condition: cavities empty, oscillators at
/// amplitude beta with a relative phase error theta0 carried by B1.
MeanState default_initial_state(double beta, double theta0);

/// The 8x8 symplectic form pairing each (coordinate, momentum) quadrature.
Mat8 symplectic_form();

/// Symmetric 8x8 covariance matrix of the quadrature fluctuations,
/// c_ij = (1/2)<u_i u_j + u_j u_i>, in the Quad ordering.
struct CovState {
    Mat8 c = Mat8::Zero();

    /// Vacuum covariance (1/2) * identity, the minimum-uncertainty
    /// uncorrelated reference state.
    static CovState vacuum();

    /// Thermal-free diagonal state diag(v...) (used by tests).
    static CovState diagonal(const Eigen::Matrix<double, 8, 1>& d);

    double max_asymmetry() const;

    /// Smallest eigenvalue of the Hermitian matrix c + (i/2) * Omega.
    /// Non-negative (up to tolerance) iff the state is physical.
    double min_symplectic_eigenvalue() const;

    bool is_physical(double tol = 1e-9) const {
        return min_symplectic_eigenvalue() >= -tol;
    }
};

} // namespace optosync
