#pragma once

#include "optosync/params.hpp"
#include "optosync/state.hpp"

namespace optosync {

/// Time derivative of the mean-field amplitudes:
///   dA1 = [-kappa + i*delta1 + 2ig*Re(B1)] A1 + E - i*lambda*A2
///   dA2 = [-kappa + i*delta2 + 2ig*Re(B2)] A2 + E - i*lambda*A1
///   dB1 = [-gamma - i*omega1] B1 + ig|A1|^2 + i*mu*B2
///   dB2 = [-gamma - i*omega2] B2 + ig|A2|^2 + i*mu*B1
MeanState mean_field_rhs(const SystemParams& params, const MeanState& state);

/// The 8x8 drift matrix S(t) of the linearized fluctuation dynamics
/// du = S u dt + noise, evaluated at the instantaneous mean state.
/// Row/column order follows the Quad ordering of state.hpp.
Mat8 build_drift_matrix(const SystemParams& params, const MeanState& state);

/// The constant diagonal noise matrix N of the covariance equation
/// dC/dt = S C + C S^T + N: optical entries kappa, mechanical entries
/// gamma*(2 n_b + 1). The closed form follows from the symmetrized
/// white-noise input correlations (per-quadrature intensity 1/2 for
/// vacuum, (2 n_b + 1)/2 for a thermal bath) entering through the
/// sqrt(2*kappa), sqrt(2*gamma) Langevin couplings.
Mat8 build_noise_matrix(const SystemParams& params);

/// Quadrature image of a mean state: (x1,y1,x2,y2,q1,p1,q2,p2) with
/// x = sqrt(2) Re<a>, y = sqrt(2) Im<a>, and likewise q,p for <b>.
Eigen::Matrix<double, 8, 1> mean_to_quadratures(const MeanState& state);
MeanState quadratures_to_mean(const Eigen::Matrix<double, 8, 1>& v);

/// Mean-field flow expressed over the quadrature vector; its Jacobian
/// equals the drift matrix S at the same state.
Eigen::Matrix<double, 8, 1> mean_field_rhs_quadratures(const SystemParams& params,
                                                       const Eigen::Matrix<double, 8, 1>& v);

} // namespace optosync
