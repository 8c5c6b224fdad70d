#pragma once

#include "optosync/integrate.hpp"

#include <span>
#include <vector>

namespace optosync {

struct MeasureOptions {
    double sp_prefactor = 0.5;      ///< constant prefactor of the phase measure
    double t_skip = 0.0;            ///< transient cut for time averages
    double amplitude_floor = 1e-12; ///< |amplitude| below which arg() is rejected
    double tol_phys = 1e-9;         ///< physicality tolerance for covariance checks
};

/// Unwrapped mechanical phases and their difference theta = phi1 - phi2.
/// theta carries no 1/sqrt(2) factor.
struct PhaseSeries {
    std::vector<double> times;
    std::vector<double> theta;
    std::vector<double> phi1;
    std::vector<double> phi2;
};

/// Second-order synchronization measures along a trajectory, together with
/// the first-order mechanical error means. Starts at the first sample where
/// every mode amplitude clears the floor (the rotated frame is undefined
/// before the cavities are populated).
struct MeasureSeries {
    std::vector<double> times;
    std::vector<double> theta;
    std::vector<double> sc_prime;
    std::vector<double> sp_prime;
    std::vector<double> mean_q_minus;
    std::vector<double> mean_p_minus;
};

/// Phase error of the mechanical oscillators: phi_j = atan2(Im B_j, Re B_j)
/// unwrapped along time, theta = phi1 - phi2. Throws std::domain_error
/// ("phase undefined at t=...") if |B_j| falls below the amplitude floor.
PhaseSeries phase_error(const Trajectory& traj, double amplitude_floor = 1e-12);

/// Complete-synchronization measure
///   S_c' = [ <dq_-^2> + <dp_-^2> ]^-1
/// with dq_- = (dq1 - dq2)/sqrt(2), dp_- likewise, read from the mechanical
/// covariance block. In (0, 1] for every physical covariance; throws
/// std::runtime_error("unphysical covariance") on a non-positive denominator.
double sc_prime(const CovState& cov);

/// First-order mechanical error means (q1-q2)/sqrt(2), (p1-p2)/sqrt(2),
/// computed from the mean state only.
double mean_q_minus(const MeanState& state);
double mean_p_minus(const MeanState& state);

/// Congruence C' = R C R^T where R rotates each mode's quadrature pair by
/// minus its instantaneous mean phase (arg A1, arg A2, arg B1, arg B2), the
/// quadrature realization of the mode-phase rotation. Preserves symmetry,
/// spectrum and physicality.
CovState rotate_covariance(const CovState& cov, const MeanState& mean,
                           double amplitude_floor = 1e-12);

/// Phase-synchronization measure on the rotated covariance:
///   S_p' = prefactor * [ (C'_66 + C'_88 - 2 C'_68) / 2 ]^-1
/// (1-based indices; the rotated mechanical momentum block).
double sp_prime(const CovState& cov_rot, double prefactor = 0.5);

/// Trapezoidal mean of (times, values) over [t_skip, T] intersected with
/// the sampled span. Throws std::invalid_argument on an empty window.
double time_average(std::span<const double> times, std::span<const double> values, double T,
                    double t_skip = 0.0);

/// All measures along a covariance-carrying trajectory.
MeasureSeries compute_measures(const Trajectory& traj, const MeasureOptions& opts = {});

} // namespace optosync
