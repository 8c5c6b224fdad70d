#include "optosync/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace optosync {

namespace {

double wrap_increment(double d) {
    return d - 2.0 * M_PI * std::round(d / (2.0 * M_PI));
}

[[noreturn]] void throw_phase_undefined(double t) {
    char buf[80];
    if (std::isnan(t))
        std::snprintf(buf, sizeof(buf), "phase undefined (amplitude below floor)");
    else
        std::snprintf(buf, sizeof(buf), "phase undefined at t=%.6g (amplitude below floor)", t);
    throw std::domain_error(buf);
}

double min_amplitude(const MeanState& s) {
    return std::min(std::min(std::abs(s.A1), std::abs(s.A2)),
                    std::min(std::abs(s.B1), std::abs(s.B2)));
}

} // namespace

PhaseSeries phase_error(const Trajectory& traj, double amplitude_floor) {
    PhaseSeries out;
    const size_t n = traj.times.size();
    out.times = traj.times;
    out.theta.resize(n);
    out.phi1.resize(n);
    out.phi2.resize(n);
    double prev1 = 0.0, prev2 = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const MeanState& s = traj.means[k];
        if (std::abs(s.B1) <= amplitude_floor || std::abs(s.B2) <= amplitude_floor)
            throw_phase_undefined(traj.times[k]);
        const double raw1 = std::atan2(s.B1.imag(), s.B1.real());
        const double raw2 = std::atan2(s.B2.imag(), s.B2.real());
        if (k == 0) {
            out.phi1[0] = raw1;
            out.phi2[0] = raw2;
        } else {
            out.phi1[k] = out.phi1[k - 1] + wrap_increment(raw1 - prev1);
            out.phi2[k] = out.phi2[k - 1] + wrap_increment(raw2 - prev2);
        }
        prev1 = raw1;
        prev2 = raw2;
        out.theta[k] = out.phi1[k] - out.phi2[k];
    }
    return out;
}

double sc_prime(const CovState& cov) {
    const Mat8& c = cov.c;
    const double denom = 0.5 * (c(Q1, Q1) + c(Q2, Q2) - 2.0 * c(Q1, Q2)) +
                         0.5 * (c(P1, P1) + c(P2, P2) - 2.0 * c(P1, P2));
    if (!(denom > 0.0)) throw std::runtime_error("sc_prime: unphysical covariance");
    return 1.0 / denom;
}

double mean_q_minus(const MeanState& s) {
    const double r2 = std::sqrt(2.0);
    return (r2 * s.B1.real() - r2 * s.B2.real()) / r2;
}

double mean_p_minus(const MeanState& s) {
    const double r2 = std::sqrt(2.0);
    return (r2 * s.B1.imag() - r2 * s.B2.imag()) / r2;
}

CovState rotate_covariance(const CovState& cov, const MeanState& mean, double amplitude_floor) {
    if (min_amplitude(mean) <= amplitude_floor) throw_phase_undefined(std::nan(""));
    const std::array<double, 4> phases{std::arg(mean.A1), std::arg(mean.A2), std::arg(mean.B1),
                                       std::arg(mean.B2)};
    Mat8 r = Mat8::Zero();
    for (int m = 0; m < 4; ++m) {
        const double cphi = std::cos(phases[m]);
        const double sphi = std::sin(phases[m]);
        r(2 * m, 2 * m) = cphi;
        r(2 * m, 2 * m + 1) = sphi;
        r(2 * m + 1, 2 * m) = -sphi;
        r(2 * m + 1, 2 * m + 1) = cphi;
    }
    const Mat8 m = r * cov.c * r.transpose();
    CovState out;
    out.c = 0.5 * (m + m.transpose());  // re-symmetrize rounding residue
    return out;
}

double sp_prime(const CovState& cov_rot, double prefactor) {
    const Mat8& c = cov_rot.c;
    const double inner = 0.5 * (c(P1, P1) + c(P2, P2) - 2.0 * c(P1, P2));
    if (!(inner > 0.0)) throw std::runtime_error("sp_prime: unphysical covariance");
    return prefactor / inner;
}

double time_average(std::span<const double> times, std::span<const double> values, double T,
                    double t_skip) {
    if (times.size() != values.size())
        throw std::invalid_argument("time_average: times/values length mismatch");
    if (!(t_skip >= 0.0) || !(t_skip < T))
        throw std::invalid_argument("time_average: need 0 <= t_skip < T");
    double integral = 0.0;
    double span_start = std::nan(""), span_end = std::nan("");
    for (size_t k = 0; k + 1 < times.size(); ++k) {
        const double t0 = times[k], t1 = times[k + 1];
        if (t0 < t_skip || t1 > T) continue;
        integral += 0.5 * (values[k] + values[k + 1]) * (t1 - t0);
        if (std::isnan(span_start)) span_start = t0;
        span_end = t1;
    }
    if (std::isnan(span_start) || !(span_end > span_start))
        throw std::invalid_argument("time_average: empty averaging window");
    return integral / (span_end - span_start);
}

MeasureSeries compute_measures(const Trajectory& traj, const MeasureOptions& opts) {
    if (!traj.has_covariance())
        throw std::invalid_argument("compute_measures: trajectory carries no covariance");
    const size_t n = traj.times.size();

    // The rotated frame needs all four mean phases; skip leading samples
    // where a cavity amplitude is still exactly zero.
    size_t k0 = 0;
    while (k0 < n && min_amplitude(traj.means[k0]) <= opts.amplitude_floor) ++k0;
    if (k0 == n)
        throw std::domain_error("compute_measures: no sample with all amplitudes above floor");

    MeasureSeries out;
    out.times.reserve(n - k0);
    double prev1 = 0.0, prev2 = 0.0, phi1 = 0.0, phi2 = 0.0;
    for (size_t k = k0; k < n; ++k) {
        const MeanState& s = traj.means[k];
        const double t = traj.times[k];
        if (min_amplitude(s) <= opts.amplitude_floor) throw_phase_undefined(t);
        const double raw1 = std::atan2(s.B1.imag(), s.B1.real());
        const double raw2 = std::atan2(s.B2.imag(), s.B2.real());
        if (k == k0) {
            phi1 = raw1;
            phi2 = raw2;
        } else {
            phi1 += wrap_increment(raw1 - prev1);
            phi2 += wrap_increment(raw2 - prev2);
        }
        prev1 = raw1;
        prev2 = raw2;

        const CovState rotated = rotate_covariance(traj.covs[k], s, opts.amplitude_floor);
        out.times.push_back(t);
        out.theta.push_back(phi1 - phi2);
        out.sc_prime.push_back(sc_prime(traj.covs[k]));
        out.sp_prime.push_back(sp_prime(rotated, opts.sp_prefactor));
        out.mean_q_minus.push_back(mean_q_minus(s));
        out.mean_p_minus.push_back(mean_p_minus(s));
    }
    return out;
}

} // namespace optosync
