#pragma once

#include <stdexcept>
#include <string>

namespace optosync {

/// Physical constants of the two coupled optomechanical systems.
///
/// All quantities are dimensionless, expressed in units of the first
/// mechanical frequency (omega1 = 1 fixes the frequency unit, hbar = 1).
/// mu and lambda are the two inter-system couplings acting as switches:
/// mu couples the mechanical modes (phonon tunnel), lambda the optical
/// modes (fiber).
struct SystemParams {
    double omega1 = 1.0;    ///< mechanical frequency, system 1 (the unit)
    double omega2 = 1.005;  ///< mechanical frequency, system 2
    double delta1 = 1.0;    ///< optical detuning, system 1
    double delta2 = 1.005;  ///< optical detuning, system 2
    double g = 0.004;       ///< optomechanical coupling constant
    double E = 10.5;        ///< laser drive amplitude (calibrated default)
    double kappa = 0.15;    ///< optical damping rate
    double gamma = 0.005;   ///< mechanical damping rate
    double mu = 0.0;        ///< phonon-tunnel intensity (switch K1)
    double lambda = 0.0;    ///< fiber coupling constant (switch K2)
    double n_b = 0.0;       ///< thermal phonon occupation of the mechanical baths

    /// Throws std::invalid_argument naming the offending field if any
    /// invariant is violated (non-negative rates, omega1 > 0, finiteness).
    void validate() const;

    SystemParams with_couplings(double mu_val, double lambda_val) const {
        SystemParams p = *this;
        p.mu = mu_val;
        p.lambda = lambda_val;
        return p;
    }
};

} // namespace optosync
