// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "raqmimo/detection.hpp"
#include "raqmimo/params.hpp"

namespace raqmimo::bounds {

using detection::Detector;

enum class FrontEndSelect { raq, rf };
enum class Regime { high, low };
enum class ChannelKind { rayleigh, los, satellite };
enum class ScalingVerdict { vanishing, non_vanishing, diverging };

// Everything the closed forms consume, precomputed per user. The sensor count
// is carried as a real number so the link-budget solvers can treat it as a
// continuous knob; steering-vector inner products are evaluated through the
// Dirichlet-kernel closed form, which coincides with the explicit sum at
// integer M.
struct BoundInputs {
    double m_sensors = 0.0;
    int k_users = 0;
    double prefactor = 1.0;
    FrontEnd fe{1.0, 1.0, 1.0};

    Eigen::VectorXd alpha;        // NLoS variance
    Eigen::VectorXd beta;         // large-scale fading
    Eigen::VectorXd delta;        // Rician factor (may be +inf)
    Eigen::VectorXd delta_alpha;  // LoS power, exact at the +inf flag
    Eigen::VectorXd mu;           // estimation gain for the selected front end
    Eigen::VectorXd nmse;         // 1 - mu, computed directly (no cancellation)
    Eigen::VectorXd pilot_energy; // tau * p^p_k
    Eigen::VectorXd data_power;   // p^d_k
    Eigen::VectorXd spatial_freq; // spacing * sin(elev) * cos(azim)
    std::vector<bool> los_flag;

    Eigen::MatrixXcd los_gram;  // hbar_k^H hbar_k'
    Eigen::MatrixXcd hbar_gram; // sqrt(da_k da_k') * los_gram

    static BoundInputs from(const SystemConfig& cfg,
                            FrontEndSelect which = FrontEndSelect::raq);

    // Power-scaling variant: p^d = E / M^eps_d, tau p^p = E / M^eps_p at the
    // given (possibly fractional) sensor count.
    static BoundInputs from_scaled(const SystemConfig& cfg, FrontEndSelect which,
                                   double m_sensors, double energy, double eps_d,
                                   double eps_p);

    BoundInputs with_sensors(double m_sensors) const;

    // Both data power and pilot energy divided by `factor`, estimation gains
    // recomputed; the knob the power-reduction analysis turns.
    BoundInputs with_power_scale(double factor) const;

    // Estimation gains forced to 1 (zero estimation loss).
    BoundInputs with_perfect_csi() const;

    bool all_rayleigh() const;
    bool all_los() const;
};

// General SINR bounds. A +inf Rician flag on user k switches that
// user's expression to its analytic LoS limit, so no large-delta arithmetic
// ever happens.
double sinr_mrc(const BoundInputs& bi, int k);
double sinr_zf(const BoundInputs& bi, int k);

// Rayleigh factorizations (all users must have delta = 0).
double sinr_mrc_rayleigh(const BoundInputs& bi, int k);
double sinr_zf_rayleigh(const BoundInputs& bi, int k);
double delta_ri(const BoundInputs& bi);

// Pure-LoS limits (all users must carry the +inf flag).
double sinr_mrc_los(const BoundInputs& bi, int k);
double sinr_zf_los(const BoundInputs& bi, int k);

double rate_from_sinr(const BoundInputs& bi, double sinr);

struct RateBound {
    Eigen::VectorXd sinr;
    Eigen::VectorXd rate;
    double prefactor;
};

RateBound rate_bound(const SystemConfig& cfg, Detector kind,
                     FrontEndSelect which = FrontEndSelect::raq, bool perfect_csi = false);

// Same general formulas evaluated with the configured RF baseline.
double rf_bound(const SystemConfig& cfg, Detector kind, int k);

// Multiplicative reconstruction of the RAQ SINR from the RF SINR:
// sinr_rf * factors[0] * factors[1] = sinr_raq.
struct GainDecomposition {
    double sinr_rf;
    double sinr_raq;
    std::vector<double> factors;
};
GainDecomposition gain_decomposition(const SystemConfig& cfg, Detector kind, int k);

// Closed-form high/low-power rate deltas between the RAQ and RF front ends.
// Returned as the difference of the two asymptotic rate expressions, so the
// delta is exactly zero for identical front ends. Unsupported
// regime/channel combinations raise a not-derived error.
double rate_delta_asymptotic(const SystemConfig& cfg, Detector kind, Regime regime,
                             ChannelKind channel, int k);

// Power-scaling classification with p^d = E/M^eps_d and
// tau p^p = E/M^eps_p. The stated non-vanishing limits assume the pilot
// energy per sensor also shrinks (eps_p > 0) so the estimation gain decays.
struct ScalingLimit {
    ScalingVerdict verdict;
    double sinr_limit; // NaN unless non-vanishing
};
ScalingLimit power_scaling_limit(const BoundInputs& bi, int k, double energy, double eps_d,
                                 double eps_p);

// E{(Hhat^H Hhat)^{-1}} = (Psi + Hbar^H Hbar / M)^{-1} / (M - K) under the
// central-Wishart moment matching.
Eigen::MatrixXcd wishart_inverse_mean(const BoundInputs& bi);

} // namespace raqmimo::bounds
