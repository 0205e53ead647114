// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "raqmimo/channel.hpp"
#include "raqmimo/params.hpp"
#include "raqmimo/rng.hpp"

namespace raqmimo::estimation {

// Pilot phase observation Y = sqrt(rho) Phi D H P Q^H + W.
//   Y            : M x tau
//   Q            : tau x K, orthonormal columns
//   pilot_energy : diagonal of P, entries sqrt(tau * p^p_k)
struct PilotBlock {
    Eigen::MatrixXcd Y;
    Eigen::MatrixXcd Q;
    Eigen::VectorXd pilot_energy;
};

struct EstimateSet {
    Eigen::MatrixXcd H_hat;  // M x K
    Eigen::VectorXd mse;     // per-user trace MSE, Eq-level closed form
    Eigen::VectorXd nmse;    // per-user NMSE; NaN for pure-LoS users
};

// Deterministic orthonormal pilots: the first K columns of the normalized
// tau-point DFT matrix.
Eigen::MatrixXcd dft_pilots(int pilot_length, int num_users);

// Noise entries are drawn column by column (time index outer, sensor inner).
PilotBlock observe_pilots(const channel::ChannelRealization& ch, const SystemConfig& cfg,
                          rng::Stream& stream);

// y_k = Y q_k = sqrt(rho tau p^p_k) Phi D h_k + W q_k.
Eigen::VectorXcd despread(const PilotBlock& pb, int k);

// MMSE estimate from the de-spread observation. For a pure-LoS user the
// channel is deterministic and the estimate is sqrt(beta) hbar_k regardless
// of the observation.
Eigen::VectorXcd mmse_estimate(const Eigen::VectorXcd& y_k, const UserLink& user,
                               const SystemConfig& cfg);

// Full pilot phase for one realization: despread + MMSE per user.
EstimateSet estimate_all(const PilotBlock& pb, const SystemConfig& cfg);

// trace MSE_k = M * alpha_k * (1 - mu_k).
double mse_closed_form(const UserLink& user, const SystemConfig& cfg);

// NMSE_k = 1 - mu_k. Undefined for a pure-LoS user (zero NLoS variance).
double nmse_closed_form(const UserLink& user, const SystemConfig& cfg);

} // namespace raqmimo::estimation
