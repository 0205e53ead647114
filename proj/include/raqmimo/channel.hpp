// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "raqmimo/params.hpp"
#include "raqmimo/rng.hpp"

namespace raqmimo::channel {

// One Monte Carlo draw of the uplink channel.
//   H   : M x K, columns h_k
//   los : M x K, columns sqrt(delta_k alpha_k) * hbar_k (the deterministic part)
//   D   : diagonal of the LO array-phase matrix, |D_m| = 1
struct ChannelRealization {
    Eigen::MatrixXcd H;
    Eigen::MatrixXcd los;
    Eigen::VectorXcd D;
};

// Unit-modulus array response; element m is exp(-j*2pi*m*spacing*sin(theta_e)*cos(phi_az)).
Eigen::VectorXcd los_steering(double theta_e, double phi_az, int num_sensors, double spacing);

// Diagonal entries of D: exp(-j*2pi*m*spacing*sin(vartheta)).
Eigen::VectorXcd lo_phase_matrix(double vartheta, int num_sensors, double spacing);

// Free-space loss 92.45 + 20lg(d_km) + 20lg(f_GHz), in dB.
double pathloss_db(double distance_km, double carrier_ghz);

// Linear large-scale fading from a path loss in dB.
inline double beta_from_pathloss_db(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

// h_k = sqrt(beta delta/(delta+1)) hbar_k + sqrt(beta/(delta+1)) htilde_k,
// htilde i.i.d. CN(0,1). A pure-LoS user yields exactly sqrt(beta) hbar_k and
// consumes no randomness. NLoS entries are drawn column by column, row-major
// within a column, so the stream layout is well defined.
ChannelRealization draw_channel(const SystemConfig& cfg, rng::Stream& stream);

} // namespace raqmimo::channel
