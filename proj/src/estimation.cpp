// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/estimation.hpp"

#include <cmath>
#include <limits>

namespace raqmimo::estimation {

Eigen::MatrixXcd dft_pilots(int pilot_length, int num_users) {
    require(pilot_length >= num_users, Err::invalid_parameter,
            "dft_pilots: pilot length must be >= number of users");
    require(num_users >= 1, Err::invalid_parameter, "dft_pilots: need at least one user");
    Eigen::MatrixXcd q(pilot_length, num_users);
    const double norm = 1.0 / std::sqrt(static_cast<double>(pilot_length));
    for (int k = 0; k < num_users; ++k) {
        for (int t = 0; t < pilot_length; ++t) {
            // Reduce t*k modulo tau first so large indices lose no precision.
            const long idx = (static_cast<long>(t) * k) % pilot_length;
            q(t, k) = std::polar(norm, -2.0 * M_PI * static_cast<double>(idx) / pilot_length);
        }
    }
    return q;
}

PilotBlock observe_pilots(const channel::ChannelRealization& ch, const SystemConfig& cfg,
                          rng::Stream& stream) {
    const int m_sensors = cfg.num_sensors;
    const int k_users = cfg.num_users();
    const int tau = cfg.pilot_length;
    require(tau >= k_users, Err::invalid_parameter,
            "observe_pilots: pilot length must be >= number of users");

    PilotBlock pb;
    pb.Q = dft_pilots(tau, k_users);
    pb.pilot_energy.resize(k_users);
    for (int k = 0; k < k_users; ++k) {
        pb.pilot_energy(k) = std::sqrt(tau * cfg.users[k].pilot_power);
    }

    const std::complex<double> gain = std::sqrt(cfg.front_end.rho) * cfg.front_end.phi;
    const double noise_scale = std::sqrt(cfg.front_end.sigma2);
    pb.Y = gain * (ch.D.asDiagonal() * ch.H) * pb.pilot_energy.asDiagonal() * pb.Q.adjoint();
    for (int t = 0; t < tau; ++t) {
        for (int m = 0; m < m_sensors; ++m) {
            pb.Y(m, t) += noise_scale * stream.next_cnormal();
        }
    }
    return pb;
}

Eigen::VectorXcd despread(const PilotBlock& pb, int k) {
    require(k >= 0 && k < pb.Q.cols(), Err::invalid_parameter, "despread: user index out of range");
    return pb.Y * pb.Q.col(k);
}

Eigen::VectorXcd mmse_estimate(const Eigen::VectorXcd& y_k, const UserLink& user,
                               const SystemConfig& cfg) {
    const int m_sensors = cfg.num_sensors;
    require(y_k.size() == m_sensors, Err::invalid_parameter,
            "mmse_estimate: observation size mismatch");
    const Eigen::VectorXcd hbar =
        channel::los_steering(user.elevation, user.azimuth, m_sensors, cfg.element_spacing);
    if (user.is_los()) {
        return std::sqrt(user.beta) * hbar;
    }

    const FrontEnd& fe = cfg.front_end;
    const double a = user.alpha();
    const double energy = cfg.pilot_length * user.pilot_power; // tau * p^p_k
    const double denom = fe.rho * energy * a * fe.phi_sq() + fe.sigma2;
    const Eigen::VectorXcd d =
        channel::lo_phase_matrix(cfg.lo_arrival, m_sensors, cfg.element_spacing);

    const Eigen::VectorXcd prior_mean = std::sqrt(user.delta_alpha()) * hbar;
    const Eigen::VectorXcd y_mean =
        (std::sqrt(fe.rho * energy) * fe.phi) * d.cwiseProduct(prior_mean);
    const std::complex<double> scale = std::sqrt(fe.rho * energy) * a * std::conj(fe.phi) / denom;
    return prior_mean + scale * d.conjugate().cwiseProduct(y_k - y_mean);
}

EstimateSet estimate_all(const PilotBlock& pb, const SystemConfig& cfg) {
    const int k_users = cfg.num_users();
    EstimateSet out;
    out.H_hat.resize(cfg.num_sensors, k_users);
    out.mse.resize(k_users);
    out.nmse.resize(k_users);
    for (int k = 0; k < k_users; ++k) {
        out.H_hat.col(k) = mmse_estimate(despread(pb, k), cfg.users[k], cfg);
        out.mse(k) = mse_closed_form(cfg.users[k], cfg);
        out.nmse(k) = cfg.users[k].is_los() ? std::numeric_limits<double>::quiet_NaN()
                                            : nmse_closed_form(cfg.users[k], cfg);
    }
    return out;
}

double mse_closed_form(const UserLink& user, const SystemConfig& cfg) {
    if (user.is_los()) return 0.0;
    const double a = user.alpha();
    return cfg.num_sensors * a * (1.0 - user.mu(cfg.front_end, cfg.pilot_length));
}

double nmse_closed_form(const UserLink& user, const SystemConfig& cfg) {
    require(!user.is_los(), Err::undefined_normalization,
            "nmse_closed_form: NMSE undefined for a pure-LoS user (zero NLoS variance)");
    return 1.0 - user.mu(cfg.front_end, cfg.pilot_length);
}

} // namespace raqmimo::estimation
