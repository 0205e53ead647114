// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/channel.hpp"

#include <cmath>

namespace raqmimo::channel {

namespace {

Eigen::VectorXcd unit_phase_ramp(double spatial_freq, int num_sensors) {
    Eigen::VectorXcd v(num_sensors);
    for (int m = 0; m < num_sensors; ++m) {
        v(m) = std::polar(1.0, -2.0 * M_PI * m * spatial_freq);
    }
    return v;
}

} // namespace

Eigen::VectorXcd los_steering(double theta_e, double phi_az, int num_sensors, double spacing) {
    require(num_sensors >= 1, Err::invalid_parameter, "los_steering: need at least one sensor");
    return unit_phase_ramp(spacing * std::sin(theta_e) * std::cos(phi_az), num_sensors);
}

Eigen::VectorXcd lo_phase_matrix(double vartheta, int num_sensors, double spacing) {
    require(num_sensors >= 1, Err::invalid_parameter, "lo_phase_matrix: need at least one sensor");
    return unit_phase_ramp(spacing * std::sin(vartheta), num_sensors);
}

double pathloss_db(double distance_km, double carrier_ghz) {
    require(std::isfinite(distance_km) && distance_km > 0.0, Err::invalid_parameter,
            "pathloss_db: distance must be > 0");
    require(std::isfinite(carrier_ghz) && carrier_ghz > 0.0, Err::invalid_parameter,
            "pathloss_db: carrier frequency must be > 0");
    return 92.45 + 20.0 * std::log10(distance_km) + 20.0 * std::log10(carrier_ghz);
}

ChannelRealization draw_channel(const SystemConfig& cfg, rng::Stream& stream) {
    const int m_sensors = cfg.num_sensors;
    const int k_users = cfg.num_users();

    ChannelRealization out;
    out.H.resize(m_sensors, k_users);
    out.los.resize(m_sensors, k_users);
    out.D = lo_phase_matrix(cfg.lo_arrival, m_sensors, cfg.element_spacing);

    for (int k = 0; k < k_users; ++k) {
        const UserLink& user = cfg.users[k];
        const Eigen::VectorXcd hbar =
            los_steering(user.elevation, user.azimuth, m_sensors, cfg.element_spacing);
        const double los_scale = std::sqrt(user.delta_alpha());
        out.los.col(k) = los_scale * hbar;
        if (user.is_los()) {
            out.H.col(k) = out.los.col(k);
            continue;
        }
        const double nlos_scale = std::sqrt(user.alpha());
        for (int m = 0; m < m_sensors; ++m) {
            out.H(m, k) = out.los(m, k) + nlos_scale * stream.next_cnormal();
        }
    }
    return out;
}

} // namespace raqmimo::channel
