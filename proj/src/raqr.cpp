// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/raqr.hpp"

#include <cmath>

#include "raqmimo/error.hpp"

namespace raqmimo::raqr {

namespace {
constexpr double kHbar = 1.054571817e-34; // J*s
} // namespace

std::complex<double> phase_shift(const PhaseConfig& pc) {
    return std::polar(1.0, -pc.theta_l) * std::cos(pc.varphi);
}

const PhaseConfig& optimal_phi(std::span<const PhaseConfig> candidates) {
    require(!candidates.empty(), Err::invalid_parameter, "optimal_phi: empty candidate grid");
    std::size_t best = 0;
    double best_mag = std::abs(phase_shift(candidates[0]));
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double mag = std::abs(phase_shift(candidates[i]));
        if (mag > best_mag) {
            best = i;
            best_mag = mag;
        }
    }
    return candidates[best];
}

RabiResult rabi_frequency(double dipole_moment, double field_amplitude) {
    require(std::isfinite(dipole_moment) && dipole_moment > 0.0, Err::invalid_parameter,
            "rabi_frequency: dipole moment must be > 0");
    require(std::isfinite(field_amplitude) && field_amplitude >= 0.0, Err::invalid_parameter,
            "rabi_frequency: field amplitude must be >= 0");
    const double omega = dipole_moment * field_amplitude / kHbar;
    return {omega, omega / (2.0 * M_PI)};
}

} // namespace raqmimo::raqr
