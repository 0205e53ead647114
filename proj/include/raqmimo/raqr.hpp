// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>

namespace raqmimo::raqr {

// LO phase at the first vapor cell plus the superposition-induced phase.
// Together they fix the front-end phase factor
//   Phi = (e^{-j(theta_l - varphi)} + e^{-j(theta_l + varphi)}) / 2
//       = e^{-j theta_l} cos(varphi),
// so |Phi| = |cos(varphi)| <= 1.
struct PhaseConfig {
    double theta_l = 0.0;  // radians
    double varphi = 0.0;   // radians
};

std::complex<double> phase_shift(const PhaseConfig& pc);

// Grid search for the candidate maximizing |Phi|; ties resolve to the lowest
// index. Throws on an empty grid.
const PhaseConfig& optimal_phi(std::span<const PhaseConfig> candidates);

struct RabiResult {
    double omega_rad_s;        // RF Rabi angular frequency nu*E/hbar
    double peak_separation_hz; // ATS peak separation f = omega / 2pi
};

// dipole_moment in C*m, field_amplitude in V/m. A zero field is allowed and
// gives a zero Rabi frequency.
RabiResult rabi_frequency(double dipole_moment, double field_amplitude);

} // namespace raqmimo::raqr
