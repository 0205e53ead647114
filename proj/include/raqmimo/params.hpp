// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "raqmimo/error.hpp"

namespace raqmimo {

// Equivalent-baseband description of a receive front end. Every bound in
// this library sees the front end only through these three numbers; the
// single derived quantity that matters downstream is the normalized noise
// background sigma2 / (rho * |phi|^2).
struct FrontEnd {
    double rho;                // effective receive gain, linear
    std::complex<double> phi;  // phase factor, 0 < |phi| <= 1
    double sigma2;             // noise power, watts

    FrontEnd(double rho_, std::complex<double> phi_, double sigma2_);

    double phi_sq() const { return std::norm(phi); }
    double normalized_noise() const { return sigma2 / (rho * std::norm(phi)); }
};

// Conventional RF receive chain, reduced to the same triplet by
// rf_front_end(). All fields are linear units.
struct RfFrontEndSpec {
    double wavelength;          // meters
    double antenna_efficiency;  // in (0, 1]
    double antenna_gain;        // linear
    double lna_gain;            // linear
    double temperature;         // kelvin
    double bandwidth;           // hertz
    double noise_factor;        // linear, >= 1
};

// phi = 1, rho = (lambda^2 / 4pi) * eta0 * G_ant * G_lna,
// sigma2 = k_B * T0 * B * F * G_lna.
FrontEnd rf_front_end(const RfFrontEndSpec& spec);

struct UserLink {
    double beta;         // large-scale fading, linear
    double rician;       // Rician factor delta >= 0; +inf flags a pure-LoS link
    double elevation;    // radians
    double azimuth;      // radians
    double pilot_power;  // watts
    double data_power;   // watts

    UserLink(double beta_, double rician_, double elevation_, double azimuth_,
             double pilot_power_, double data_power_);

    bool is_los() const { return std::isinf(rician); }

    // NLoS variance beta / (delta + 1); exactly 0 for a pure-LoS link.
    double alpha() const;

    // LoS power delta * beta / (delta + 1); exactly beta for a pure-LoS link.
    double delta_alpha() const;

    // Channel-estimation gain in [0, 1).
    double mu(const FrontEnd& fe, int pilot_length) const;
};

class SystemConfig {
public:
    SystemConfig(int num_sensors, std::vector<UserLink> users, int pilot_length,
                 int coherence, double element_spacing, double lo_arrival,
                 FrontEnd front_end, std::optional<FrontEnd> rf_baseline = std::nullopt);

    int num_sensors;         // M
    std::vector<UserLink> users;
    int pilot_length;        // tau >= K
    int coherence;           // T > tau
    double element_spacing;  // d / lambda
    double lo_arrival;       // LO angle of arrival, radians
    FrontEnd front_end;
    std::optional<FrontEnd> rf_baseline;

    int num_users() const { return static_cast<int>(users.size()); }
    double prefactor() const {
        return static_cast<double>(coherence - pilot_length) / coherence;
    }
    const FrontEnd& rf() const;
};

double alpha(const UserLink& user);
double mu(const UserLink& user, const FrontEnd& fe, int pilot_length);

} // namespace raqmimo
