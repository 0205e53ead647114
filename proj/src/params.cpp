// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/params.hpp"

#include <cmath>

namespace raqmimo {

namespace {
constexpr double kBoltzmann = 1.380649e-23; // J/K

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
} // namespace

FrontEnd::FrontEnd(double rho_, std::complex<double> phi_, double sigma2_)
    : rho(rho_), phi(phi_), sigma2(sigma2_) {
    require(finite_positive(rho), Err::invalid_parameter, "front end: rho must be finite and > 0");
    require(finite_positive(sigma2), Err::invalid_parameter,
            "front end: sigma2 must be finite and > 0");
    const double mag = std::abs(phi);
    require(std::isfinite(mag) && mag > 0.0 && mag <= 1.0 + 1e-12, Err::invalid_parameter,
            "front end: |phi| must lie in (0, 1]");
    require(finite_positive(normalized_noise()), Err::invalid_parameter,
            "front end: normalized noise must be finite and > 0");
}

FrontEnd rf_front_end(const RfFrontEndSpec& spec) {
    require(finite_positive(spec.wavelength), Err::invalid_parameter, "rf spec: wavelength <= 0");
    require(std::isfinite(spec.antenna_efficiency) && spec.antenna_efficiency > 0.0 &&
                spec.antenna_efficiency <= 1.0,
            Err::invalid_parameter, "rf spec: antenna efficiency must lie in (0, 1]");
    require(finite_positive(spec.antenna_gain), Err::invalid_parameter, "rf spec: antenna gain <= 0");
    require(finite_positive(spec.lna_gain), Err::invalid_parameter, "rf spec: LNA gain <= 0");
    require(finite_positive(spec.temperature), Err::invalid_parameter, "rf spec: temperature <= 0");
    require(finite_positive(spec.bandwidth), Err::invalid_parameter, "rf spec: bandwidth <= 0");
    require(std::isfinite(spec.noise_factor) && spec.noise_factor >= 1.0, Err::invalid_parameter,
            "rf spec: noise factor must be >= 1");

    const double a_iso = spec.wavelength * spec.wavelength / (4.0 * M_PI);
    const double rho = a_iso * spec.antenna_efficiency * spec.antenna_gain * spec.lna_gain;
    // 10lg(kB*T0) + 10lg(B) + 10lg(F) + G_lna[dB], folded back to linear watts.
    const double sigma2 = kBoltzmann * spec.temperature * spec.bandwidth * spec.noise_factor *
                          spec.lna_gain;
    return FrontEnd(rho, std::complex<double>(1.0, 0.0), sigma2);
}

UserLink::UserLink(double beta_, double rician_, double elevation_, double azimuth_,
                   double pilot_power_, double data_power_)
    : beta(beta_), rician(rician_), elevation(elevation_), azimuth(azimuth_),
      pilot_power(pilot_power_), data_power(data_power_) {
    require(finite_positive(beta), Err::invalid_parameter, "user: beta must be finite and > 0");
    require(!std::isnan(rician) && rician >= 0.0, Err::invalid_parameter,
            "user: rician factor must be >= 0 (or +inf)");
    require(std::isfinite(elevation) && std::isfinite(azimuth), Err::invalid_parameter,
            "user: angles must be finite");
    require(std::isfinite(pilot_power) && pilot_power >= 0.0, Err::invalid_parameter,
            "user: pilot power must be >= 0");
    require(std::isfinite(data_power) && data_power >= 0.0, Err::invalid_parameter,
            "user: data power must be >= 0");
}

double UserLink::alpha() const {
    if (is_los()) return 0.0;
    return beta / (rician + 1.0);
}

double UserLink::delta_alpha() const {
    if (is_los()) return beta;
    return beta * rician / (rician + 1.0);
}

double UserLink::mu(const FrontEnd& fe, int pilot_length) const {
    require(pilot_length >= 1, Err::invalid_parameter, "mu: pilot length must be >= 1");
    const double signal = fe.rho * pilot_length * pilot_power * alpha() * fe.phi_sq();
    return signal / (signal + fe.sigma2);
}

SystemConfig::SystemConfig(int num_sensors_, std::vector<UserLink> users_, int pilot_length_,
                           int coherence_, double element_spacing_, double lo_arrival_,
                           FrontEnd front_end_, std::optional<FrontEnd> rf_baseline_)
    : num_sensors(num_sensors_), users(std::move(users_)), pilot_length(pilot_length_),
      coherence(coherence_), element_spacing(element_spacing_), lo_arrival(lo_arrival_),
      front_end(front_end_), rf_baseline(std::move(rf_baseline_)) {
    require(num_sensors >= 1, Err::config, "config: number of sensors must be >= 1");
    require(!users.empty(), Err::config, "config: at least one user required");
    require(pilot_length >= num_users(), Err::config,
            "config: pilot length must be >= number of users (orthogonal pilots)");
    require(coherence > pilot_length, Err::config,
            "config: coherence block must exceed the pilot length");
    require(finite_positive(element_spacing), Err::config,
            "config: element spacing must be finite and > 0");
    require(std::isfinite(lo_arrival), Err::config, "config: LO arrival angle must be finite");
}

const FrontEnd& SystemConfig::rf() const {
    require(rf_baseline.has_value(), Err::config, "config: no RF baseline front end configured");
    return *rf_baseline;
}

double alpha(const UserLink& user) { return user.alpha(); }

double mu(const UserLink& user, const FrontEnd& fe, int pilot_length) {
    return user.mu(fe, pilot_length);
}

} // namespace raqmimo
