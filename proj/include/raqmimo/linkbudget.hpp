// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "raqmimo/bounds.hpp"
#include "raqmimo/params.hpp"

namespace raqmimo::linkbudget {

using bounds::Detector;

enum class AntennaRegime { general, low_power_rayleigh };

struct BudgetReport {
    double power_reduction;              // linear
    double power_reduction_db;
    double range_extension;              // linear
    double antenna_reduction_general;    // linear
    double antenna_reduction_low_power;  // linear (low-power Rayleigh)
};

// Normalized-noise ratio (sigma2_rf/rho_rf) / (sigma2/(rho |phi|^2)); the
// factor by which user transmit power can drop at equal rate.
double power_reduction(const SystemConfig& cfg);

// sqrt of the power reduction under free-space square-law loss.
double range_extension(const SystemConfig& cfg);

double antenna_reduction(const SystemConfig& cfg, AntennaRegime regime);

BudgetReport budget_report(const SystemConfig& cfg);

// Equate-bounds verification: bisection on the closed-form bounds.
// solve_power_reduction finds the factor by which both
// pilot and data powers can shrink before the RAQ bound drops to the RF
// bound; solve_antenna_ratio finds M_rf / M_raq at equal bounds, treating the
// sensor count as a real number.
double solve_power_reduction(const SystemConfig& cfg, Detector kind, int k);
double solve_antenna_ratio(const SystemConfig& cfg, Detector kind, int k);

} // namespace raqmimo::linkbudget
