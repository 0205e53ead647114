// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <optional>
#include <string>

#include "raqmimo/params.hpp"
#include "raqmimo/raqr.hpp"

namespace raqmimo::io {

// A SystemConfig plus the scenario metadata the CLI sweeps need (carrier for
// the distance axis, the phase pair behind the configured Phi).
struct Scenario {
    SystemConfig cfg;
    std::optional<double> carrier_ghz;
    double user_gain_db = 0.0;
    raqr::PhaseConfig raq_phase{};
};

// Key/value sections; keys carry explicit unit suffixes (_db, _dbm, _dbw,
// _deg) that are folded to linear/SI at parse time. See the README for the
// field list.
Scenario parse_scenario(std::istream& in, const std::string& origin);
Scenario load_scenario(const std::string& path);

// Unit helpers shared with the CLI.
double db_to_linear(double db);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

} // namespace raqmimo::io
