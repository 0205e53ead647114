// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace raqmimo {

enum class Err {
    invalid_parameter,
    config,
    singular_estimate,
    degenerate_phase,
    insufficient_antennas,
    degenerate_geometry,
    not_derived,
    undefined_normalization,
    invalid_specialization,
    trial_failure,
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Err code() const noexcept { return code_; }

private:
    Err code_;
};

inline void require(bool cond, Err code, const std::string& msg) {
    if (!cond) throw Error(code, msg);
}

} // namespace raqmimo
