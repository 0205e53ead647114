// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace raqmimo::rng {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel Random Numbers: As Easy as 1, 2, 3", SC'11). One block maps a
// 128-bit counter and 64-bit key onto four 32-bit outputs, so any
// (seed, stream, block) triple can be evaluated independently and the same
// streams can be reproduced from another language.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// A sequential view of one Philox stream. Streams are identified by
// (seed, stream_id); within a stream the block counter advances as values
// are consumed. Each Monte Carlo trial owns the stream (seed, trial_index).
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on (0, 1]; never returns 0 so it is safe under log().
    double next_unit();

    // Standard normal via Box-Muller; consumes exactly one uniform pair per
    // two variates, keeping the draw count independent of the values drawn.
    double next_normal();

    // CN(0,1): two independent real normals scaled by 1/sqrt(2).
    std::complex<double> next_cnormal();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace raqmimo::rng
