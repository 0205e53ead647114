// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "raqmimo/rng.hpp"

namespace raqmimo::mc {

// Trial i always consumes the stream (master_seed, i), so results depend only
// on the plan, never on scheduling. Chunks are the canonical reduction units:
// partial statistics are accumulated per chunk (trials in ascending order)
// and merged in ascending chunk order, which makes the output bit-identical
// for any worker count.
struct TrialPlan {
    std::uint64_t master_seed = 0;
    std::int64_t trials = 1;
    std::int64_t chunk_size = 1024;
    int workers = 1;
};

// Welford-style streaming moments for a fixed-length vector of tracked
// scalars.
class RunningStats {
public:
    RunningStats() = default;
    explicit RunningStats(int dim);

    void add(std::span<const double> x);
    void merge(const RunningStats& other);

    std::int64_t count() const { return count_; }
    int dim() const { return static_cast<int>(mean_.size()); }
    double mean(int i) const { return mean_[i]; }
    double sum(int i) const { return mean_[i] * static_cast<double>(count_); }
    // Sample variance (n-1 normalization) and population variance (n).
    double variance(int i) const;
    double population_variance(int i) const;
    double stderr_mean(int i) const;

private:
    std::int64_t count_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

struct TrialResult {
    RunningStats total;
    std::vector<RunningStats> chunks; // canonical order; basis for jackknife errors
};

using TrialEvaluator =
    std::function<void(std::int64_t trial, rng::Stream& stream, std::span<double> out)>;

// Runs plan.trials evaluations of `eval`, each writing `dim` tracked scalars.
// An evaluator failure aborts the run; the reported trial index is the
// smallest among the failures observed before workers drained.
TrialResult run_trials(const TrialPlan& plan, int dim, const TrialEvaluator& eval);

} // namespace raqmimo::mc
