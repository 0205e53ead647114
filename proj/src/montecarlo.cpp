// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "raqmimo/error.hpp"

namespace raqmimo::mc {

RunningStats::RunningStats(int dim) : mean_(dim, 0.0), m2_(dim, 0.0) {
    require(dim >= 1, Err::invalid_parameter, "RunningStats: dimension must be >= 1");
}

void RunningStats::add(std::span<const double> x) {
    ++count_;
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double delta = x[i] - mean_[i];
        mean_[i] += delta / static_cast<double>(count_);
        m2_[i] += delta * (x[i] - mean_[i]);
    }
}

void RunningStats::merge(const RunningStats& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double delta = other.mean_[i] - mean_[i];
        mean_[i] += delta * nb / n;
        m2_[i] += other.m2_[i] + delta * delta * na * nb / n;
    }
    count_ += other.count_;
}

double RunningStats::variance(int i) const {
    if (count_ < 2) return 0.0;
    return m2_[i] / static_cast<double>(count_ - 1);
}

double RunningStats::population_variance(int i) const {
    if (count_ < 1) return 0.0;
    return m2_[i] / static_cast<double>(count_);
}

double RunningStats::stderr_mean(int i) const {
    if (count_ < 2) return 0.0;
    return std::sqrt(variance(i) / static_cast<double>(count_));
}

TrialResult run_trials(const TrialPlan& plan, int dim, const TrialEvaluator& eval) {
    require(plan.trials >= 1, Err::invalid_parameter, "run_trials: need at least one trial");
    require(plan.chunk_size >= 1, Err::invalid_parameter, "run_trials: chunk size must be >= 1");
    require(plan.workers >= 1, Err::invalid_parameter, "run_trials: need at least one worker");
    require(dim >= 1, Err::invalid_parameter, "run_trials: dimension must be >= 1");

    const std::int64_t n_chunks = (plan.trials + plan.chunk_size - 1) / plan.chunk_size;
    std::vector<RunningStats> chunks(n_chunks, RunningStats(dim));

    std::atomic<std::int64_t> next_chunk{0};
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;
    std::optional<std::int64_t> failed_trial;
    std::string failure_message;

    auto work = [&]() {
        std::vector<double> out(dim);
        for (;;) {
            const std::int64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks || failed.load()) break;
            const std::int64_t begin = c * plan.chunk_size;
            const std::int64_t end = std::min(begin + plan.chunk_size, plan.trials);
            for (std::int64_t t = begin; t < end; ++t) {
                try {
                    rng::Stream stream(plan.master_seed, static_cast<std::uint64_t>(t));
                    eval(t, stream, out);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failed_trial || t < *failed_trial) {
                        failed_trial = t;
                        failure_message = e.what();
                    }
                    failed.store(true);
                    return;
                }
                chunks[c].add(out);
            }
        }
    };

    const int workers = static_cast<int>(std::min<std::int64_t>(plan.workers, n_chunks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    if (failed.load()) {
        throw Error(Err::trial_failure, "trial " + std::to_string(*failed_trial) +
                                            " failed: " + failure_message);
    }

    TrialResult result;
    result.total = RunningStats(dim);
    for (const auto& c : chunks) result.total.merge(c);
    result.chunks = std::move(chunks);
    return result;
}

} // namespace raqmimo::mc
