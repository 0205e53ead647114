// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "raqmimo/montecarlo.hpp"
#include "raqmimo/params.hpp"

namespace raqmimo::detection {

enum class Detector { mrc, zf };

const char* detector_name(Detector d);

struct Combiner {
    Eigen::MatrixXcd C; // M x K, column c_k per user
    Detector kind;
};

// c_k = Phi * D * hhat_k.
Combiner mrc_combiner(const Eigen::MatrixXcd& h_hat, const Eigen::VectorXcd& d_diag,
                      std::complex<double> phi);

// C = Phi D Hhat [(Phi D Hhat)^H Phi D Hhat]^{-1}; requires M > K, full column
// rank (condition number guard 1e12) and a nonzero phase factor.
Combiner zf_combiner(const Eigen::MatrixXcd& h_hat, const Eigen::VectorXcd& d_diag,
                     std::complex<double> phi);

struct RateReport {
    Eigen::VectorXd rate;        // per-user empirical rate, bits/s/Hz
    Eigen::VectorXd rate_stderr; // leave-one-chunk-out jackknife error
    Eigen::VectorXd sinr;
    Eigen::VectorXcd ds;         // effective-signal coefficient (ensemble mean)
    Eigen::VectorXd ls;          // leaked-signal power
    Eigen::VectorXd ui;          // summed inter-user interference power
    Eigen::VectorXd noise;       // noise power
    std::int64_t trials = 0;
};

// Monte Carlo evaluation of the use-and-forget rate: the full pilot +
// estimation + combining pipeline runs per trial, the effective-signal
// coefficient is averaged across the ensemble (statistical CSI), and the
// leakage/interference/noise powers come from the trial moments. Fully
// independent of the closed-form bounds. With perfect_csi the combiner is
// built from the true channel and the pilot phase is skipped.
RateReport empirical_rate(const SystemConfig& cfg, Detector kind, std::int64_t trials,
                          std::uint64_t seed, int workers = 1, std::int64_t chunk_size = 256,
                          bool perfect_csi = false);

// Layout of the per-trial tracked scalars (per user: re DS, im DS, |DS|^2
// sample, UI power, noise power), exposed for tests that want the raw
// statistics.
inline constexpr int kScalarsPerUser = 5;
mc::TrialEvaluator make_rate_evaluator(const SystemConfig& cfg, Detector kind,
                                       bool perfect_csi = false);
RateReport report_from_stats(const SystemConfig& cfg, const mc::TrialResult& result);

} // namespace raqmimo::detection
