// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/detection.hpp"

#include <cmath>

#include "raqmimo/channel.hpp"
#include "raqmimo/estimation.hpp"

namespace raqmimo::detection {

namespace {
constexpr double kCondLimit = 1e12;
} // namespace

const char* detector_name(Detector d) { return d == Detector::mrc ? "mrc" : "zf"; }

Combiner mrc_combiner(const Eigen::MatrixXcd& h_hat, const Eigen::VectorXcd& d_diag,
                      std::complex<double> phi) {
    require(h_hat.rows() == d_diag.size(), Err::invalid_parameter,
            "mrc_combiner: shape mismatch between estimate and array phase");
    return {phi * (d_diag.asDiagonal() * h_hat), Detector::mrc};
}

Combiner zf_combiner(const Eigen::MatrixXcd& h_hat, const Eigen::VectorXcd& d_diag,
                     std::complex<double> phi) {
    require(h_hat.rows() == d_diag.size(), Err::invalid_parameter,
            "zf_combiner: shape mismatch between estimate and array phase");
    require(std::abs(phi) > 0.0, Err::degenerate_phase, "zf_combiner: zero phase factor");
    require(h_hat.rows() > h_hat.cols(), Err::insufficient_antennas,
            "zf_combiner: need more sensors than users");

    const Eigen::MatrixXcd a = phi * (d_diag.asDiagonal() * h_hat);
    const Eigen::MatrixXcd gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    require(eig.info() == Eigen::Success, Err::singular_estimate,
            "zf_combiner: eigendecomposition failed");
    const auto& evals = eig.eigenvalues();
    const double lmax = evals(evals.size() - 1);
    const double lmin = evals(0);
    // gram = A^H A squares the condition number of A; the guard is on A.
    require(lmin > 0.0 && lmax / lmin <= kCondLimit * kCondLimit, Err::singular_estimate,
            "zf_combiner: rank-deficient or ill-conditioned estimate");
    const Eigen::MatrixXcd gram_inv = eig.eigenvectors() *
                                      evals.cwiseInverse().asDiagonal() *
                                      eig.eigenvectors().adjoint();
    return {a * gram_inv, Detector::zf};
}

mc::TrialEvaluator make_rate_evaluator(const SystemConfig& cfg, Detector kind, bool perfect_csi) {
    return [cfg, kind, perfect_csi](std::int64_t, rng::Stream& stream, std::span<double> out) {
        const int k_users = cfg.num_users();
        const channel::ChannelRealization ch = channel::draw_channel(cfg, stream);
        Eigen::MatrixXcd h_hat;
        if (perfect_csi) {
            h_hat = ch.H;
        } else {
            const estimation::PilotBlock pb = estimation::observe_pilots(ch, cfg, stream);
            h_hat = estimation::estimate_all(pb, cfg).H_hat;
        }

        const Combiner comb = kind == Detector::mrc
                                  ? mrc_combiner(h_hat, ch.D, cfg.front_end.phi)
                                  : zf_combiner(h_hat, ch.D, cfg.front_end.phi);

        // Effective receive matrix: entry (k, k') = Phi c_k^H D h_k'.
        const Eigen::MatrixXcd eff =
            cfg.front_end.phi * (comb.C.adjoint() * (ch.D.asDiagonal() * ch.H));
        for (int k = 0; k < k_users; ++k) {
            const double own_power = cfg.front_end.rho * cfg.users[k].data_power;
            const std::complex<double> a = std::sqrt(own_power) * eff(k, k);
            double ui = 0.0;
            for (int j = 0; j < k_users; ++j) {
                if (j == k) continue;
                ui += cfg.front_end.rho * cfg.users[j].data_power * std::norm(eff(k, j));
            }
            const double noise = cfg.front_end.sigma2 * comb.C.col(k).squaredNorm();
            out[kScalarsPerUser * k + 0] = a.real();
            out[kScalarsPerUser * k + 1] = a.imag();
            out[kScalarsPerUser * k + 2] = std::norm(a);
            out[kScalarsPerUser * k + 3] = ui;
            out[kScalarsPerUser * k + 4] = noise;
        }
    };
}

namespace {

void rates_from_stats(const SystemConfig& cfg, const mc::RunningStats& stats,
                      Eigen::VectorXd& rate, RateReport* full) {
    const int k_users = cfg.num_users();
    const double pre = cfg.prefactor();
    rate.resize(k_users);
    for (int k = 0; k < k_users; ++k) {
        const int base = kScalarsPerUser * k;
        const std::complex<double> ds(stats.mean(base + 0), stats.mean(base + 1));
        const double ls =
            stats.population_variance(base + 0) + stats.population_variance(base + 1);
        const double ui = stats.mean(base + 3);
        const double noise = stats.mean(base + 4);
        const double denom = ls + ui + noise;
        // A zero combiner (no pilot energy, zero prior) carries no signal.
        const double sinr = denom > 0.0 ? std::norm(ds) / denom : 0.0;
        rate(k) = pre * std::log2(1.0 + sinr);
        if (full) {
            full->ds(k) = ds;
            full->ls(k) = ls;
            full->ui(k) = ui;
            full->noise(k) = noise;
            full->sinr(k) = sinr;
        }
    }
}

} // namespace

RateReport report_from_stats(const SystemConfig& cfg, const mc::TrialResult& result) {
    const int k_users = cfg.num_users();
    RateReport report;
    report.trials = result.total.count();
    report.sinr.resize(k_users);
    report.ds.resize(k_users);
    report.ls.resize(k_users);
    report.ui.resize(k_users);
    report.noise.resize(k_users);
    rates_from_stats(cfg, result.total, report.rate, &report);

    // Leave-one-chunk-out jackknife on the full nonlinear estimator.
    const std::size_t n_groups = result.chunks.size();
    report.rate_stderr = Eigen::VectorXd::Zero(k_users);
    if (n_groups >= 2) {
        Eigen::MatrixXd loo(n_groups, k_users);
        Eigen::VectorXd rate_g;
        for (std::size_t g = 0; g < n_groups; ++g) {
            mc::RunningStats merged(kScalarsPerUser * k_users);
            for (std::size_t c = 0; c < n_groups; ++c) {
                if (c != g) merged.merge(result.chunks[c]);
            }
            rates_from_stats(cfg, merged, rate_g, nullptr);
            loo.row(g) = rate_g.transpose();
        }
        const double gn = static_cast<double>(n_groups);
        for (int k = 0; k < k_users; ++k) {
            const double mean_g = loo.col(k).mean();
            const double ss = (loo.col(k).array() - mean_g).square().sum();
            report.rate_stderr(k) = std::sqrt((gn - 1.0) / gn * ss);
        }
    }
    return report;
}

RateReport empirical_rate(const SystemConfig& cfg, Detector kind, std::int64_t trials,
                          std::uint64_t seed, int workers, std::int64_t chunk_size,
                          bool perfect_csi) {
    mc::TrialPlan plan;
    plan.master_seed = seed;
    plan.trials = trials;
    plan.chunk_size = chunk_size;
    plan.workers = workers;
    const mc::TrialResult result = mc::run_trials(plan, kScalarsPerUser * cfg.num_users(),
                                                  make_rate_evaluator(cfg, kind, perfect_csi));
    return report_from_stats(cfg, result);
}

} // namespace raqmimo::detection
