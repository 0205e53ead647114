// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/bounds.hpp"

#include <cmath>
#include <limits>

namespace raqmimo::bounds {

namespace {

constexpr double kCondLimit = 1e12;

// sum_{m=0}^{M-1} e^{j m chi} through the Dirichlet kernel; defined for real M.
std::complex<double> geometric_phase_sum(double chi, double m_sensors) {
    const double half = 0.5 * chi;
    const double s = std::sin(half);
    if (std::abs(s) < 1e-12) return {m_sensors, 0.0};
    return std::polar(std::sin(m_sensors * half) / s, half * (m_sensors - 1.0));
}

void build_grams(BoundInputs& bi) {
    const int k_users = bi.k_users;
    bi.los_gram.resize(k_users, k_users);
    bi.hbar_gram.resize(k_users, k_users);
    for (int a = 0; a < k_users; ++a) {
        for (int b = 0; b < k_users; ++b) {
            const double chi = 2.0 * M_PI * (bi.spatial_freq(a) - bi.spatial_freq(b));
            const std::complex<double> g = geometric_phase_sum(chi, bi.m_sensors);
            bi.los_gram(a, b) = g;
            bi.hbar_gram(a, b) = std::sqrt(bi.delta_alpha(a) * bi.delta_alpha(b)) * g;
        }
        bi.los_gram(a, a) = bi.m_sensors;
        bi.hbar_gram(a, a) = bi.delta_alpha(a) * bi.m_sensors;
    }
}

double mu_from_energy(const FrontEnd& fe, double pilot_energy, double alpha) {
    const double signal = fe.rho * pilot_energy * alpha * fe.phi_sq();
    return signal / (signal + fe.sigma2);
}

double nmse_from_energy(const FrontEnd& fe, double pilot_energy, double alpha) {
    const double signal = fe.rho * pilot_energy * alpha * fe.phi_sq();
    return fe.sigma2 / (signal + fe.sigma2);
}

BoundInputs base_inputs(const SystemConfig& cfg, FrontEndSelect which) {
    BoundInputs bi;
    bi.m_sensors = static_cast<double>(cfg.num_sensors);
    bi.k_users = cfg.num_users();
    bi.prefactor = cfg.prefactor();
    bi.fe = which == FrontEndSelect::raq ? cfg.front_end : cfg.rf();

    const int k_users = bi.k_users;
    bi.alpha.resize(k_users);
    bi.beta.resize(k_users);
    bi.delta.resize(k_users);
    bi.delta_alpha.resize(k_users);
    bi.mu.resize(k_users);
    bi.nmse.resize(k_users);
    bi.pilot_energy.resize(k_users);
    bi.data_power.resize(k_users);
    bi.spatial_freq.resize(k_users);
    bi.los_flag.resize(k_users);
    for (int k = 0; k < k_users; ++k) {
        const UserLink& u = cfg.users[k];
        bi.alpha(k) = u.alpha();
        bi.beta(k) = u.beta;
        bi.delta(k) = u.rician;
        bi.delta_alpha(k) = u.delta_alpha();
        bi.pilot_energy(k) = cfg.pilot_length * u.pilot_power;
        bi.data_power(k) = u.data_power;
        bi.spatial_freq(k) =
            cfg.element_spacing * std::sin(u.elevation) * std::cos(u.azimuth);
        bi.los_flag[k] = u.is_los();
        bi.mu(k) = mu_from_energy(bi.fe, bi.pilot_energy(k), bi.alpha(k));
        bi.nmse(k) = nmse_from_energy(bi.fe, bi.pilot_energy(k), bi.alpha(k));
    }
    return bi;
}

// Interference weight |hbar_k^H hbar_k'|^2 / M.
double gram_weight(const BoundInputs& bi, int a, int b) {
    return std::norm(bi.los_gram(a, b)) / bi.m_sensors;
}

// Denominator of the general MRC bound; for a LoS-flagged user it is the
// delta -> inf limit of the printed expression divided by delta.
double mrc_denominator(const BoundInputs& bi, int k) {
    const double nn = bi.fe.normalized_noise();
    double den = 0.0;
    if (bi.los_flag[k]) {
        for (int j = 0; j < bi.k_users; ++j) {
            den += bi.data_power(j) * bi.alpha(j);
            if (j != k) den += bi.data_power(j) * gram_weight(bi, k, j) * bi.delta_alpha(j);
        }
        return den + nn;
    }
    const double mu_k = bi.mu(k);
    const double delta_k = bi.delta(k);
    for (int j = 0; j < bi.k_users; ++j) {
        den += bi.data_power(j) * (delta_k * bi.alpha(j) + mu_k * bi.beta(j));
        if (j != k) {
            den += bi.data_power(j) * gram_weight(bi, k, j) * delta_k * bi.delta_alpha(j);
        }
    }
    return den + nn * (mu_k + delta_k);
}

double mrc_numerator(const BoundInputs& bi, int k) {
    if (bi.los_flag[k]) return bi.m_sensors * bi.data_power(k) * bi.beta(k);
    const double t = bi.mu(k) + bi.delta(k);
    return bi.m_sensors * bi.data_power(k) * bi.alpha(k) * t * t;
}

// Residual-power sum of the general ZF bound.
double zf_noise_sum(const BoundInputs& bi) {
    double s = bi.fe.normalized_noise();
    for (int j = 0; j < bi.k_users; ++j) {
        s += bi.data_power(j) * bi.alpha(j) * bi.nmse(j);
    }
    return s;
}

Eigen::MatrixXcd zf_matrix(const BoundInputs& bi) {
    Eigen::MatrixXcd a = bi.hbar_gram / bi.m_sensors;
    for (int k = 0; k < bi.k_users; ++k) {
        a(k, k) += bi.mu(k) * bi.alpha(k);
    }
    return a;
}

// Hermitian inverse with the condition-number guard.
Eigen::MatrixXcd guarded_inverse(const Eigen::MatrixXcd& a, Err code, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a);
    require(eig.info() == Eigen::Success, code, std::string(what) + ": eigendecomposition failed");
    const auto& evals = eig.eigenvalues();
    const double lmin = evals(0);
    const double lmax = evals(evals.size() - 1);
    require(lmin > 0.0 && lmax / lmin <= kCondLimit, code,
            std::string(what) + ": singular or ill-conditioned K x K matrix");
    return eig.eigenvectors() * evals.cwiseInverse().asDiagonal() * eig.eigenvectors().adjoint();
}

void check_user(const BoundInputs& bi, int k) {
    require(k >= 0 && k < bi.k_users, Err::invalid_parameter, "bounds: user index out of range");
}

// LoS-form values evaluated from (beta, steering) regardless of the flags;
// shared by the pure-LoS bounds and the satellite-regime asymptotics.
double mrc_los_value(const BoundInputs& bi, int k) {
    double den = bi.fe.normalized_noise();
    for (int j = 0; j < bi.k_users; ++j) {
        if (j != k) den += bi.data_power(j) * gram_weight(bi, k, j) * bi.beta(j);
    }
    return bi.m_sensors * bi.data_power(k) * bi.beta(k) / den;
}

double zf_los_value(const BoundInputs& bi, int k) {
    require(bi.m_sensors > bi.k_users, Err::insufficient_antennas,
            "zf bound: need more sensors than users");
    Eigen::MatrixXcd g(bi.k_users, bi.k_users);
    for (int a = 0; a < bi.k_users; ++a) {
        for (int b = 0; b < bi.k_users; ++b) {
            g(a, b) = std::sqrt(bi.beta(a) * bi.beta(b)) * bi.los_gram(a, b) / bi.m_sensors;
        }
    }
    const Eigen::MatrixXcd inv = guarded_inverse(g, Err::degenerate_geometry, "zf LoS bound");
    return (bi.m_sensors - bi.k_users) * bi.data_power(k) /
           (bi.fe.normalized_noise() * inv(k, k).real());
}

} // namespace

BoundInputs BoundInputs::from(const SystemConfig& cfg, FrontEndSelect which) {
    BoundInputs bi = base_inputs(cfg, which);
    build_grams(bi);
    return bi;
}

BoundInputs BoundInputs::from_scaled(const SystemConfig& cfg, FrontEndSelect which,
                                     double m_sensors, double energy, double eps_d,
                                     double eps_p) {
    require(std::isfinite(m_sensors) && m_sensors > 0.0, Err::invalid_parameter,
            "from_scaled: sensor count must be > 0");
    require(std::isfinite(energy) && energy > 0.0, Err::invalid_parameter,
            "from_scaled: energy must be > 0");
    BoundInputs bi = base_inputs(cfg, which);
    bi.m_sensors = m_sensors;
    const double pd = energy / std::pow(m_sensors, eps_d);
    const double pe = energy / std::pow(m_sensors, eps_p);
    for (int k = 0; k < bi.k_users; ++k) {
        bi.data_power(k) = pd;
        bi.pilot_energy(k) = pe;
        bi.mu(k) = mu_from_energy(bi.fe, pe, bi.alpha(k));
        bi.nmse(k) = nmse_from_energy(bi.fe, pe, bi.alpha(k));
    }
    build_grams(bi);
    return bi;
}

BoundInputs BoundInputs::with_sensors(double m_sensors) const {
    require(std::isfinite(m_sensors) && m_sensors > 0.0, Err::invalid_parameter,
            "with_sensors: sensor count must be > 0");
    BoundInputs bi = *this;
    bi.m_sensors = m_sensors;
    build_grams(bi);
    return bi;
}

BoundInputs BoundInputs::with_power_scale(double factor) const {
    require(std::isfinite(factor) && factor > 0.0, Err::invalid_parameter,
            "with_power_scale: factor must be > 0");
    BoundInputs bi = *this;
    bi.data_power /= factor;
    bi.pilot_energy /= factor;
    for (int k = 0; k < bi.k_users; ++k) {
        bi.mu(k) = mu_from_energy(bi.fe, bi.pilot_energy(k), bi.alpha(k));
        bi.nmse(k) = nmse_from_energy(bi.fe, bi.pilot_energy(k), bi.alpha(k));
    }
    return bi;
}

BoundInputs BoundInputs::with_perfect_csi() const {
    BoundInputs bi = *this;
    bi.mu.setOnes();
    bi.nmse.setZero();
    return bi;
}

bool BoundInputs::all_rayleigh() const {
    for (int k = 0; k < k_users; ++k) {
        if (los_flag[k] || delta(k) != 0.0) return false;
    }
    return true;
}

bool BoundInputs::all_los() const {
    for (int k = 0; k < k_users; ++k) {
        if (!los_flag[k]) return false;
    }
    return true;
}

double sinr_mrc(const BoundInputs& bi, int k) {
    check_user(bi, k);
    const double num = mrc_numerator(bi, k);
    // mu + delta = 0 (no pilot energy, no LoS) zeroes both sides of the
    // ratio; the limit of the expression is 0.
    if (num == 0.0) return 0.0;
    return num / mrc_denominator(bi, k);
}

double sinr_zf(const BoundInputs& bi, int k) {
    check_user(bi, k);
    require(bi.m_sensors > bi.k_users, Err::insufficient_antennas,
            "zf bound: need more sensors than users");
    const Eigen::MatrixXcd inv =
        guarded_inverse(zf_matrix(bi), Err::degenerate_geometry, "zf bound");
    return (bi.m_sensors - bi.k_users) * bi.data_power(k) /
           (zf_noise_sum(bi) * inv(k, k).real());
}

double sinr_mrc_rayleigh(const BoundInputs& bi, int k) {
    check_user(bi, k);
    require(bi.all_rayleigh(), Err::invalid_specialization,
            "rayleigh bound: all users must have a zero Rician factor");
    double den = bi.fe.normalized_noise();
    for (int j = 0; j < bi.k_users; ++j) den += bi.data_power(j) * bi.beta(j);
    return bi.m_sensors * bi.data_power(k) * bi.beta(k) / den * bi.mu(k);
}

double delta_ri(const BoundInputs& bi) {
    require(bi.all_rayleigh(), Err::invalid_specialization,
            "delta_ri: all users must have a zero Rician factor");
    const double nn = bi.fe.normalized_noise();
    double s = 0.0;
    for (int j = 0; j < bi.k_users; ++j) {
        s += bi.data_power(j) * bi.beta(j) / (bi.pilot_energy(j) * bi.beta(j) + nn);
    }
    return s;
}

double sinr_zf_rayleigh(const BoundInputs& bi, int k) {
    check_user(bi, k);
    require(bi.all_rayleigh(), Err::invalid_specialization,
            "rayleigh bound: all users must have a zero Rician factor");
    require(bi.m_sensors > bi.k_users, Err::insufficient_antennas,
            "zf bound: need more sensors than users");
    const double perfect = (bi.m_sensors - bi.k_users) * bi.data_power(k) * bi.beta(k) /
                           bi.fe.normalized_noise();
    return perfect * bi.mu(k) / (1.0 + delta_ri(bi));
}

double sinr_mrc_los(const BoundInputs& bi, int k) {
    check_user(bi, k);
    require(bi.all_los(), Err::invalid_specialization,
            "los bound: all users must carry the pure-LoS flag");
    return mrc_los_value(bi, k);
}

double sinr_zf_los(const BoundInputs& bi, int k) {
    check_user(bi, k);
    require(bi.all_los(), Err::invalid_specialization,
            "los bound: all users must carry the pure-LoS flag");
    return zf_los_value(bi, k);
}

double rate_from_sinr(const BoundInputs& bi, double sinr) {
    return bi.prefactor * std::log2(1.0 + sinr);
}

RateBound rate_bound(const SystemConfig& cfg, Detector kind, FrontEndSelect which,
                     bool perfect_csi) {
    BoundInputs bi = BoundInputs::from(cfg, which);
    if (perfect_csi) bi = bi.with_perfect_csi();
    RateBound rb;
    rb.prefactor = bi.prefactor;
    rb.sinr.resize(bi.k_users);
    rb.rate.resize(bi.k_users);
    for (int k = 0; k < bi.k_users; ++k) {
        rb.sinr(k) = kind == Detector::mrc ? sinr_mrc(bi, k) : sinr_zf(bi, k);
        rb.rate(k) = rate_from_sinr(bi, rb.sinr(k));
    }
    return rb;
}

double rf_bound(const SystemConfig& cfg, Detector kind, int k) {
    const BoundInputs bi = BoundInputs::from(cfg, FrontEndSelect::rf);
    return kind == Detector::mrc ? sinr_mrc(bi, k) : sinr_zf(bi, k);
}

GainDecomposition gain_decomposition(const SystemConfig& cfg, Detector kind, int k) {
    const BoundInputs raq = BoundInputs::from(cfg, FrontEndSelect::raq);
    const BoundInputs rf = BoundInputs::from(cfg, FrontEndSelect::rf);
    check_user(raq, k);

    GainDecomposition gd;
    if (kind == Detector::mrc) {
        gd.sinr_rf = sinr_mrc(rf, k);
        gd.sinr_raq = sinr_mrc(raq, k);
        const double f1 = raq.los_flag[k]
                              ? 1.0
                              : std::pow((raq.mu(k) + raq.delta(k)) / (rf.mu(k) + rf.delta(k)), 2);
        const double f2 = mrc_denominator(rf, k) / mrc_denominator(raq, k);
        gd.factors = {f1, f2};
    } else {
        gd.sinr_rf = sinr_zf(rf, k);
        gd.sinr_raq = sinr_zf(raq, k);
        const double f1 = zf_noise_sum(rf) / zf_noise_sum(raq);
        const Eigen::MatrixXcd inv_rf =
            guarded_inverse(zf_matrix(rf), Err::degenerate_geometry, "zf bound");
        const Eigen::MatrixXcd inv_raq =
            guarded_inverse(zf_matrix(raq), Err::degenerate_geometry, "zf bound");
        const double f2 = inv_rf(k, k).real() / inv_raq(k, k).real();
        gd.factors = {f1, f2};
    }
    return gd;
}

double rate_delta_asymptotic(const SystemConfig& cfg, Detector kind, Regime regime,
                             ChannelKind channel, int k) {
    const BoundInputs raq = BoundInputs::from(cfg, FrontEndSelect::raq);
    const BoundInputs rf = BoundInputs::from(cfg, FrontEndSelect::rf);
    check_user(raq, k);
    const double pre = raq.prefactor;
    const double ratio = rf.fe.normalized_noise() / raq.fe.normalized_noise();

    switch (channel) {
    case ChannelKind::rayleigh: {
        if (regime == Regime::high) {
            require(raq.all_rayleigh(), Err::invalid_specialization,
                    "rate_delta_asymptotic: rayleigh channel requested with nonzero Rician factors");
            return kind == Detector::mrc ? 0.0 : pre * std::log2(ratio);
        }
        const double s_rf = kind == Detector::mrc ? sinr_mrc_rayleigh(rf, k)
                                                  : sinr_zf_rayleigh(rf, k);
        // Squaring effect: the RAQ SINR sits ratio^2 above the RF SINR.
        return pre * (std::log2(1.0 + s_rf * ratio * ratio) - std::log2(1.0 + s_rf));
    }
    case ChannelKind::los: {
        require(raq.all_los(), Err::invalid_specialization,
                "rate_delta_asymptotic: los channel requested without pure-LoS flags");
        if (regime == Regime::high) {
            return kind == Detector::mrc ? 0.0 : pre * std::log2(ratio);
        }
        const double s_rf = kind == Detector::mrc ? mrc_los_value(rf, k) : zf_los_value(rf, k);
        return pre * (std::log2(1.0 + s_rf * ratio) - std::log2(1.0 + s_rf));
    }
    case ChannelKind::satellite: {
        require(regime == Regime::low, Err::not_derived,
                "rate_delta_asymptotic: no satellite-regime delta derived at high power");
        const double s_rf = kind == Detector::mrc ? mrc_los_value(rf, k) : zf_los_value(rf, k);
        return pre * (std::log2(1.0 + s_rf * ratio) - std::log2(1.0 + s_rf));
    }
    }
    throw Error(Err::not_derived, "rate_delta_asymptotic: unsupported combination");
}

ScalingLimit power_scaling_limit(const BoundInputs& bi, int k, double energy, double eps_d,
                                 double eps_p) {
    check_user(bi, k);
    require(std::isfinite(energy) && energy > 0.0, Err::invalid_parameter,
            "power_scaling_limit: energy must be > 0");
    require(std::isfinite(eps_d) && std::isfinite(eps_p) && eps_d >= 0.0 && eps_p >= 0.0,
            Err::invalid_parameter, "power_scaling_limit: exponents must be finite and >= 0");

    const double nn = bi.fe.normalized_noise();
    constexpr double tol = 1e-12;
    ScalingLimit out{ScalingVerdict::vanishing, std::numeric_limits<double>::quiet_NaN()};

    if (!bi.los_flag[k] && bi.delta(k) == 0.0) {
        const double s = eps_d + eps_p;
        if (std::abs(s - 1.0) <= tol) {
            out.verdict = ScalingVerdict::non_vanishing;
            const double be = bi.beta(k) * energy / nn;
            out.sinr_limit = be * be;
        } else {
            out.verdict = s < 1.0 ? ScalingVerdict::diverging : ScalingVerdict::vanishing;
        }
    } else {
        if (std::abs(eps_d - 1.0) <= tol) {
            out.verdict = ScalingVerdict::non_vanishing;
            out.sinr_limit = bi.delta_alpha(k) * energy / nn;
        } else {
            out.verdict = eps_d < 1.0 ? ScalingVerdict::diverging : ScalingVerdict::vanishing;
        }
    }
    return out;
}

Eigen::MatrixXcd wishart_inverse_mean(const BoundInputs& bi) {
    require(bi.m_sensors > bi.k_users, Err::insufficient_antennas,
            "wishart_inverse_mean: need more sensors than users");
    const Eigen::MatrixXcd inv =
        guarded_inverse(zf_matrix(bi), Err::degenerate_geometry, "wishart_inverse_mean");
    return inv / (bi.m_sensors - bi.k_users);
}

} // namespace raqmimo::bounds
