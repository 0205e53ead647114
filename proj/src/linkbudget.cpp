// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/linkbudget.hpp"

#include <cmath>
#include <functional>

namespace raqmimo::linkbudget {

using bounds::BoundInputs;
using bounds::FrontEndSelect;

double power_reduction(const SystemConfig& cfg) {
    return cfg.rf().normalized_noise() / cfg.front_end.normalized_noise();
}

double range_extension(const SystemConfig& cfg) { return std::sqrt(power_reduction(cfg)); }

double antenna_reduction(const SystemConfig& cfg, AntennaRegime regime) {
    const double r = power_reduction(cfg);
    return regime == AntennaRegime::low_power_rayleigh ? r * r : r;
}

BudgetReport budget_report(const SystemConfig& cfg) {
    const double r = power_reduction(cfg);
    return {r, 10.0 * std::log10(r), std::sqrt(r), r, r * r};
}

namespace {

double bound_sinr(const BoundInputs& bi, Detector kind, int k) {
    return kind == Detector::mrc ? bounds::sinr_mrc(bi, k) : bounds::sinr_zf(bi, k);
}

// Bisection for a strictly monotone objective on a log-spaced bracket.
double bisect_log(const std::function<double(double)>& f, double lo, double hi, int iters) {
    double flo = f(lo);
    double fhi = f(hi);
    require(flo * fhi <= 0.0, Err::invalid_parameter,
            "equate-bounds solver: objective does not change sign on the bracket");
    for (int i = 0; i < iters; ++i) {
        const double mid = std::sqrt(lo * hi);
        const double fm = f(mid);
        if ((fm <= 0.0) == (flo <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return std::sqrt(lo * hi);
}

} // namespace

double solve_power_reduction(const SystemConfig& cfg, Detector kind, int k) {
    const BoundInputs raq = BoundInputs::from(cfg, FrontEndSelect::raq);
    const BoundInputs rf = BoundInputs::from(cfg, FrontEndSelect::rf);
    const double target = bound_sinr(rf, kind, k);
    // SINR is strictly decreasing in the power-division factor.
    auto objective = [&](double s) { return bound_sinr(raq.with_power_scale(s), kind, k) - target; };
    const double guess = power_reduction(cfg);
    return bisect_log(objective, guess * 1e-6, guess * 1e6, 80);
}

double solve_antenna_ratio(const SystemConfig& cfg, Detector kind, int k) {
    const BoundInputs raq = BoundInputs::from(cfg, FrontEndSelect::raq);
    const BoundInputs rf = BoundInputs::from(cfg, FrontEndSelect::rf);
    const double target = bound_sinr(rf, kind, k);
    auto objective = [&](double m) { return bound_sinr(raq.with_sensors(m), kind, k) - target; };

    // ZF needs M > K; MRC is defined for any positive sensor count.
    double lo = kind == Detector::zf ? raq.k_users + 1e-9 : 1e-9;
    double hi = raq.m_sensors;
    while (objective(hi) < 0.0 && hi < 1e15) hi *= 2.0;
    const double m_star = bisect_log(objective, lo, hi, 90);
    return rf.m_sensors / m_star;
}

} // namespace raqmimo::linkbudget
