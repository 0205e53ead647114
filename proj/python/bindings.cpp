// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "raqmimo/bounds.hpp"
#include "raqmimo/channel.hpp"
#include "raqmimo/config_io.hpp"
#include "raqmimo/detection.hpp"
#include "raqmimo/estimation.hpp"
#include "raqmimo/linkbudget.hpp"
#include "raqmimo/raqr.hpp"

namespace py = pybind11;
using namespace raqmimo;

PYBIND11_MODULE(raqmimo, m) {
    m.doc() = "Satellite uplink simulator: atomic-receiver MIMO channel estimation, "
              "MRC/ZF rate bounds, Monte Carlo verification, link-budget analysis";

    py::class_<FrontEnd>(m, "FrontEnd")
        .def(py::init<double, std::complex<double>, double>(), py::arg("rho"), py::arg("phi"),
             py::arg("sigma2"))
        .def_readonly("rho", &FrontEnd::rho)
        .def_readonly("phi", &FrontEnd::phi)
        .def_readonly("sigma2", &FrontEnd::sigma2)
        .def("normalized_noise", &FrontEnd::normalized_noise);

    py::class_<RfFrontEndSpec>(m, "RfFrontEndSpec")
        .def(py::init([](double wavelength, double antenna_efficiency, double antenna_gain,
                         double lna_gain, double temperature, double bandwidth,
                         double noise_factor) {
                 return RfFrontEndSpec{wavelength, antenna_efficiency, antenna_gain,
                                       lna_gain,   temperature,        bandwidth, noise_factor};
             }),
             py::arg("wavelength"), py::arg("antenna_efficiency") = 1.0,
             py::arg("antenna_gain") = 1.0, py::arg("lna_gain") = 1.0,
             py::arg("temperature") = 290.0, py::arg("bandwidth") = 1.0,
             py::arg("noise_factor") = 1.0);
    m.def("rf_front_end", &rf_front_end, py::arg("spec"));

    py::class_<UserLink>(m, "UserLink")
        .def(py::init<double, double, double, double, double, double>(), py::arg("beta"),
             py::arg("rician"), py::arg("elevation"), py::arg("azimuth"), py::arg("pilot_power"),
             py::arg("data_power"))
        .def_readonly("beta", &UserLink::beta)
        .def_readonly("rician", &UserLink::rician)
        .def_readonly("pilot_power", &UserLink::pilot_power)
        .def_readonly("data_power", &UserLink::data_power)
        .def("alpha", &UserLink::alpha)
        .def("mu", &UserLink::mu, py::arg("front_end"), py::arg("pilot_length"));

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<int, std::vector<UserLink>, int, int, double, double, FrontEnd,
                      std::optional<FrontEnd>>(),
             py::arg("num_sensors"), py::arg("users"), py::arg("pilot_length"),
             py::arg("coherence"), py::arg("element_spacing"), py::arg("lo_arrival"),
             py::arg("front_end"), py::arg("rf_baseline") = std::nullopt)
        .def_readonly("num_sensors", &SystemConfig::num_sensors)
        .def_readonly("users", &SystemConfig::users)
        .def_readonly("pilot_length", &SystemConfig::pilot_length)
        .def_readonly("coherence", &SystemConfig::coherence)
        .def_readonly("front_end", &SystemConfig::front_end)
        .def_readonly("rf_baseline", &SystemConfig::rf_baseline)
        .def("num_users", &SystemConfig::num_users)
        .def("prefactor", &SystemConfig::prefactor);

    py::class_<io::Scenario>(m, "Scenario")
        .def_readonly("cfg", &io::Scenario::cfg)
        .def_readonly("carrier_ghz", &io::Scenario::carrier_ghz)
        .def_readonly("user_gain_db", &io::Scenario::user_gain_db);
    m.def("load_scenario", &io::load_scenario, py::arg("path"));

    // raqr
    py::class_<raqr::PhaseConfig>(m, "PhaseConfig")
        .def(py::init([](double theta_l, double varphi) {
                 return raqr::PhaseConfig{theta_l, varphi};
             }),
             py::arg("theta_l") = 0.0, py::arg("varphi") = 0.0)
        .def_readonly("theta_l", &raqr::PhaseConfig::theta_l)
        .def_readonly("varphi", &raqr::PhaseConfig::varphi);
    m.def("phase_shift", &raqr::phase_shift, py::arg("phase"));
    m.def(
        "optimal_phi",
        [](const std::vector<raqr::PhaseConfig>& grid) {
            return raqr::optimal_phi({grid.data(), grid.size()});
        },
        py::arg("candidates"));
    m.def(
        "rabi_frequency",
        [](double dipole, double field) {
            const auto r = raqr::rabi_frequency(dipole, field);
            return py::make_tuple(r.omega_rad_s, r.peak_separation_hz);
        },
        py::arg("dipole_moment"), py::arg("field_amplitude"));

    // channel
    m.def("los_steering", &channel::los_steering, py::arg("theta_e"), py::arg("phi_az"),
          py::arg("num_sensors"), py::arg("spacing"));
    m.def("lo_phase_matrix", &channel::lo_phase_matrix, py::arg("vartheta"),
          py::arg("num_sensors"), py::arg("spacing"));
    m.def("pathloss_db", &channel::pathloss_db, py::arg("distance_km"), py::arg("carrier_ghz"));
    m.def(
        "draw_channel",
        [](const SystemConfig& cfg, std::uint64_t seed, std::uint64_t trial) {
            rng::Stream stream(seed, trial);
            const auto ch = channel::draw_channel(cfg, stream);
            return py::make_tuple(ch.H, ch.los, ch.D);
        },
        py::arg("cfg"), py::arg("seed"), py::arg("trial") = 0,
        "One channel draw; returns (H, los, D_diagonal)");

    // estimation
    m.def("dft_pilots", &estimation::dft_pilots, py::arg("pilot_length"), py::arg("num_users"));
    m.def("mse_closed_form", &estimation::mse_closed_form, py::arg("user"), py::arg("cfg"));
    m.def("nmse_closed_form", &estimation::nmse_closed_form, py::arg("user"), py::arg("cfg"));
    m.def(
        "estimate_once",
        [](const SystemConfig& cfg, std::uint64_t seed, std::uint64_t trial) {
            rng::Stream stream(seed, trial);
            const auto ch = channel::draw_channel(cfg, stream);
            const auto pb = estimation::observe_pilots(ch, cfg, stream);
            const auto est = estimation::estimate_all(pb, cfg);
            return py::make_tuple(ch.H, est.H_hat);
        },
        py::arg("cfg"), py::arg("seed"), py::arg("trial") = 0,
        "Pilot phase for one draw; returns (H, H_hat)");

    // detection
    py::enum_<detection::Detector>(m, "Detector")
        .value("mrc", detection::Detector::mrc)
        .value("zf", detection::Detector::zf);

    py::class_<detection::RateReport>(m, "RateReport")
        .def_readonly("rate", &detection::RateReport::rate)
        .def_readonly("rate_stderr", &detection::RateReport::rate_stderr)
        .def_readonly("sinr", &detection::RateReport::sinr)
        .def_readonly("trials", &detection::RateReport::trials);
    m.def("empirical_rate", &detection::empirical_rate, py::arg("cfg"), py::arg("detector"),
          py::arg("trials"), py::arg("seed"), py::arg("workers") = 1, py::arg("chunk_size") = 256,
          py::arg("perfect_csi") = false, py::call_guard<py::gil_scoped_release>());

    // bounds
    py::enum_<bounds::FrontEndSelect>(m, "FrontEndSelect")
        .value("raq", bounds::FrontEndSelect::raq)
        .value("rf", bounds::FrontEndSelect::rf);
    py::enum_<bounds::Regime>(m, "Regime")
        .value("high", bounds::Regime::high)
        .value("low", bounds::Regime::low);
    py::enum_<bounds::ChannelKind>(m, "ChannelKind")
        .value("rayleigh", bounds::ChannelKind::rayleigh)
        .value("los", bounds::ChannelKind::los)
        .value("satellite", bounds::ChannelKind::satellite);
    py::enum_<bounds::ScalingVerdict>(m, "ScalingVerdict")
        .value("vanishing", bounds::ScalingVerdict::vanishing)
        .value("non_vanishing", bounds::ScalingVerdict::non_vanishing)
        .value("diverging", bounds::ScalingVerdict::diverging);

    py::class_<bounds::BoundInputs>(m, "BoundInputs")
        .def_static("from_config", &bounds::BoundInputs::from, py::arg("cfg"),
                    py::arg("which") = bounds::FrontEndSelect::raq)
        .def_static("from_scaled", &bounds::BoundInputs::from_scaled, py::arg("cfg"),
                    py::arg("which"), py::arg("m_sensors"), py::arg("energy"), py::arg("eps_d"),
                    py::arg("eps_p"))
        .def("with_sensors", &bounds::BoundInputs::with_sensors, py::arg("m_sensors"))
        .def("with_power_scale", &bounds::BoundInputs::with_power_scale, py::arg("factor"))
        .def_readonly("m_sensors", &bounds::BoundInputs::m_sensors)
        .def_readonly("mu", &bounds::BoundInputs::mu)
        .def_readonly("alpha", &bounds::BoundInputs::alpha);

    m.def("sinr_mrc", &bounds::sinr_mrc, py::arg("bi"), py::arg("k"));
    m.def("sinr_zf", &bounds::sinr_zf, py::arg("bi"), py::arg("k"));
    m.def("sinr_mrc_rayleigh", &bounds::sinr_mrc_rayleigh, py::arg("bi"), py::arg("k"));
    m.def("sinr_zf_rayleigh", &bounds::sinr_zf_rayleigh, py::arg("bi"), py::arg("k"));
    m.def("delta_ri", &bounds::delta_ri, py::arg("bi"));
    m.def("sinr_mrc_los", &bounds::sinr_mrc_los, py::arg("bi"), py::arg("k"));
    m.def("sinr_zf_los", &bounds::sinr_zf_los, py::arg("bi"), py::arg("k"));
    m.def("rate_from_sinr", &bounds::rate_from_sinr, py::arg("bi"), py::arg("sinr"));

    py::class_<bounds::RateBound>(m, "RateBound")
        .def_readonly("sinr", &bounds::RateBound::sinr)
        .def_readonly("rate", &bounds::RateBound::rate)
        .def_readonly("prefactor", &bounds::RateBound::prefactor);
    m.def("rate_bound", &bounds::rate_bound, py::arg("cfg"), py::arg("detector"),
          py::arg("which") = bounds::FrontEndSelect::raq, py::arg("perfect_csi") = false);
    m.def("rf_bound", &bounds::rf_bound, py::arg("cfg"), py::arg("detector"), py::arg("k"));

    py::class_<bounds::GainDecomposition>(m, "GainDecomposition")
        .def_readonly("sinr_rf", &bounds::GainDecomposition::sinr_rf)
        .def_readonly("sinr_raq", &bounds::GainDecomposition::sinr_raq)
        .def_readonly("factors", &bounds::GainDecomposition::factors);
    m.def("gain_decomposition", &bounds::gain_decomposition, py::arg("cfg"), py::arg("detector"),
          py::arg("k"));
    m.def("rate_delta_asymptotic", &bounds::rate_delta_asymptotic, py::arg("cfg"),
          py::arg("detector"), py::arg("regime"), py::arg("channel"), py::arg("k"));

    py::class_<bounds::ScalingLimit>(m, "ScalingLimit")
        .def_readonly("verdict", &bounds::ScalingLimit::verdict)
        .def_readonly("sinr_limit", &bounds::ScalingLimit::sinr_limit);
    m.def("power_scaling_limit", &bounds::power_scaling_limit, py::arg("bi"), py::arg("k"),
          py::arg("energy"), py::arg("eps_d"), py::arg("eps_p"));
    m.def("wishart_inverse_mean", &bounds::wishart_inverse_mean, py::arg("bi"));

    // link budget
    py::enum_<linkbudget::AntennaRegime>(m, "AntennaRegime")
        .value("general", linkbudget::AntennaRegime::general)
        .value("low_power_rayleigh", linkbudget::AntennaRegime::low_power_rayleigh);
    py::class_<linkbudget::BudgetReport>(m, "BudgetReport")
        .def_readonly("power_reduction", &linkbudget::BudgetReport::power_reduction)
        .def_readonly("power_reduction_db", &linkbudget::BudgetReport::power_reduction_db)
        .def_readonly("range_extension", &linkbudget::BudgetReport::range_extension)
        .def_readonly("antenna_reduction_general",
                      &linkbudget::BudgetReport::antenna_reduction_general)
        .def_readonly("antenna_reduction_low_power",
                      &linkbudget::BudgetReport::antenna_reduction_low_power);
    m.def("power_reduction", &linkbudget::power_reduction, py::arg("cfg"));
    m.def("range_extension", &linkbudget::range_extension, py::arg("cfg"));
    m.def("antenna_reduction", &linkbudget::antenna_reduction, py::arg("cfg"), py::arg("regime"));
    m.def("budget_report", &linkbudget::budget_report, py::arg("cfg"));
    m.def("solve_power_reduction", &linkbudget::solve_power_reduction, py::arg("cfg"),
          py::arg("detector"), py::arg("k"));
    m.def("solve_antenna_ratio", &linkbudget::solve_antenna_ratio, py::arg("cfg"),
          py::arg("detector"), py::arg("k"));
}
