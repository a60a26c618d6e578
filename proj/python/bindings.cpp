#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ssbh/cli/commands.hpp"
#include "ssbh/dynamics.hpp"
#include "ssbh/error.hpp"
#include "ssbh/limits.hpp"
#include "ssbh/ness.hpp"
#include "ssbh/rectification.hpp"

namespace py = pybind11;
using namespace ssbh;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bose-Hubbard site between two thermal baths";
    m.attr("__version__") = cli::library_version();

    // Messages start with the error code name, e.g. "NoSignChange: ...".
    py::register_exception<Error>(m, "SsbhError", PyExc_RuntimeError);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def(py::init([](double omega0, double chi, double eps) { return SystemParams{omega0, chi, eps}; }),
             py::arg("omega0") = 1.0, py::arg("chi") = 0.0, py::arg("eps") = 0.1)
        .def_readwrite("omega0", &SystemParams::omega0)
        .def_readwrite("chi", &SystemParams::chi)
        .def_readwrite("eps", &SystemParams::eps);

    py::class_<BathParams>(m, "BathParams")
        .def(py::init([](double gamma, double temperature, double mu) { return BathParams{gamma, temperature, mu}; }),
             py::arg("gamma") = 1.0, py::arg("temperature") = 1.0, py::arg("mu") = 0.0)
        .def_readwrite("gamma", &BathParams::gamma)
        .def_readwrite("temperature", &BathParams::temperature)
        .def_readwrite("mu", &BathParams::mu);

    py::class_<SpectralParams>(m, "SpectralParams")
        .def(py::init([](double s, double omega_c) { return SpectralParams{s, omega_c}; }), py::arg("s") = 1.0,
             py::arg("omega_c") = 1000.0)
        .def_readwrite("s", &SpectralParams::s)
        .def_readwrite("omega_c", &SpectralParams::omega_c);

    py::class_<Setup>(m, "Setup")
        .def(py::init([](SystemParams sys, BathParams b1, BathParams b2, SpectralParams sp) {
                 Setup s{sys, b1, b2, sp};
                 s.validate();
                 return s;
             }),
             py::arg("system"), py::arg("bath1"), py::arg("bath2"), py::arg("spectral") = SpectralParams{})
        .def_readwrite("system", &Setup::system)
        .def_readwrite("bath1", &Setup::bath1)
        .def_readwrite("bath2", &Setup::bath2)
        .def_readwrite("spectral", &Setup::spectral)
        .def("validate", &Setup::validate)
        .def("warnings", &Setup::warnings)
        .def("with_swapped_temperatures", &Setup::with_swapped_temperatures);

    py::class_<TruncationOptions>(m, "TruncationOptions")
        .def(py::init([](double tol, std::size_t cap) { return TruncationOptions{tol, cap}; }),
             py::arg("tol") = 1e-10, py::arg("cap") = 200000)
        .def_readwrite("tol", &TruncationOptions::tol)
        .def_readwrite("cap", &TruncationOptions::cap);

    py::class_<NessDistribution>(m, "NessDistribution")
        .def_readonly("rho", &NessDistribution::rho)
        .def_readonly("n_max", &NessDistribution::n_max)
        .def_readonly("z_tilde", &NessDistribution::z_tilde)
        .def_readonly("tail_bound", &NessDistribution::tail_bound)
        .def_readonly("ratio_check", &NessDistribution::ratio_check);

    py::class_<CurrentPair>(m, "CurrentPair")
        .def_readonly("particle", &CurrentPair::particle)
        .def_readonly("energy", &CurrentPair::energy)
        .def("__repr__", [](const CurrentPair& c) {
            return "CurrentPair(particle=" + cli::format_number(c.particle) +
                   ", energy=" + cli::format_number(c.energy) + ")";
        });

    py::class_<SteadyCurrents>(m, "SteadyCurrents")
        .def_readonly("total", &SteadyCurrents::total)
        .def_readonly("from_bath", &SteadyCurrents::from_bath)
        .def_readonly("form_mismatch", &SteadyCurrents::form_mismatch);

    m.def("level_freq", &level_freq, py::arg("n"), py::arg("system"));
    m.def("level_energy", &level_energy, py::arg("n"), py::arg("system"));
    m.def("bose", &bose, py::arg("omega"), py::arg("bath"));
    m.def("truncation_level", &truncation_level, py::arg("setup"), py::arg("opts") = TruncationOptions{});
    m.def("steady_populations", py::overload_cast<const Setup&, const TruncationOptions&>(&steady_populations),
          py::arg("setup"), py::arg("opts") = TruncationOptions{});
    m.def("mean_occupation", &mean_occupation, py::arg("dist"));
    m.def("mean_energy", &mean_energy, py::arg("dist"), py::arg("system"));
    m.def("steady_currents", py::overload_cast<const Setup&, const TruncationOptions&>(&steady_currents),
          py::arg("setup"), py::arg("opts") = TruncationOptions{});

    py::class_<NesbResult>(m, "NesbResult")
        .def_readonly("rho0", &NesbResult::rho0)
        .def_readonly("rho1", &NesbResult::rho1)
        .def_readonly("current_particle", &NesbResult::current_particle)
        .def_readonly("current_energy", &NesbResult::current_energy)
        .def_readonly("gap", &NesbResult::gap);
    m.def("nesb_currents", &nesb_currents, py::arg("setup"));
    m.def("effective_temperature_harmonic", &effective_temperature_harmonic, py::arg("setup"));
    m.def("effective_temperature_highT", &effective_temperature_highT, py::arg("setup"));
    m.def("conductance_plateau", &conductance_plateau, py::arg("setup"));
    m.def("k_function", [](double s, const Setup& setup) { return k_function(s, setup); }, py::arg("s"),
          py::arg("setup"));
    m.def("current_ratio_asymptote", &current_ratio_asymptote, py::arg("setup"), py::arg("s"));

    py::class_<RectificationResult>(m, "RectificationResult")
        .def_readonly("r_i", &RectificationResult::r_i)
        .def_readonly("r_j", &RectificationResult::r_j)
        .def_readonly("forward", &RectificationResult::forward)
        .def_readonly("backward", &RectificationResult::backward);
    m.def(
        "rectification",
        [](const Setup& base, double t_mean, double delta_t, double lambda, double gamma,
           const TruncationOptions& opts) { return rectification(base, {t_mean, delta_t}, {lambda, gamma}, opts); },
        py::arg("base"), py::arg("t_mean"), py::arg("delta_t"), py::arg("lambda_") = 1.0, py::arg("gamma"),
        py::arg("opts") = TruncationOptions{});

    py::class_<RjZero>(m, "RjZero")
        .def_readonly("chi_star", &RjZero::chi_star)
        .def_readonly("r_i", &RjZero::r_i)
        .def_readonly("r_j", &RjZero::r_j)
        .def_readonly("iterations", &RjZero::iterations);
    m.def(
        "find_rj_zero",
        [](const Setup& base, double t_mean, double delta_t, double lambda, double gamma, double lo, double hi) {
            return find_rj_zero(base, {t_mean, delta_t}, {lambda, gamma}, lo, hi);
        },
        py::arg("base"), py::arg("t_mean"), py::arg("delta_t"), py::arg("lambda_"), py::arg("gamma"),
        py::arg("chi_lo"), py::arg("chi_hi"));

    py::class_<RateMatrix>(m, "RateMatrix")
        .def_readonly("diag", &RateMatrix::diag)
        .def_readonly("lower", &RateMatrix::lower)
        .def_readonly("upper", &RateMatrix::upper)
        .def("size", &RateMatrix::size)
        .def("n_max", &RateMatrix::n_max);
    m.def("build_rate_matrix", py::overload_cast<const Setup&, const TruncationOptions&>(&build_rate_matrix),
          py::arg("setup"), py::arg("opts") = TruncationOptions{});

    py::class_<TimeSeries>(m, "TimeSeries")
        .def_readonly("times", &TimeSeries::times)
        .def_readonly("populations", &TimeSeries::populations)
        .def_readonly("occupation", &TimeSeries::occupation)
        .def_readonly("energy", &TimeSeries::energy)
        .def_readonly("particle_current", &TimeSeries::particle_current)
        .def_readonly("energy_current", &TimeSeries::energy_current);
    m.def("log_time_grid", &log_time_grid, py::arg("t_min"), py::arg("t_max"), py::arg("points"));
    m.def("evolve", &evolve, py::arg("matrix"), py::arg("rho0"), py::arg("times"), py::arg("eps"));
    m.def("vacuum_state", &vacuum_state, py::arg("size"));

    py::class_<TssResult>(m, "TssResult")
        .def_readonly("lambda1", &TssResult::lambda1)
        .def_readonly("t_ss", &TssResult::t_ss)
        .def_readonly("spectral_radius", &TssResult::spectral_radius)
        .def_readonly("max_imag", &TssResult::max_imag);
    m.def("relaxation_time", &relaxation_time, py::arg("matrix"), py::arg("eps"));
    m.def("tss_harmonic", [](const Setup& s) { return tss_harmonic(s).t_ss; }, py::arg("setup"));
    m.def("tss_nesb", [](const Setup& s) { return tss_nesb(s).t_ss; }, py::arg("setup"));

    m.def(
        "run_command",
        [](const std::string& command, const std::map<std::string, std::string>& kv, std::size_t threads) {
            cli::Table t;
            if (command == "ness") t = cli::cmd_ness(kv, {threads});
            else if (command == "scan") t = cli::cmd_scan(kv, {threads});
            else if (command == "dynamics") t = cli::cmd_dynamics(kv, {threads});
            else if (command == "tss") t = cli::cmd_tss(kv, {threads});
            else throw Error(ErrorCode::ConfigError, "unknown command '" + command + "'");
            py::dict out;
            out["columns"] = t.columns;
            out["rows"] = t.rows;
            out["notes"] = t.notes;
            out["warnings"] = t.warnings;
            return out;
        },
        py::arg("command"), py::arg("config"), py::arg("threads") = 1,
        "Run a CLI command on a key/value config; rows use None for failed values.");
}
