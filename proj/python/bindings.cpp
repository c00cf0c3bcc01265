// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the IRS sensing simulator.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <utility>
#include <vector>

#include "irs/analysis.hpp"
#include "irs/beamform.hpp"
#include "irs/channel.hpp"
#include "irs/checks.hpp"
#include "irs/errors.hpp"
#include "irs/experiment.hpp"
#include "irs/sdp.hpp"
#include "irs/snr.hpp"

namespace py = pybind11;
using namespace irs;

namespace {

std::pair<double, double> to_pair(const Point2& p) { return {p.x, p.y}; }
Point2 to_point(const std::pair<double, double>& p) { return {p.first, p.second}; }

ReflectPattern pattern(const RealVector& phases) { return ReflectPattern(phases); }

py::dict sweep_row(const SweepRow& r) {
  py::dict d;
  d["channel"] = std::string(to_string(r.channel));
  d["arch"] = std::string(to_string(r.arch));
  d["scheme"] = std::string(to_string(r.scheme));
  d["N"] = r.n;
  d["snr_db_mean"] = r.snr_db_mean;
  d["snr_db_ci95"] = r.snr_db_ci95;
  d["trials"] = r.trials;
  d["seed"] = r.seed;
  d["warnings"] = r.warnings;
  return d;
}

py::list sweep_rows(const SweepResult& res) {
  py::list out;
  for (const auto& r : res.rows) out.append(sweep_row(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_irs_sensing, m) {
  m.doc() = "Fully- versus semi-passive IRS sensing SNR simulator.";

  auto base = py::register_exception<Error>(m, "IrsError", PyExc_RuntimeError);
  py::register_exception<ConfigInvalid>(m, "ConfigInvalid", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<NonHermitianInput>(m, "NonHermitianInput", base.ptr());
  py::register_exception<NotPsd>(m, "NotPsd", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<NonPositiveDistance>(m, "NonPositiveDistance", base.ptr());
  py::register_exception<DegenerateChannel>(m, "DegenerateChannel", base.ptr());
  py::register_exception<InvalidCovariance>(m, "InvalidCovariance", base.ptr());
  py::register_exception<ScaStalled>(m, "ScaStalled", base.ptr());
  py::register_exception<NonPositiveData>(m, "NonPositiveData", base.ptr());
  py::register_exception<GridMismatch>(m, "GridMismatch", base.ptr());

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_property(
          "bs_pos", [](const SystemConfig& c) { return to_pair(c.bs_pos); },
          [](SystemConfig& c, std::pair<double, double> p) { c.bs_pos = to_point(p); })
      .def_property(
          "irs_pos", [](const SystemConfig& c) { return to_pair(c.irs_pos); },
          [](SystemConfig& c, std::pair<double, double> p) { c.irs_pos = to_point(p); })
      .def_property(
          "target_pos", [](const SystemConfig& c) { return to_pair(c.target_pos); },
          [](SystemConfig& c, std::pair<double, double> p) { c.target_pos = to_point(p); })
      .def_readwrite("m_t", &SystemConfig::m_t)
      .def_readwrite("m_r", &SystemConfig::m_r)
      .def_readwrite("n", &SystemConfig::n)
      .def_readwrite("spacing_ratio", &SystemConfig::spacing_ratio)
      .def_readwrite("p0", &SystemConfig::p0)
      .def_readwrite("sigma2", &SystemConfig::sigma2)
      .def_readwrite("k0", &SystemConfig::k0)
      .def_readwrite("d0", &SystemConfig::d0)
      .def_readwrite("alpha_bs_irs", &SystemConfig::alpha_bs_irs)
      .def_readwrite("alpha_irs_target", &SystemConfig::alpha_irs_target)
      .def_readwrite("rcs", &SystemConfig::rcs)
      .def_readwrite("symbols", &SystemConfig::symbols)
      .def_readwrite("reciprocal", &SystemConfig::reciprocal)
      .def("validate", &SystemConfig::validate)
      .def("with_elements", &SystemConfig::with_elements, py::arg("n"));

  py::class_<SweepControls>(m, "SweepControls")
      .def(py::init<>())
      .def_readwrite("n_min", &SweepControls::n_min)
      .def_readwrite("n_max", &SweepControls::n_max)
      .def_readwrite("n_step", &SweepControls::n_step)
      .def_readwrite("trials", &SweepControls::trials)
      .def_readwrite("rand_count", &SweepControls::rand_count)
      .def_readwrite("sca_max_iter", &SweepControls::sca_max_iter)
      .def("grid", &SweepControls::grid);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("system", &ExperimentConfig::system)
      .def_readwrite("sweep", &ExperimentConfig::sweep);

  m.def("parse_config", [](const std::string& text) { return parse_config_text(text); },
        py::arg("text"), "Parse `key = value` config text.");
  m.def("load_config", &load_config, py::arg("path"));

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_readonly("bs_to_irs", &ChannelSet::bs_to_irs)
      .def_readonly("irs_to_bs", &ChannelSet::irs_to_bs)
      .def_readonly("target_steering", &ChannelSet::target_steering)
      .def_readonly("sensor_steering", &ChannelSet::sensor_steering)
      .def_readonly("alpha", &ChannelSet::alpha)
      .def_readonly("bs_irs_path_loss", &ChannelSet::bs_irs_path_loss)
      .def_property_readonly("irs_steering", [](const ChannelSet& c) -> py::object {
        if (!c.los) return py::none();
        return py::cast(c.los->irs_steering);
      });

  m.def("steering_vector", &steering_vector, py::arg("count"), py::arg("spacing_ratio"),
        py::arg("angle"));
  m.def("path_loss", &path_loss, py::arg("distance"), py::arg("exponent"), py::arg("config"));
  m.def("geometry", [](const SystemConfig& c) {
    const Geometry g = geometry(c);
    py::dict d;
    d["d_bs_irs"] = g.d_bs_irs;
    d["d_irs_target"] = g.d_irs_target;
    d["theta"] = g.theta;
    d["theta_bs"] = g.theta_bs;
    return d;
  });
  m.def("target_coefficient", &target_coefficient, py::arg("config"));
  m.def("los_channels", &los_channels, py::arg("config"));
  m.def(
      "rayleigh_channels",
      [](const SystemConfig& c, std::uint64_t seed) {
        Rng rng(seed);
        return rayleigh_channels(c, rng);
      },
      py::arg("config"), py::arg("seed"));

  m.def(
      "snr_opt_tx",
      [](const RealVector& phases, const ChannelSet& ch, double p0, double sigma2) {
        const auto phi = pattern(phases);
        return std::make_pair(snr_opt_tx_fully(phi, ch, p0, sigma2),
                              snr_opt_tx_semi(phi, ch, p0, sigma2));
      },
      py::arg("phases"), py::arg("channels"), py::arg("p0"), py::arg("sigma2"),
      "Fully- and semi-passive SNR (linear) under maximum ratio transmission.");
  m.def(
      "snr",
      [](const ComplexMatrix& r, const RealVector& phases, const ChannelSet& ch, double p0,
         double sigma2) {
        const TransmitCovariance cov{HermitianMatrix(r), p0};
        const auto phi = pattern(phases);
        return std::make_pair(snr_fully_passive(cov, phi, ch, sigma2),
                              snr_semi_passive(cov, phi, ch, sigma2));
      },
      py::arg("covariance"), py::arg("phases"), py::arg("channels"), py::arg("p0"),
      py::arg("sigma2"), "Fully- and semi-passive SNR (linear) for a transmit covariance.");
  m.def(
      "los_optimal_phases",
      [](const ComplexVector& h, const ComplexVector& a) { return los_optimal_phases(h, a).phases(); },
      py::arg("h"), py::arg("a"));
  m.def(
      "random_phases",
      [](int n, std::uint64_t seed) {
        Rng rng(seed);
        return random_phases(n, rng).phases();
      },
      py::arg("n"), py::arg("seed"));

  m.def(
      "solve_unit_diag_sdp",
      [](const ComplexMatrix& c, double tol, int max_iter) {
        SdpOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        const auto sol = solve_unit_diag_sdp(HermitianMatrix(c), opts);
        py::dict d;
        d["v"] = sol.v.matrix();
        d["objective"] = sol.objective;
        d["converged"] = sol.converged;
        d["iterations"] = sol.iterations;
        return d;
      },
      py::arg("cost"), py::arg("tol") = 1e-6, py::arg("max_iter") = 5000,
      "maximize tr(C V) over V PSD with unit diagonal.");

  m.def(
      "optimize_p3",
      [](const ChannelSet& ch, std::uint64_t seed, int rand_count) {
        Rng rng(seed);
        const auto r = optimize_p3(ch, rand_count, rng);
        py::dict d;
        d["phases"] = r.phases.phases();
        d["achieved"] = r.achieved;
        d["sdp_objective"] = r.sdp_objective;
        d["warnings"] = r.solver_warnings;
        return d;
      },
      py::arg("channels"), py::arg("seed"), py::arg("rand_count") = 100,
      "Semi-passive reflective beamforming by SDR and Gaussian randomization.");
  m.def(
      "optimize_p2",
      [](const ChannelSet& ch, std::uint64_t seed, int rand_count, int max_iter) {
        Rng rng(seed);
        ScaOptions opts;
        opts.max_iter = max_iter;
        const auto r = optimize_p2(ch, opts, rand_count, rng);
        py::dict d;
        d["phases"] = r.phases.phases();
        d["achieved"] = r.achieved;
        d["objective_trace"] = r.trace.objective_per_iteration;
        d["warnings"] = r.solver_warnings;
        return d;
      },
      py::arg("channels"), py::arg("seed"), py::arg("rand_count") = 100, py::arg("max_iter") = 50,
      "Fully-passive reflective beamforming by SDR, SCA and Gaussian randomization.");

  m.def(
      "closed_form_snr_los",
      [](const SystemConfig& c, int n) {
        const auto s = closed_form_snr_los(c, n);
        return std::make_pair(s.fully, s.semi);
      },
      py::arg("config"), py::arg("n"));
  m.def(
      "los_crossover",
      [](const SystemConfig& c) {
        const auto r = los_crossover(c);
        return std::make_pair(r.threshold_continuous, r.threshold_integer);
      },
      py::arg("config"));
  m.def(
      "rayleigh_crossover",
      [](const SystemConfig& c) {
        const auto r = rayleigh_crossover(c);
        return std::make_pair(r.threshold_continuous, r.threshold_integer);
      },
      py::arg("config"));
  m.def(
      "rayleigh_bounds_fully",
      [](int n, int m_t, int m_r) {
        const auto b = rayleigh_bounds_fully(n, m_t, m_r);
        return std::make_pair(b.lower, b.upper);
      },
      py::arg("n"), py::arg("m_t"), py::arg("m_r"));
  m.def(
      "rayleigh_bounds_semi",
      [](int n, int m_t, int m_r) {
        const auto b = rayleigh_bounds_semi(n, m_t, m_r);
        return std::make_pair(b.lower, b.upper);
      },
      py::arg("n"), py::arg("m_t"), py::arg("m_r"));
  m.def(
      "fit_scaling_exponent",
      [](const std::vector<double>& n, const std::vector<double>& value) {
        if (n.size() != value.size()) throw DimensionMismatch("n and value lengths differ");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n.size(); ++i) pts.emplace_back(n[i], value[i]);
        return fit_scaling_exponent(pts);
      },
      py::arg("n"), py::arg("value"));

  m.def(
      "run_sweep",
      [](const ExperimentConfig& cfg, std::uint64_t seed) {
        SweepResult res;
        {
          py::gil_scoped_release release;
          res = run_sweep(cfg, seed);
        }
        return sweep_rows(res);
      },
      py::arg("config"), py::arg("seed"), "Run an N sweep; returns one dict per CSV row.");
  m.def(
      "run_sweep_file",
      [](const std::filesystem::path& config_path, const std::filesystem::path& output_path,
         std::uint64_t seed) {
        SweepResult res;
        {
          py::gil_scoped_release release;
          res = run_sweep(config_path, output_path, seed);
        }
        return sweep_rows(res);
      },
      py::arg("config_path"), py::arg("output_path"), py::arg("seed"));
  m.def(
      "run_checks",
      [](const SystemConfig& c, std::uint64_t seed) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : run_consistency_checks(c, seed)) out.emplace_back(r.name, r.passed, r.detail);
        return out;
      },
      py::arg("config"), py::arg("seed") = 1);
  m.attr("CSV_HEADER") = std::string(kCsvHeader);
}
