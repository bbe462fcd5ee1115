// Python bindings for the tomolab core: state construction, simulation,
// kernels, and the reconstruction estimators.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tomolab/cli_io.hpp"
#include "tomolab/errors.hpp"
#include "tomolab/gaussian_sim.hpp"
#include "tomolab/kernels.hpp"
#include "tomolab/reconstruct.hpp"

namespace py = pybind11;
using namespace tomolab;

namespace {

std::vector<PhaseSpacePoint> to_points(
    const std::vector<std::vector<std::complex<double>>>& alphas) {
  std::vector<PhaseSpacePoint> pts(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) pts[i].alpha = alphas[i];
  return pts;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "multimode homodyne tomography: simulation and reconstruction";

  py::register_exception<bound_error>(mod, "BoundError", PyExc_ValueError);
  py::register_exception<io_error>(mod, "IoError", PyExc_IOError);

  py::enum_<WeightKind>(mod, "WeightKind")
      .value("quasidistribution", WeightKind::quasidistribution)
      .value("moment", WeightKind::moment);

  py::class_<LOConfiguration>(mod, "LOConfiguration")
      .def(py::init([](std::vector<double> theta, std::vector<double> psi) {
             return LOConfiguration{std::move(theta), std::move(psi)};
           }),
           py::arg("theta"), py::arg("psi"))
      .def_readonly("theta", &LOConfiguration::theta)
      .def_readonly("psi", &LOConfiguration::psi)
      .def_property_readonly("modes", &LOConfiguration::modes);

  py::class_<SamplingGrid>(mod, "SamplingGrid")
      .def_readonly("modes", &SamplingGrid::modes)
      .def_readonly("kind", &SamplingGrid::kind)
      .def_readonly("theta_max", &SamplingGrid::theta_max)
      .def_readonly("psi_max", &SamplingGrid::psi_max)
      .def("size", &SamplingGrid::size)
      .def("config_at", &SamplingGrid::config_at)
      .def("weight_at", &SamplingGrid::weight_at);
  mod.def("build_grid", &build_grid, py::arg("modes"), py::arg("theta_count"),
          py::arg("psi_count"), py::arg("kind"));
  mod.def("direction_cosines", &direction_cosines);
  mod.def("jacobian_weight", &jacobian_weight);
  mod.def("projected_quadrature", &projected_quadrature);

  py::class_<GaussianState>(mod, "GaussianState")
      .def_readonly("modes", &GaussianState::modes)
      .def_readonly("mean", &GaussianState::mean)
      .def_readonly("covariance", &GaussianState::covariance);
  mod.def("vacuum", &vacuum);
  mod.def("squeeze", &squeeze);
  mod.def("beam_splitter", &beam_splitter);
  mod.def("phase_shift", &phase_shift);
  mod.def("displace", &displace);
  mod.def("three_mode_demo_state", &three_mode_demo_state);
  mod.def("is_physical", &is_physical, py::arg("state"), py::arg("tol") = 1e-10);
  mod.def("quadrature_stats", &quadrature_stats);
  mod.def("analytic_q", &analytic_q);
  mod.def("analytic_moment", &analytic_moment);

  py::class_<MeasurementRecord>(mod, "MeasurementRecord")
      .def_readonly("grid_index", &MeasurementRecord::grid_index)
      .def_readonly("x", &MeasurementRecord::x);
  py::class_<QuadratureDataset>(mod, "QuadratureDataset")
      .def_readonly("grid", &QuadratureDataset::grid)
      .def_readonly("eta", &QuadratureDataset::eta)
      .def_readonly("seed", &QuadratureDataset::seed)
      .def_property_readonly(
          "record_count",
          [](const QuadratureDataset& d) { return d.records.size(); });
  mod.def("simulate_dataset", &simulate_dataset, py::arg("state"),
          py::arg("grid"), py::arg("per_point"), py::arg("eta"), py::arg("seed"));
  mod.def("write_dataset", &write_dataset, py::arg("dataset"), py::arg("path"),
          py::arg("binary") = false, py::arg("expanded") = false);
  mod.def("read_dataset", &read_dataset);

  mod.def(
      "s_kernel",
      [](double xi, int modes, double s, double eta) {
        return s_kernel(xi, KernelSpec{modes, s, eta});
      },
      py::arg("xi"), py::arg("modes"), py::arg("s") = -1.0, py::arg("eta") = 1.0);
  mod.def(
      "pattern_function",
      [](std::vector<int> m, std::vector<int> n, double x,
         std::vector<double> theta, double eta) {
        const int modes = static_cast<int>(m.size());
        return pattern_function(MomentIndex{std::move(m), std::move(n)}, x,
                                theta, KernelSpec{modes, -1.0, eta});
      },
      py::arg("m"), py::arg("n"), py::arg("x"), py::arg("theta"),
      py::arg("eta") = 1.0);
  mod.def("g_poly", &g_poly);
  mod.def("f_biorthogonal_closed", &f_biorthogonal_closed);
  mod.def(
      "moment_kernel",
      [](std::vector<int> m, std::vector<int> n, double x,
         const LOConfiguration& config, double s, double eta) {
        return moment_kernel(MomentIndex{std::move(m), std::move(n)}, x, config,
                             s, eta);
      },
      py::arg("m"), py::arg("n"), py::arg("x"), py::arg("config"),
      py::arg("s") = 1.0, py::arg("eta") = 1.0);

  py::class_<Estimate>(mod, "Estimate")
      .def_readonly("value", &Estimate::value)
      .def_readonly("std_error", &Estimate::std_error);

  mod.def(
      "estimate_quasidist",
      [](const QuadratureDataset& data, double s,
         const std::vector<std::vector<std::complex<double>>>& alphas,
         int threads) {
        const auto table = estimate_quasidist(data, s, to_points(alphas), threads);
        return table.values;
      },
      py::arg("dataset"), py::arg("s"), py::arg("alpha_points"),
      py::arg("threads") = 0);
  mod.def(
      "estimate_rho",
      [](const QuadratureDataset& data, int cutoff, int threads) {
        const auto table = estimate_rho(data, cutoff, threads);
        py::dict out;
        for (std::size_t i = 0; i < table.indices.size(); ++i)
          out[py::make_tuple(py::tuple(py::cast(table.indices[i].m)),
                             py::tuple(py::cast(table.indices[i].n)))] =
              table.values[i];
        return out;
      },
      py::arg("dataset"), py::arg("cutoff"), py::arg("threads") = 0);
  mod.def(
      "estimate_moments",
      [](const QuadratureDataset& data, double s, int max_order, int threads) {
        const auto table = estimate_moments(data, s, max_order, threads);
        py::dict out;
        for (std::size_t i = 0; i < table.indices.size(); ++i)
          out[py::make_tuple(py::tuple(py::cast(table.indices[i].m)),
                             py::tuple(py::cast(table.indices[i].n)))] =
              table.values[i];
        return out;
      },
      py::arg("dataset"), py::arg("s"), py::arg("max_order"),
      py::arg("threads") = 0);
  mod.def(
      "mandel_q",
      [](const QuadratureDataset& data, double s, int mode, int threads) {
        const auto table = estimate_moments(data, s, 4, threads);
        const auto q = mandel_q(table, mode);
        return py::make_tuple(q.q, q.std_error);
      },
      py::arg("dataset"), py::arg("s") = 1.0, py::arg("mode") = 0,
      py::arg("threads") = 0);
}
