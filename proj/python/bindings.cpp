// Copyright 2026 The gloinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the gloinv core. Results with many fields are returned
// as JSON text and decoded on the Python side.

#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <gloinv/algebraic.hpp>
#include <gloinv/bielecki.hpp>
#include <gloinv/cli.hpp>
#include <gloinv/core.hpp>
#include <gloinv/hypothesis.hpp>
#include <gloinv/report.hpp>
#include <gloinv/volterra.hpp>

namespace py = pybind11;
using namespace gloinv;

namespace {

VolterraKernel make_kernel(const std::string& name, double alpha, double p) {
  if (name == "log") return paper_kernel(alpha, p);
  if (name == "zero") return zero_kernel();
  if (name == "linear") return linear_kernel(p);
  if (name == "square") return square_kernel(p);
  throw Error(ErrorKind::invalid_input, "unknown kernel '" + name + "'");
}

Matrix forcing(const Vector& nodal) {
  return Matrix(nodal);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Global inversion certificates, weighted norms, and Volterra solvers";

  py::register_exception<Error>(m, "GloinvError", PyExc_ValueError);
  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("eta_quadratic", &eta_quadratic, py::arg("v"));
  m.def("eta_pnorm", &eta_pnorm, py::arg("samples"), py::arg("p"));
  m.def(
      "sobolev_energy",
      [](const Vector& values, double p) {
        auto [value, grad] = sobolev_energy(GridFunction::from_values(values), p);
        return std::make_pair(value, Vector(Eigen::Map<const Vector>(grad.data(), grad.size())));
      },
      py::arg("values"), py::arg("p"), "Energy (1/p) int |x'|^p of nodal values with x[0] = 0, and its gradient.");

  m.def(
      "singular_value_bounds",
      [](const Matrix& a) {
        const auto sv = singular_value_bounds(a);
        return std::make_pair(sv.min, sv.max);
      },
      py::arg("a"));

  m.def(
      "certify_example", [](std::uint64_t seed) {
        const auto c = certify_example(seed);
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : c.reports()) out.push_back(to_json(r));
        return out.dump();
      },
      py::arg("seed") = 20260101);
  m.def(
      "solve_example", [](std::uint64_t seed) { return to_json(solve_example(seed)).dump(); },
      py::arg("seed") = 20260101);

  m.def(
      "bielecki_sobolev_norm",
      [](const Vector& values, double p, double k) {
        return bielecki_sobolev_norm(GridFunction::from_values(values), BieleckiParams::make(p, k));
      },
      py::arg("values"), py::arg("p"), py::arg("k"));
  m.def(
      "bielecki_lp_norm",
      [](const Vector& values, double p, double k) { return bielecki_lp_norm(Matrix(values), BieleckiParams::make(p, k)); },
      py::arg("values"), py::arg("p"), py::arg("k"));
  m.def("select_k", &select_k, py::arg("a_bar"), py::arg("p"), py::arg("margin") = 0.1);
  m.def(
      "run_inequality_suite",
      [](int count, int n_cells, const std::vector<double>& ps, const std::vector<double>& ks, std::uint64_t seed) {
        const auto r = run_inequality_suite(count, n_cells, ps, ks, seed);
        return py::dict(py::arg("evaluated") = r.evaluated, py::arg("violations") = r.violations,
                        py::arg("worst_equivalence_slack") = r.worst_equivalence_slack,
                        py::arg("worst_poincare_slack") = r.worst_poincare_slack,
                        py::arg("worst_integral_slack") = r.worst_integral_slack);
      },
      py::arg("count") = 100, py::arg("n_cells") = 512, py::arg("ps") = std::vector<double>{2.0, 3.0},
      py::arg("ks") = std::vector<double>{0.5, 1.0, 5.0}, py::arg("seed") = 20260101);

  py::class_<VolterraKernel>(m, "VolterraKernel")
      .def_readonly("name", &VolterraKernel::name)
      .def_readonly("a_bar", &VolterraKernel::a_bar)
      .def_readonly("c_const", &VolterraKernel::c_const)
      .def_readonly("p", &VolterraKernel::p);
  m.def("kernel", &make_kernel, py::arg("name"), py::arg("alpha") = 1.0, py::arg("p") = 2.0,
        "Named kernel: log, zero, linear, or square.");

  m.def(
      "solve_forward",
      [](const VolterraKernel& k, const Vector& y) {
        const int n = static_cast<int>(y.size()) - 1;
        return Vector(solve_forward(k, forcing(y), n).values().col(0));
      },
      py::arg("kernel"), py::arg("y"), "Nodal solution for nodal forcing y on a uniform grid of [0, 1].");
  m.def(
      "solve_variational",
      [](const VolterraKernel& k, const Vector& y, double p, std::optional<double> weight) {
        const auto r = solve_variational(k, forcing(y), p, weight, SolveConfig{});
        return py::dict(py::arg("x") = Vector(r.x.values().col(0)), py::arg("k") = r.params.k,
                        py::arg("phi") = r.phi, py::arg("converged") = r.solve.converged,
                        py::arg("iterations") = r.solve.iterations);
      },
      py::arg("kernel"), py::arg("y"), py::arg("p") = 2.0, py::arg("k") = py::none());
  m.def(
      "kernel_constants",
      [](const VolterraKernel& k, double p, int n_cells) {
        const auto c = kernel_constants(k, p, n_cells);
        return py::dict(py::arg("a_p_integral") = c.a_p_integral, py::arg("a_bar_check") = c.a_bar_check,
                        py::arg("c_q_sup") = c.c_q_sup);
      },
      py::arg("kernel"), py::arg("p") = 2.0, py::arg("n_cells") = 2000);

  m.def(
      "run",
      [](const std::string& command, const std::string& config_json, std::optional<std::uint64_t> seed) {
        const auto cmd = cli::parse_command(command);
        if (!cmd) throw Error(ErrorKind::invalid_input, "unknown command '" + command + "'");
        cli::Overrides ov;
        ov.seed = seed;
        const auto doc = config_json.empty() ? nlohmann::json() : nlohmann::json::parse(config_json);
        const auto outcome = cli::run(cli::parse_config(*cmd, doc, ov));
        return std::make_pair(outcome.exit_code, outcome.report.dump());
      },
      py::arg("command"), py::arg("config_json") = "", py::arg("seed") = py::none(),
      "Runs a command pipeline; returns (exit_code, report JSON text).");
}
