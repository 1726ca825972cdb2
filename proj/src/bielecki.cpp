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

#include "gloinv/bielecki.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gloinv/sampling.hpp"
#include "gloinv/volterra.hpp"

namespace gloinv {

BieleckiParams BieleckiParams::make(double p, double k) {
  require_exponent(p);
  if (!(k >= 0.0) || !std::isfinite(k)) throw Error(ErrorKind::invalid_input, "Bielecki weight k must be >= 0");
  return BieleckiParams{p, k};
}

Vector bielecki_cell_weights(int n_cells, double k) {
  if (n_cells < 1) throw Error(ErrorKind::invalid_input, "weights need n_cells >= 1");
  const double h = 1.0 / n_cells;
  Vector w(n_cells);
  double left = 1.0;
  for (int c = 0; c < n_cells; ++c) {
    const double right = std::exp(-k * (c + 1) * h);
    w(c) = 0.5 * h * (left + right);
    left = right;
  }
  return w;
}

namespace {

Vector node_weights(int n_cells, double k) {
  Vector w = trapezoid_weights(n_cells);
  if (k != 0.0)
    for (int i = 0; i <= n_cells; ++i) w(i) *= std::exp(-k * static_cast<double>(i) / n_cells);
  return w;
}

double weighted_slope_norm(const GridFunction& x, double p, double k) {
  require_exponent(p);
  const Matrix slopes = x.derivatives();
  const Vector w = bielecki_cell_weights(x.n_cells(), k);
  double s = 0.0;
  for (int c = 0; c < x.n_cells(); ++c) s += w(c) * std::pow(slopes.row(c).norm(), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

double sobolev_norm(const GridFunction& x, double p) { return weighted_slope_norm(x, p, 0.0); }

double bielecki_sobolev_norm(const GridFunction& x, const BieleckiParams& params) {
  return weighted_slope_norm(x, params.p, params.k);
}

double bielecki_lp_norm(const Matrix& nodal, const BieleckiParams& params) {
  require_exponent(params.p);
  if (nodal.rows() < 2) throw Error(ErrorKind::grid_too_coarse, "weighted L^p norm needs at least one cell");
  const Vector w = node_weights(static_cast<int>(nodal.rows()) - 1, params.k);
  double s = 0.0;
  for (Eigen::Index i = 0; i < nodal.rows(); ++i) s += w(i) * std::pow(nodal.row(i).norm(), params.p);
  return std::pow(s, 1.0 / params.p);
}

double bielecki_lp_norm(const GridFunction& x, const BieleckiParams& params) {
  return bielecki_lp_norm(x.values(), params);
}

Vector running_abs_integral(const Matrix& nodal) {
  const Eigen::Index n = nodal.rows() - 1;
  if (n < 1) throw Error(ErrorKind::grid_too_coarse, "running integral needs at least one cell");
  const double h = 1.0 / static_cast<double>(n);
  Vector out = Vector::Zero(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) out(i + 1) = out(i) + 0.5 * h * (nodal.row(i).norm() + nodal.row(i + 1).norm());
  return out;
}

double quadrature_tolerance(int n_cells, double magnitude) {
  const double h = 1.0 / n_cells;
  return 1e-9 * (1.0 + magnitude) + h * h * magnitude;
}

EquivalenceCheck check_equivalence(const GridFunction& x, const BieleckiParams& params) {
  const double plain = sobolev_norm(x, params.p);
  const double weighted = bielecki_sobolev_norm(x, params);
  EquivalenceCheck out;
  out.lower_slack = weighted - std::exp(-params.k / params.p) * plain;
  out.upper_slack = plain - weighted;
  out.tolerance = 1e-9 * (1.0 + plain + weighted);
  out.holds = out.lower_slack >= -out.tolerance && out.upper_slack >= -out.tolerance;
  return out;
}

namespace {

void require_positive_k(const BieleckiParams& params) {
  if (!(params.k > 0.0)) throw Error(ErrorKind::invalid_input, "this inequality needs k > 0");
}

InequalityCheck finish(double lhs, double rhs, int n_cells) {
  InequalityCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.slack = rhs - lhs;
  out.tolerance = quadrature_tolerance(n_cells, std::max(std::abs(lhs), std::abs(rhs)));
  out.holds = out.slack >= -out.tolerance;
  return out;
}

}  // namespace

InequalityCheck check_poincare_bielecki(const GridFunction& x, const BieleckiParams& params) {
  require_positive_k(params);
  return finish(bielecki_lp_norm(x, params), bielecki_sobolev_norm(x, params) / std::pow(params.k, 1.0 / params.p),
                x.n_cells());
}

InequalityCheck check_integral_bound(const GridFunction& x, const BieleckiParams& params) {
  require_positive_k(params);
  const Vector running = running_abs_integral(x.values());
  return finish(bielecki_lp_norm(Matrix(running), params),
                bielecki_sobolev_norm(x, params) / std::pow(params.k, 2.0 / params.p), x.n_cells());
}

double select_k(double a_bar, double p, double margin) {
  require_exponent(p);
  if (!(a_bar >= 0.0) || !std::isfinite(a_bar)) throw Error(ErrorKind::invalid_input, "a_bar must be finite and >= 0");
  if (!(margin > 0.0)) throw Error(ErrorKind::invalid_input, "k margin must be positive");
  return std::max(1.0, std::pow(a_bar, p / 2.0)) * (1.0 + margin);
}

InequalityCheck coercivity_lower_bound(const GridFunction& x, const Matrix& y, const VolterraKernel& kernel,
                                       const BieleckiParams& params) {
  require_positive_k(params);
  const int n = x.n_cells();
  const double phi = variational_objective(x, y, kernel, params).value;
  const double lhs = std::pow(params.p * phi, 1.0 / params.p);

  Vector memory_b = Vector::Zero(n + 1);
  const Vector w = trapezoid_weights(n);
  for (int i = 1; i <= n; ++i) {
    const double t = x.node(i);
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += (j == 0 || j == i ? 0.5 : 1.0) * kernel.envelope_b(t, x.node(j));
    memory_b(i) = s * x.step();
  }
  const double factor = 1.0 - kernel.a_bar / std::pow(params.k, 2.0 / params.p);
  const double rhs = factor * bielecki_sobolev_norm(x, params) - bielecki_lp_norm(y, params) -
                     bielecki_lp_norm(Matrix(memory_b), params);
  InequalityCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.slack = lhs - rhs;
  out.tolerance = quadrature_tolerance(n, std::max(std::abs(lhs), std::abs(rhs)));
  out.holds = out.slack >= -out.tolerance;
  return out;
}

GridFunction random_grid_function(int n_cells, std::uint64_t seed, std::uint64_t index) {
  using sampling::counter_uniform;
  constexpr int kModes = 6;
  const std::uint64_t stream = 1000 + index;
  auto u = [&](std::uint64_t slot) { return counter_uniform(seed, stream, slot); };

  double amp[kModes];
  double phase[kModes];
  for (int m = 0; m < kModes; ++m) {
    amp[m] = (2.0 * u(2 * m) - 1.0) * 4.0 / (m + 1);
    phase[m] = 2.0 * std::numbers::pi * u(2 * m + 1);
  }
  const double offset = 6.0 * u(100) - 3.0;
  const double bump_center = u(101);
  const double bump_width = 0.02 + 0.2 * u(102);
  const double bump_height = 20.0 * u(103) - 10.0;

  Matrix slopes(n_cells, 1);
  for (int c = 0; c < n_cells; ++c) {
    const double t = (c + 0.5) / n_cells;
    double v = offset;
    for (int m = 0; m < kModes; ++m) v += amp[m] * std::cos((m + 1) * std::numbers::pi * t + phase[m]);
    const double z = (t - bump_center) / bump_width;
    v += bump_height * std::exp(-z * z);
    slopes(c, 0) = v;
  }
  return GridFunction::from_derivatives(slopes);
}

InequalitySuiteResult run_inequality_suite(int count, int n_cells, const std::vector<double>& ps,
                                           const std::vector<double>& ks, std::uint64_t seed) {
  if (count <= 0 || n_cells < 2) throw Error(ErrorKind::invalid_input, "suite needs count > 0 and n_cells >= 2");
  InequalitySuiteResult out;
  out.worst_equivalence_slack = out.worst_poincare_slack = out.worst_integral_slack =
      std::numeric_limits<double>::infinity();
  auto note = [&](const char* which, int i, double p, double k, double slack) {
    ++out.violations;
    if (out.violation_details.size() < 20) {
      std::ostringstream os;
      os << which << " violated: function " << i << ", p=" << p << ", k=" << k << ", slack=" << slack;
      out.violation_details.push_back(os.str());
    }
  };
  for (int i = 0; i < count; ++i) {
    const GridFunction x = random_grid_function(n_cells, seed, static_cast<std::uint64_t>(i));
    for (double p : ps) {
      for (double k : ks) {
        const auto params = BieleckiParams::make(p, k);
        const auto eq = check_equivalence(x, params);
        const double eq_slack = std::min(eq.lower_slack, eq.upper_slack);
        out.worst_equivalence_slack = std::min(out.worst_equivalence_slack, eq_slack);
        if (!eq.holds) note("equivalence", i, p, k, eq_slack);
        ++out.evaluated;
        if (k > 0.0) {
          const auto pc = check_poincare_bielecki(x, params);
          out.worst_poincare_slack = std::min(out.worst_poincare_slack, pc.slack);
          if (!pc.holds) note("weighted Poincare", i, p, k, pc.slack);
          const auto ib = check_integral_bound(x, params);
          out.worst_integral_slack = std::min(out.worst_integral_slack, ib.slack);
          if (!ib.holds) note("integral bound", i, p, k, ib.slack);
          out.evaluated += 2;
        }
      }
    }
  }
  return out;
}

}  // namespace gloinv
