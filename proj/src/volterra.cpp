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

#include "gloinv/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gloinv/sampling.hpp"

namespace gloinv {

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }
Matrix scalar_matrix(double v) { return Matrix::Constant(1, 1, v); }

// Weight of node j in the trapezoidal product rule over [0, t_i].
double product_weight(int i, int j, double h) { return (j == 0 || j == i) ? 0.5 * h : h; }

void require_forcing(const Matrix& y, int n_cells, int dim) {
  if (y.rows() != n_cells + 1 || y.cols() != dim) {
    std::ostringstream os;
    os << "forcing must have " << n_cells + 1 << " rows and " << dim << " columns";
    throw Error(ErrorKind::invalid_input, os.str());
  }
  if (!y.allFinite()) throw Error(ErrorKind::invalid_input, "forcing has non-finite samples");
}

// sup_t int_0^t f(t, s)^power ds by nested trapezoid; also returns the
// outer integral of the inner values.
std::pair<double, double> nested_power(const std::function<double(double, double)>& f, double power, int n) {
  const double h = 1.0 / n;
  double sup = 0.0;
  double outer = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = i * h;
    double inner = 0.0;
    for (int j = 0; j <= i; ++j) inner += product_weight(i, j, h) * std::pow(std::abs(f(t, j * h)), power);
    sup = std::max(sup, inner);
    outer += (i == n ? 0.5 : 1.0) * h * inner;
  }
  return {sup, outer};
}

}  // namespace

VolterraKernel zero_kernel(int dim) {
  if (dim < 1) throw Error(ErrorKind::invalid_input, "kernel dimension must be positive");
  VolterraKernel k;
  k.name = "zero";
  k.dim = dim;
  k.phi = [dim](double, double, const Vector&) -> Vector { return Vector::Zero(dim); };
  k.phi_x = [dim](double, double, const Vector&) -> Matrix { return Matrix::Zero(dim, dim); };
  k.envelope_a = k.envelope_b = k.envelope_c = [](double, double) { return 0.0; };
  k.growth = [](double) { return 0.0; };
  return k;
}

VolterraKernel linear_kernel(double p) {
  require_exponent(p);
  VolterraKernel k;
  k.name = "linear";
  k.phi = [](double, double, const Vector& x) -> Vector { return x; };
  k.phi_x = [](double, double, const Vector&) -> Matrix { return scalar_matrix(1.0); };
  k.envelope_a = k.envelope_c = [](double, double) { return 1.0; };
  k.envelope_b = [](double, double) { return 0.0; };
  k.growth = [](double) { return 1.0; };
  k.a_bar = 1.0;
  k.c_const = 1.0;
  k.p = p;
  return k;
}

VolterraKernel square_kernel(double p) {
  VolterraKernel k = linear_kernel(p);
  k.name = "square";
  k.phi = [](double, double, const Vector& x) -> Vector { return scalar(x(0) * x(0)); };
  k.phi_x = [](double, double, const Vector& x) -> Matrix { return scalar_matrix(2.0 * x(0)); };
  k.growth = [](double r) { return 2.0 * r; };
  return k;
}

VolterraKernel paper_kernel(double alpha, double p) {
  require_exponent(p);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::invalid_input, "kernel coefficient must be positive");
  const double q = p / (p - 1.0);
  const double c_scale = std::pow(2.0, -p / q);
  VolterraKernel k;
  k.name = "log";
  k.p = p;
  k.phi = [alpha](double t, double s, const Vector& x) -> Vector {
    const double lag = std::max(t - s, 0.0);
    return scalar(alpha * std::pow(lag, 2.5) * std::log1p(lag * lag * x(0) * x(0)));
  };
  k.phi_x = [alpha](double t, double s, const Vector& x) -> Matrix {
    const double lag = std::max(t - s, 0.0);
    const double l2 = lag * lag;
    return scalar_matrix(alpha * std::pow(lag, 2.5) * 2.0 * l2 * x(0) / (1.0 + l2 * x(0) * x(0)));
  };
  k.envelope_a = k.envelope_b = [alpha](double t, double s) { return alpha * std::pow(std::max(t - s, 0.0), 2.5); };
  k.envelope_c = [c_scale](double t, double s) { return c_scale * std::pow(std::max(t - s, 0.0), 2.5); };
  k.growth = [alpha, c_scale](double r) { return alpha / c_scale * std::min(2.0 * r, 1.0); };
  // sup_t int_0^t a^p = alpha^p / (5p/2 + 1), attained at t = 1.
  k.a_bar = alpha * std::pow(2.0 / (5.0 * p + 2.0), 1.0 / p);
  k.c_const = log_kernel_c_bound(p);
  return k;
}

VolterraKernel tabulated_kernel(std::vector<double> lags, std::vector<double> weights, double p) {
  require_exponent(p);
  if (lags.size() < 2 || lags.size() != weights.size()) {
    throw Error(ErrorKind::invalid_input, "tabulated kernel needs at least two (lag, weight) pairs");
  }
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (!std::isfinite(lags[i]) || !std::isfinite(weights[i]) || (i > 0 && !(lags[i] > lags[i - 1]))) {
      throw Error(ErrorKind::invalid_input, "tabulated lags must be finite and strictly increasing");
    }
  }
  if (lags.front() > 0.0 || lags.back() < 1.0) throw Error(ErrorKind::invalid_input, "tabulated lags must cover [0, 1]");
  auto m = [lags = std::move(lags), weights = std::move(weights)](double lag) {
    const auto it = std::upper_bound(lags.begin(), lags.end(), lag);
    const std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(it - lags.begin()), 1, lags.size() - 1);
    const double frac = (lag - lags[hi - 1]) / (lags[hi] - lags[hi - 1]);
    return weights[hi - 1] + frac * (weights[hi] - weights[hi - 1]);
  };
  VolterraKernel k;
  k.name = "tabulated";
  k.p = p;
  k.phi = [m](double t, double s, const Vector& x) -> Vector { return m(t - s) * x; };
  k.phi_x = [m](double t, double s, const Vector&) -> Matrix { return scalar_matrix(m(t - s)); };
  k.envelope_a = k.envelope_c = [m](double t, double s) { return std::abs(m(t - s)); };
  k.envelope_b = [](double, double) { return 0.0; };
  k.growth = [](double) { return 1.0; };
  const auto [a_sup, a_total] = nested_power(k.envelope_a, p, 2000);
  (void)a_total;
  k.a_bar = std::pow(a_sup, 1.0 / p);
  k.c_const = nested_power(k.envelope_c, p / (p - 1.0), 2000).first;
  return k;
}

Matrix sample_forcing(int n_cells, const std::function<double(double)>& y) {
  if (n_cells < 1) throw Error(ErrorKind::invalid_input, "forcing needs n_cells >= 1");
  Matrix out(n_cells + 1, 1);
  for (int i = 0; i <= n_cells; ++i) out(i, 0) = y(static_cast<double>(i) / n_cells);
  return out;
}

Matrix memory_integrals(const GridFunction& x, const VolterraKernel& kernel) {
  if (x.dim() != kernel.dim) throw Error(ErrorKind::invalid_input, "grid function and kernel dimensions differ");
  const int n = x.n_cells();
  const double h = x.step();
  const Matrix& v = x.values();
  Matrix q = Matrix::Zero(n + 1, x.dim());
  for (int i = 1; i <= n; ++i) {
    const double t = x.node(i);
    for (int j = 0; j <= i; ++j) q.row(i) += product_weight(i, j, h) * kernel.phi(t, x.node(j), v.row(j).transpose()).transpose();
  }
  return q;
}

Matrix residual(const GridFunction& x, const Matrix& y, const VolterraKernel& kernel) {
  require_forcing(y, x.n_cells(), x.dim());
  const int n = x.n_cells();
  const Matrix q = memory_integrals(x, kernel);
  return x.derivatives() + 0.5 * (q.topRows(n) + q.bottomRows(n)) - 0.5 * (y.topRows(n) + y.bottomRows(n));
}

GridFunction solve_forward(const VolterraKernel& kernel, const Matrix& y, int n_cells) {
  if (n_cells < 8) throw Error(ErrorKind::grid_too_coarse, "solve_forward needs n_cells >= 8");
  require_forcing(y, n_cells, kernel.dim);
  const double h = 1.0 / n_cells;
  const int d = kernel.dim;
  Matrix x = Matrix::Zero(n_cells + 1, d);
  Vector slope = y.row(0).transpose();  // x'(0) = y(0) - Q(0), Q(0) = 0
  for (int i = 0; i < n_cells; ++i) {
    const int next = i + 1;
    const double t = next * h;
    // Memory sum over the known nodes; only the diagonal term involves x_{i+1}.
    Vector known = Vector::Zero(d);
    for (int j = 0; j <= i; ++j) known += product_weight(next, j, h) * kernel.phi(t, j * h, x.row(j).transpose());
    auto slope_at = [&](const Vector& candidate) {
      return Vector(y.row(next).transpose() - known - 0.5 * h * kernel.phi(t, t, candidate));
    };
    const Vector xi = x.row(i).transpose();
    const Vector predicted = xi + h * slope;
    const Vector candidate = xi + 0.5 * h * (slope + slope_at(predicted));
    slope = slope_at(candidate);
    if (!candidate.allFinite() || !slope.allFinite()) {
      throw Error(ErrorKind::divergence, "solve_forward diverged at step " + std::to_string(next));
    }
    x.row(next) = candidate.transpose();
  }
  return GridFunction::from_values(std::move(x));
}

NonlinearMap weighted_residual_map(const VolterraKernel& kernel, const Matrix& y, const BieleckiParams& params) {
  require_exponent(params.p);
  const int n = static_cast<int>(y.rows()) - 1;
  const int d = kernel.dim;
  if (n < 2) throw Error(ErrorKind::grid_too_coarse, "variational problem needs n_cells >= 2");
  require_forcing(y, n, d);
  Vector scale = bielecki_cell_weights(n, params.k);
  for (int c = 0; c < n; ++c) scale(c) = std::pow(scale(c), 1.0 / params.p);

  NonlinearMap map;
  map.dim = n * d;
  map.eval = [kernel, y, scale, n, d](const Vector& free) -> Vector {
    const Matrix r = residual(GridFunction::from_free_values(free, n, d), y, kernel);
    Vector out(n * d);
    for (int c = 0; c < n; ++c) out.segment(c * d, d) = scale(c) * r.row(c).transpose();
    return out;
  };
  map.jacobian = [kernel, scale, n, d](const Vector& free) -> Matrix {
    const double h = 1.0 / n;
    const GridFunction x = GridFunction::from_free_values(free, n, d);
    const Matrix& v = x.values();
    // dq[i][j] = dQ_i / dx_j for 1 <= j <= i, stored densely by node.
    Matrix dq = Matrix::Zero(static_cast<Eigen::Index>(n + 1) * d, static_cast<Eigen::Index>(n) * d);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= i; ++j)
        dq.block(i * d, (j - 1) * d, d, d) = product_weight(i, j, h) * kernel.phi_x(i * h, j * h, v.row(j).transpose());
    Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
    const Matrix eye = Matrix::Identity(d, d) / h;
    for (int c = 0; c < n; ++c) {
      jac.middleRows(c * d, d) = 0.5 * (dq.middleRows(c * d, d) + dq.middleRows((c + 1) * d, d));
      jac.block(c * d, c * d, d, d) += eye;
      if (c > 0) jac.block(c * d, (c - 1) * d, d, d) -= eye;
      jac.middleRows(c * d, d) *= scale(c);
    }
    return jac;
  };
  return map;
}

VariationalValue variational_objective(const GridFunction& x, const Matrix& y, const VolterraKernel& kernel,
                                       const BieleckiParams& params) {
  const NonlinearMap map = weighted_residual_map(kernel, y, params);
  const NormalizationFunctional eta = block_power_functional(params.p, kernel.dim);
  const Vector free = x.free_values();
  const Vector s = map(free);
  VariationalValue out;
  out.value = eta.value(s);
  out.gradient = map.jacobian(free).transpose() * eta.gradient(s);
  return out;
}

VariationalResult solve_variational(const VolterraKernel& kernel, const Matrix& y, double p, std::optional<double> k,
                                    const SolveConfig& cfg, const std::optional<GridFunction>& x0) {
  require_exponent(p);
  const int n = static_cast<int>(y.rows()) - 1;
  VariationalResult out;
  out.params = BieleckiParams::make(p, k.value_or(select_k(kernel.a_bar, p)));
  const NonlinearMap map = weighted_residual_map(kernel, y, out.params);
  const NormalizationFunctional eta =
      p == 2.0 ? quadratic_functional() : block_power_functional(p, kernel.dim);
  SolveConfig local = cfg;
  if (p > 2.0) local.tol_gradient = std::pow(cfg.tol_gradient, p - 1.0);
  Vector start = Vector::Zero(map.dim);
  if (x0) {
    if (x0->n_cells() != n || x0->dim() != kernel.dim) throw Error(ErrorKind::invalid_input, "initial grid function has the wrong shape");
    start = x0->free_values();
  }
  out.solve = solve(map, Vector::Zero(map.dim), eta, local, start);
  out.x = GridFunction::from_free_values(out.solve.root, n, kernel.dim);
  out.phi = out.solve.phi;
  return out;
}

VariationalUniqueness variational_uniqueness(const VolterraKernel& kernel, const Matrix& y, double p,
                                             std::optional<double> k, const SolveConfig& cfg, int count,
                                             std::uint64_t seed) {
  if (count < 2) throw Error(ErrorKind::invalid_input, "uniqueness probe needs at least two starts");
  const int n = static_cast<int>(y.rows()) - 1;
  VariationalUniqueness out;
  out.runs.resize(static_cast<std::size_t>(count));
  sampling::parallel_for(
      static_cast<std::size_t>(count),
      [&](std::size_t i) {
        Matrix values(n + 1, kernel.dim);
        for (int c = 0; c < kernel.dim; ++c)
          values.col(c) = random_grid_function(n, seed, i * static_cast<std::size_t>(kernel.dim) + c).values();
        const GridFunction start = GridFunction::from_values(std::move(values));
        out.runs[i] = solve_variational(kernel, y, p, k, cfg, start);
      },
      1);
  out.all_converged = std::all_of(out.runs.begin(), out.runs.end(), [](const auto& r) { return r.solve.converged; });
  for (std::size_t i = 0; i < out.runs.size(); ++i)
    for (std::size_t j = i + 1; j < out.runs.size(); ++j)
      out.max_sup_distance = std::max(out.max_sup_distance, sup_distance(out.runs[i].x.values(), out.runs[j].x.values()));
  return out;
}

KernelConstants kernel_constants(const VolterraKernel& kernel, double p, int n_cells) {
  require_exponent(p);
  if (n_cells < 2) throw Error(ErrorKind::grid_too_coarse, "kernel constants need n_cells >= 2");
  const double q = p / (p - 1.0);
  const auto [a_sup, a_total] = nested_power(kernel.envelope_a, p, n_cells);
  KernelConstants out;
  out.a_p_integral = a_total;
  out.a_bar_check = std::pow(a_sup, 1.0 / p);
  out.c_q_sup = nested_power(kernel.envelope_c, q, n_cells).first;
  return out;
}

double log_kernel_a_integral(double alpha, double p) {
  return std::pow(alpha, p) * 4.0 / ((5.0 * p + 2.0) * (5.0 * p + 4.0));
}

double log_kernel_c_bound(double p) {
  const double q = p / (p - 1.0);
  return std::pow(2.0, 1.0 - p) / (5.0 * q + 2.0);
}

std::vector<CertificateReport> check_hypotheses(const VolterraKernel& kernel, const HypothesisSampling& sampling) {
  if (sampling.samples <= 0 || !(sampling.x_max > 0.0)) {
    throw Error(ErrorKind::invalid_input, "hypothesis sampling needs samples > 0 and x_max > 0");
  }
  const int d = kernel.dim;
  const auto count = static_cast<std::size_t>(sampling.samples);
  // Sample i: (t, s) in the open triangle and x in [-x_max, x_max]^d, packed
  // as [t, s, x...].
  auto point = [&](std::size_t i) {
    Vector lo = Vector::Constant(d + 2, -sampling.x_max);
    Vector hi = Vector::Constant(d + 2, sampling.x_max);
    lo.head(2).setZero();
    hi.head(2).setOnes();
    Vector z = sampling::box_point(lo, hi, sampling.seed, i);
    if (z(1) > z(0)) std::swap(z(0), z(1));
    return z;
  };
  auto unpack = [d](const Vector& z) { return Vector(z.tail(d)); };

  const auto c1 = sampling::parallel_evaluate(count, [&](std::size_t i) {
    const Vector z = point(i);
    const Vector x = unpack(z);
    const double h = default_fd_step(x);
    Matrix fd(d, d);
    Vector probe = x;
    for (int a = 0; a < d; ++a) {
      probe(a) = x(a) + h;
      const Vector plus = kernel.phi(z(0), z(1), probe);
      probe(a) = x(a) - h;
      const Vector minus = kernel.phi(z(0), z(1), probe);
      probe(a) = x(a);
      fd.col(a) = (plus - minus) / (2.0 * h);
    }
    const Matrix analytic = kernel.phi_x(z(0), z(1), x);
    return 1e-5 * std::max(1.0, fd.norm()) - (analytic - fd).norm();
  });
  const auto growth = sampling::parallel_evaluate(count, [&](std::size_t i) {
    const Vector z = point(i);
    const Vector x = unpack(z);
    return kernel.envelope_a(z(0), z(1)) * x.norm() + kernel.envelope_b(z(0), z(1)) - kernel.phi(z(0), z(1), x).norm();
  });
  const auto deriv = sampling::parallel_evaluate(count, [&](std::size_t i) {
    const Vector z = point(i);
    const Vector x = unpack(z);
    const Matrix j = kernel.phi_x(z(0), z(1), x);
    const double op = d == 1 ? std::abs(j(0, 0)) : Eigen::JacobiSVD<Matrix>(j).singularValues()(0);
    return kernel.envelope_c(z(0), z(1)) * kernel.growth(x.norm()) - op;
  });

  auto report = [&](ConditionId id, const std::vector<double>& slack, double threshold, const char* note) {
    const std::size_t worst = sampling::argmin(slack);
    CertificateReport r;
    r.condition = id;
    r.margin = slack[worst];
    for (double s : slack)
      if (std::isnan(s)) r.margin = -std::numeric_limits<double>::infinity();
    r.passed = r.margin >= threshold;
    r.witnesses.push_back({point(worst), slack[worst]});
    r.samples_used = sampling.samples;
    r.seed = sampling.seed;
    r.parameters["x_max"] = sampling.x_max;
    r.note = note;
    return r;
  };

  std::vector<CertificateReport> out;
  out.push_back(report(ConditionId::kernel_c1, c1, 0.0,
                       "Phi_x against central differences in x; witness point is (t, s, x...)"));
  auto growth_report = report(ConditionId::kernel_growth, growth, 0.0,
                   "a |x| + b - |Phi| over the open triangle; witness point is (t, s, x...)");
  const KernelConstants constants = kernel_constants(kernel, kernel.p, 1000);
  growth_report.parameters["a_bar"] = kernel.a_bar;
  growth_report.parameters["a_bar_quadrature"] = constants.a_bar_check;
  growth_report.parameters["p"] = kernel.p;
  out.push_back(std::move(growth_report));
  auto derivative_report = report(ConditionId::kernel_derivative_growth, deriv, 0.0,
                   "c growth(|x|) - |Phi_x| over the open triangle; witness point is (t, s, x...)");
  derivative_report.parameters["c_const"] = kernel.c_const;
  derivative_report.parameters["c_q_quadrature"] = constants.c_q_sup;
  out.push_back(std::move(derivative_report));
  return out;
}

double sup_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::invalid_input, "shape mismatch in sup_distance");
  if (a.size() == 0) return 0.0;
  return (a - b).rowwise().norm().maxCoeff();
}

DerivativeCheck solution_operator_derivative(const VolterraKernel& kernel, const Matrix& y, const Matrix& dy,
                                             std::vector<double> eps, double ratio_tolerance) {
  const int n = static_cast<int>(y.rows()) - 1;
  require_forcing(dy, n, kernel.dim);
  if (eps.size() < 2) throw Error(ErrorKind::invalid_input, "derivative check needs at least two step sizes");
  for (double e : eps)
    if (!(e > 0.0)) throw Error(ErrorKind::invalid_input, "step sizes must be positive");
  std::sort(eps.begin(), eps.end(), std::greater<>());

  const GridFunction base = solve_forward(kernel, y, n);
  DerivativeCheck out;
  out.eps = eps;
  out.ratio_tolerance = ratio_tolerance;
  out.estimates.resize(eps.size());
  sampling::parallel_for(
      eps.size(),
      [&](std::size_t i) {
        const GridFunction moved = solve_forward(kernel, y + eps[i] * dy, n);
        out.estimates[i] = (moved.values() - base.values()) / eps[i];
      },
      1);
  out.consistent = true;
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    const double num = out.estimates[i].rowwise().norm().maxCoeff();
    const double den = out.estimates[i + 1].rowwise().norm().maxCoeff();
    const double ratio = (num == 0.0 && den == 0.0) ? 1.0 : num / den;
    out.ratios.push_back(ratio);
    if (!(std::abs(ratio - 1.0) <= ratio_tolerance)) out.consistent = false;
  }
  // First-order Richardson extrapolation from the two smallest steps.
  const std::size_t b = eps.size() - 1;
  const double ea = eps[b - 1];
  const double eb = eps[b];
  out.extrapolated = (ea * out.estimates[b] - eb * out.estimates[b - 1]) / (ea - eb);
  return out;
}

}  // namespace gloinv
