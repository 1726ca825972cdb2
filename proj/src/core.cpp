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

#include "gloinv/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gloinv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::unsupported_exponent: return "unsupported_exponent";
    case ErrorKind::grid_too_coarse: return "grid_too_coarse";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::divergence: return "divergence";
  }
  return "unknown";
}

void require_exponent(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "exponent p = " << p << " unsupported: requires 2 <= p < inf";
    throw Error(ErrorKind::unsupported_exponent, os.str());
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorKind::invalid_input, std::string(what) + " has non-finite entries");
  }
}

Matrix NonlinearMap::jacobian_at(const Vector& x) const {
  if (jacobian) return jacobian(x);
  return jacobian_fd(*this, x);
}

double default_fd_step(const Vector& x) {
  static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  return cbrt_eps * std::max(1.0, x.norm());
}

Matrix jacobian_fd(const NonlinearMap& map, const Vector& x) {
  return jacobian_fd(map, x, default_fd_step(x));
}

Matrix jacobian_fd(const NonlinearMap& map, const Vector& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_input, "finite-difference step must be positive");
  const Eigen::Index n = x.size();
  Matrix jac(n, n);
  Vector probe = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    probe(j) = x(j) + h;
    const Vector plus = map(probe);
    probe(j) = x(j) - h;
    const Vector minus = map(probe);
    probe(j) = x(j);
    if (!plus.allFinite() || !minus.allFinite()) {
      throw Error(ErrorKind::numerical, "non-finite map value during finite differencing");
    }
    jac.col(j) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

GridFunction GridFunction::from_values(Matrix values) {
  if (values.rows() < 2 || values.cols() < 1) {
    throw Error(ErrorKind::invalid_input, "grid function needs at least one cell");
  }
  if (!values.allFinite()) throw Error(ErrorKind::invalid_input, "grid values must be finite");
  if (values.row(0).cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorKind::invalid_input, "grid function must vanish at t = 0");
  }
  return GridFunction(std::move(values));
}

GridFunction GridFunction::from_values(const Vector& scalar_values) {
  return from_values(Matrix(scalar_values));
}

GridFunction GridFunction::from_derivatives(const Matrix& slopes) {
  const Eigen::Index n = slopes.rows();
  if (n < 1) throw Error(ErrorKind::invalid_input, "grid function needs at least one cell");
  const double h = 1.0 / static_cast<double>(n);
  Matrix values = Matrix::Zero(n + 1, slopes.cols());
  for (Eigen::Index c = 0; c < n; ++c) values.row(c + 1) = values.row(c) + h * slopes.row(c);
  return from_values(std::move(values));
}

GridFunction GridFunction::zero(int n_cells, int dim) {
  if (n_cells < 1 || dim < 1) throw Error(ErrorKind::invalid_input, "grid needs n_cells >= 1 and dim >= 1");
  return GridFunction(Matrix::Zero(n_cells + 1, dim));
}

GridFunction GridFunction::sample(int n_cells, const std::function<double(double)>& fn) {
  if (n_cells < 1) throw Error(ErrorKind::invalid_input, "grid needs n_cells >= 1");
  Vector v(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i) v(i) = fn(static_cast<double>(i) / n_cells);
  return from_values(v);
}

Matrix GridFunction::derivatives() const {
  const int n = n_cells();
  return (values_.bottomRows(n) - values_.topRows(n)) * static_cast<double>(n);
}

Vector GridFunction::free_values() const {
  const int n = n_cells();
  const int d = dim();
  Vector out(static_cast<Eigen::Index>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) out(i * d + c) = values_(i + 1, c);
  return out;
}

GridFunction GridFunction::from_free_values(const Vector& free, int n_cells, int dim) {
  if (free.size() != static_cast<Eigen::Index>(n_cells) * dim) {
    throw Error(ErrorKind::invalid_input, "free value count does not match grid shape");
  }
  Matrix values = Matrix::Zero(n_cells + 1, dim);
  for (int i = 0; i < n_cells; ++i)
    for (int c = 0; c < dim; ++c) values(i + 1, c) = free(i * dim + c);
  return from_values(std::move(values));
}

Vector trapezoid_weights(int n_cells) {
  if (n_cells < 1) throw Error(ErrorKind::invalid_input, "quadrature needs n_cells >= 1");
  const double h = 1.0 / n_cells;
  Vector w = Vector::Constant(n_cells + 1, h);
  w(0) = w(n_cells) = 0.5 * h;
  return w;
}

std::pair<double, Vector> eta_quadratic(const Vector& v) {
  require_finite(v, "eta_quadratic input");
  return {0.5 * v.squaredNorm(), v};
}

namespace {

// |u|^{p-2} u, with the p = 2 case kept exact.
double power_slope(double u, double p) {
  if (p == 2.0) return u;
  return std::pow(std::abs(u), p - 2.0) * u;
}

}  // namespace

std::pair<double, Vector> eta_pnorm(const Vector& samples, double p) {
  require_exponent(p);
  require_finite(samples, "eta_pnorm samples");
  if (samples.size() < 2) throw Error(ErrorKind::grid_too_coarse, "eta_pnorm needs at least two samples");
  const Vector w = trapezoid_weights(static_cast<int>(samples.size()) - 1);
  double value = 0.0;
  Vector grad(samples.size());
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    value += w(i) * std::pow(std::abs(samples(i)), p);
    grad(i) = w(i) * power_slope(samples(i), p);
  }
  return {value / p, grad};
}

std::pair<double, Matrix> sobolev_energy(const GridFunction& x, double p) {
  require_exponent(p);
  const int n = x.n_cells();
  if (n < 2) throw Error(ErrorKind::grid_too_coarse, "sobolev_energy needs n_cells >= 2");
  const double h = x.step();
  const Matrix slopes = x.derivatives();
  // flux_c = |x'_c|^{p-2} x'_c; d/dx_j of (h/p) sum |x'_c|^p = flux_{j-1} - flux_j.
  Matrix flux(n, x.dim());
  double value = 0.0;
  for (int c = 0; c < n; ++c) {
    const double mag = slopes.row(c).norm();
    value += h * std::pow(mag, p);
    flux.row(c) = (p == 2.0 ? 1.0 : std::pow(mag, p - 2.0)) * slopes.row(c);
  }
  Matrix grad(n, x.dim());
  for (int j = 1; j <= n; ++j) {
    grad.row(j - 1) = flux.row(j - 1);
    if (j < n) grad.row(j - 1) -= flux.row(j);
  }
  return {value / p, grad};
}

NormalizationFunctional quadratic_functional() {
  NormalizationFunctional eta;
  eta.name = "quadratic";
  eta.exponent = 2.0;
  eta.value = [](const Vector& v) { return eta_quadratic(v).first; };
  eta.gradient = [](const Vector& v) { return eta_quadratic(v).second; };
  return eta;
}

NormalizationFunctional pnorm_functional(double p, int n_cells) {
  require_exponent(p);
  NormalizationFunctional eta;
  eta.name = "pnorm";
  eta.exponent = p;
  auto check = [n_cells](const Vector& v) {
    if (v.size() != n_cells + 1) throw Error(ErrorKind::invalid_input, "pnorm functional: sample count mismatch");
  };
  eta.value = [p, check](const Vector& v) { check(v); return eta_pnorm(v, p).first; };
  eta.gradient = [p, check](const Vector& v) { check(v); return eta_pnorm(v, p).second; };
  return eta;
}

NormalizationFunctional block_power_functional(double p, int block_dim) {
  require_exponent(p);
  if (block_dim < 1) throw Error(ErrorKind::invalid_input, "block dimension must be positive");
  NormalizationFunctional eta;
  eta.name = "block_power";
  eta.exponent = p;
  eta.value = [p, block_dim](const Vector& v) {
    double s = 0.0;
    for (Eigen::Index b = 0; b < v.size(); b += block_dim) s += std::pow(v.segment(b, block_dim).norm(), p);
    return s / p;
  };
  eta.gradient = [p, block_dim](const Vector& v) {
    Vector g(v.size());
    for (Eigen::Index b = 0; b < v.size(); b += block_dim) {
      const double mag = v.segment(b, block_dim).norm();
      g.segment(b, block_dim) = (p == 2.0 ? 1.0 : std::pow(mag, p - 2.0)) * v.segment(b, block_dim);
    }
    return g;
  };
  return eta;
}

}  // namespace gloinv
