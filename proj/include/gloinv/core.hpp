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

#ifndef GLOINV_CORE_HPP
#define GLOINV_CORE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace gloinv {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ErrorKind {
  invalid_input,
  unsupported_exponent,
  grid_too_coarse,
  numerical,
  divergence,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a coarse classification so front ends can map
/// failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A map R^dim -> R^dim. When `jacobian` is empty the derivative is
/// obtained by central differences.
struct NonlinearMap {
  int dim = 0;
  std::function<Vector(const Vector&)> eval;
  std::function<Matrix(const Vector&)> jacobian;

  Vector operator()(const Vector& x) const { return eval(x); }
  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian); }
  /// Analytic Jacobian if available, finite differences otherwise.
  Matrix jacobian_at(const Vector& x) const;
};

/// Central-difference step (machine epsilon)^{1/3} * max(1, |x|).
double default_fd_step(const Vector& x);

/// Central-difference Jacobian of `map` at `x`. Throws ErrorKind::numerical
/// if any evaluation is non-finite.
Matrix jacobian_fd(const NonlinearMap& map, const Vector& x, double h);
Matrix jacobian_fd(const NonlinearMap& map, const Vector& x);

/// Piecewise-linear function on the uniform grid t_i = i / n_cells of [0, 1]
/// with x(0) = 0. Rows of `values()` are nodes, columns are components.
class GridFunction {
 public:
  GridFunction() = default;

  /// Takes nodal values (n_cells + 1 rows). The first row must be zero.
  static GridFunction from_values(Matrix values);
  static GridFunction from_values(const Vector& scalar_values);
  /// Rebuilds nodal values from per-cell slopes by cumulative summation.
  static GridFunction from_derivatives(const Matrix& slopes);
  static GridFunction zero(int n_cells, int dim = 1);
  /// Samples `fn` at the nodes; fn(0) must vanish.
  static GridFunction sample(int n_cells, const std::function<double(double)>& fn);

  int n_cells() const { return static_cast<int>(values_.rows()) - 1; }
  int dim() const { return static_cast<int>(values_.cols()); }
  double step() const { return 1.0 / n_cells(); }
  double node(int i) const { return static_cast<double>(i) / n_cells(); }

  const Matrix& values() const { return values_; }
  /// Forward differences (x_{i+1} - x_i) / h, one row per cell.
  Matrix derivatives() const;
  /// Nodal values of the free nodes 1..n_cells flattened row-major.
  Vector free_values() const;
  static GridFunction from_free_values(const Vector& free, int n_cells, int dim);

 private:
  explicit GridFunction(Matrix values) : values_(std::move(values)) {}
  Matrix values_;
};

/// Trapezoidal weights on the uniform grid of [0, 1] with n_cells cells.
Vector trapezoid_weights(int n_cells);

/// Normalization functional eta: R^m -> [0, inf) vanishing only at zero.
struct NormalizationFunctional {
  std::string name;
  double exponent = 2.0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// eta(v) = |v|^2 / 2 with gradient v.
std::pair<double, Vector> eta_quadratic(const Vector& v);

/// eta(u) = (1/p) * int_0^1 |u|^p on the uniform grid carrying `samples`,
/// trapezoidal rule. The gradient is |u|^{p-2} u times the quadrature
/// weights. Requires p >= 2.
std::pair<double, Vector> eta_pnorm(const Vector& samples, double p);

/// h(x) = (1/p) * int_0^1 |x'|^p from cell slopes; gradient with respect to
/// the free nodal values 1..n_cells (row j-1 is node j).
std::pair<double, Matrix> sobolev_energy(const GridFunction& x, double p);

NormalizationFunctional quadratic_functional();
/// Grid-quadrature p-power functional over samples on n_cells cells.
NormalizationFunctional pnorm_functional(double p, int n_cells);
/// (1/p) * sum_b |v_b|^p over consecutive blocks of `block_dim` entries.
NormalizationFunctional block_power_functional(double p, int block_dim);

/// Throws ErrorKind::unsupported_exponent unless 2 <= p < inf.
void require_exponent(double p);
void require_finite(const Vector& v, const char* what);

}  // namespace gloinv

#endif  // GLOINV_CORE_HPP
