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

#ifndef GLOINV_VOLTERRA_HPP
#define GLOINV_VOLTERRA_HPP

// Initial-value problem with memory on [0, 1]:
//
//   x'(t) + int_0^t Phi(t, s, x(s)) ds = y(t),   x(0) = 0.
//
// The memory integral Q(t_i) uses trapezoidal product quadrature on the
// nodes 0..i. The discrete problem asks every cell c to satisfy
//
//   (x_{c+1} - x_c) / h + (Q_c + Q_{c+1}) / 2 - (y_c + y_{c+1}) / 2 = 0,
//
// which is what solve_forward marches and what solve_variational drives to
// zero through the weighted functional (1/p) sum_c w_c |r_c|^p.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gloinv/bielecki.hpp"
#include "gloinv/core.hpp"
#include "gloinv/hypothesis.hpp"
#include "gloinv/solver.hpp"

namespace gloinv {

/// Phi on the triangle {s <= t} with its x-derivative and growth envelopes:
///   |Phi(t,s,x)|   <= a(t,s) |x| + b(t,s)
///   |Phi_x(t,s,x)| <= c(t,s) growth(|x|)
///   int_0^t a^p ds <= a_bar^p,   int_0^t c^q ds <= c_const.
/// `growth` is the continuous function of the derivative envelope; it is
/// unrelated to the scalar coefficient of paper_kernel.
struct VolterraKernel {
  std::string name;
  int dim = 1;
  std::function<Vector(double t, double s, const Vector& x)> phi;
  std::function<Matrix(double t, double s, const Vector& x)> phi_x;
  std::function<double(double t, double s)> envelope_a;
  std::function<double(double t, double s)> envelope_b;
  std::function<double(double t, double s)> envelope_c;
  std::function<double(double r)> growth;
  double a_bar = 0.0;
  double c_const = 0.0;
  /// Exponent the constants a_bar and c_const were computed for.
  double p = 2.0;
};

VolterraKernel zero_kernel(int dim = 1);
/// Phi = x.
VolterraKernel linear_kernel(double p = 2.0);
/// Phi = x^2 declared with the linear envelope a = 1, b = 0. It violates
/// the linear growth bound once |x| > 1.
VolterraKernel square_kernel(double p = 2.0);
/// Phi(t, s, x) = alpha (t - s)^{5/2} ln(1 + (t - s)^2 x^2).
/// a = b = alpha (t-s)^{5/2}, c = 2^{-p/q} (t-s)^{5/2},
/// growth(r) = alpha 2^{p/q} min(2r, 1).
VolterraKernel paper_kernel(double alpha, double p = 2.0);
/// Phi = m(t - s) x with m interpolated linearly from (lag, weight) pairs
/// covering [0, 1].
VolterraKernel tabulated_kernel(std::vector<double> lags, std::vector<double> weights, double p = 2.0);

/// Samples a scalar forcing at the n_cells + 1 nodes.
Matrix sample_forcing(int n_cells, const std::function<double(double)>& y);

/// Q(t_i) = int_0^{t_i} Phi(t_i, s, x(s)) ds at every node.
Matrix memory_integrals(const GridFunction& x, const VolterraKernel& kernel);

/// One residual row per cell (see the header comment).
Matrix residual(const GridFunction& x, const Matrix& y, const VolterraKernel& kernel);

/// Trapezoidal time marching with an Euler predictor and one corrector for
/// the implicit diagonal weight. Needs n_cells >= 8.
GridFunction solve_forward(const VolterraKernel& kernel, const Matrix& y, int n_cells);

/// Map from free nodal values to the weighted cell residuals
/// w_c^{1/p} r_c, with analytic Jacobian.
NonlinearMap weighted_residual_map(const VolterraKernel& kernel, const Matrix& y, const BieleckiParams& params);

struct VariationalValue {
  double value = 0.0;
  Vector gradient;  // with respect to the free nodal values
};

/// phi(x) = (1/p) sum_c w_c |r_c|^p, w_c the e^{-kt} cell weights.
VariationalValue variational_objective(const GridFunction& x, const Matrix& y, const VolterraKernel& kernel,
                                       const BieleckiParams& params);

struct VariationalResult {
  GridFunction x;
  SolveResult solve;
  BieleckiParams params;
  double phi = 0.0;
};

/// Minimizes the weighted functional with the solver module. k defaults
/// to select_k(kernel.a_bar, p). For p > 2 the gradient of phi vanishes to
/// order p - 1 at the root, so the stationarity test uses tol_gradient^{p-1}.
VariationalResult solve_variational(const VolterraKernel& kernel, const Matrix& y, double p,
                                    std::optional<double> k, const SolveConfig& cfg,
                                    const std::optional<GridFunction>& x0 = std::nullopt);

struct VariationalUniqueness {
  std::vector<VariationalResult> runs;
  double max_sup_distance = 0.0;
  bool all_converged = false;
};

/// solve_variational from `count` random initial grid functions.
VariationalUniqueness variational_uniqueness(const VolterraKernel& kernel, const Matrix& y, double p,
                                             std::optional<double> k, const SolveConfig& cfg, int count,
                                             std::uint64_t seed);

struct KernelConstants {
  double a_p_integral = 0.0;  // int over the triangle of a^p
  double a_bar_check = 0.0;   // sup_t (int_0^t a^p ds)^{1/p}
  double c_q_sup = 0.0;       // sup_t int_0^t c^q ds
};

KernelConstants kernel_constants(const VolterraKernel& kernel, double p, int n_cells = 2000);

/// alpha^p * 4 / ((5p + 2)(5p + 4)).
double log_kernel_a_integral(double alpha, double p);
/// 2^{1-p} / (5q + 2).
double log_kernel_c_bound(double p);

struct HypothesisSampling {
  int samples = 4000;
  double x_max = 10.0;
  std::uint64_t seed = 20260101;
};

/// Sampled checks of the C^1 requirement (kernel_c1), the linear growth
/// envelope (kernel_growth), and the derivative envelope
/// (kernel_derivative_growth) over the open triangle times [-x_max, x_max]^dim.
std::vector<CertificateReport> check_hypotheses(const VolterraKernel& kernel, const HypothesisSampling& sampling);

struct DerivativeCheck {
  std::vector<double> eps;
  /// (x_{y + eps dy} - x_y) / eps at the nodes.
  std::vector<Matrix> estimates;
  /// sup-norm ratios of consecutive estimates.
  std::vector<double> ratios;
  Matrix extrapolated;
  bool consistent = false;
  double ratio_tolerance = 0.1;
};

/// Finite-difference probe of y -> x_y along dy, using solve_forward. The
/// derivative is judged consistent when every ratio lies within
/// [1 - ratio_tolerance, 1 + ratio_tolerance].
DerivativeCheck solution_operator_derivative(const VolterraKernel& kernel, const Matrix& y, const Matrix& dy,
                                             std::vector<double> eps, double ratio_tolerance = 0.1);

/// Sup-norm distance between nodal values.
double sup_distance(const Matrix& a, const Matrix& b);

}  // namespace gloinv

#endif  // GLOINV_VOLTERRA_HPP
