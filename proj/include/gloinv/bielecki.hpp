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

#ifndef GLOINV_BIELECKI_HPP
#define GLOINV_BIELECKI_HPP

// Exponentially weighted (Bielecki-type) norms on grid functions with
// x(0) = 0, and the inequalities relating them:
//
//   |x|_{W,k}  = (int_0^1 e^{-kt} |x'(t)|^p dt)^{1/p}
//   |x|_k      = (int_0^1 e^{-kt} |x(t)|^p dt)^{1/p}
//
//   e^{-k/p} |x|_W <= |x|_{W,k} <= |x|_W
//   |x|_k <= |x|_{W,k} / k^{1/p}
//   | int_0^. |x| |_k <= |x|_{W,k} / k^{2/p}
//
// Slopes are constant per cell, so integrals of |x'|^p reduce to cell
// weights; integrals of nodal quantities use the trapezoidal rule.

#include <cstdint>
#include <string>
#include <vector>

#include "gloinv/core.hpp"

namespace gloinv {

struct VolterraKernel;

struct BieleckiParams {
  double p = 2.0;
  double k = 0.0;

  /// Validated construction: p >= 2 and k >= 0.
  static BieleckiParams make(double p, double k);
  /// Conjugate exponent, 1/p + 1/q = 1.
  double q() const { return p / (p - 1.0); }
};

/// int over each cell of e^{-kt}, by the trapezoidal rule.
Vector bielecki_cell_weights(int n_cells, double k);

double sobolev_norm(const GridFunction& x, double p);
double bielecki_sobolev_norm(const GridFunction& x, const BieleckiParams& params);
/// Weighted L^p norm of nodal values (rows are nodes on [0, 1]).
double bielecki_lp_norm(const Matrix& nodal, const BieleckiParams& params);
double bielecki_lp_norm(const GridFunction& x, const BieleckiParams& params);

/// t -> int_0^t |x(s)| ds at the nodes, trapezoidal rule.
Vector running_abs_integral(const Matrix& nodal);

/// Absolute slack allowed when comparing discrete norms of size `magnitude`.
double quadrature_tolerance(int n_cells, double magnitude);

struct EquivalenceCheck {
  bool holds = false;
  double lower_slack = 0.0;  // |x|_{W,k} - e^{-k/p} |x|_W
  double upper_slack = 0.0;  // |x|_W - |x|_{W,k}
  double tolerance = 0.0;
};

struct InequalityCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // negative when violated
  double tolerance = 0.0;
};

EquivalenceCheck check_equivalence(const GridFunction& x, const BieleckiParams& params);
/// |x|_k <= |x|_{W,k} / k^{1/p}. Needs k > 0.
InequalityCheck check_poincare_bielecki(const GridFunction& x, const BieleckiParams& params);
/// | int_0^. |x| |_k <= |x|_{W,k} / k^{2/p}. Needs k > 0.
InequalityCheck check_integral_bound(const GridFunction& x, const BieleckiParams& params);

/// max{1, a_bar^{p/2}} * (1 + margin). Any k above max{1, a_bar^{p/2}}
/// keeps the coercivity factor 1 - a_bar / k^{2/p} positive.
double select_k(double a_bar, double p, double margin = 0.1);

/// lhs = (p phi(x))^{1/p} with phi the weighted variational functional, and
/// rhs = (1 - a_bar / k^{2/p}) |x|_{W,k} - |y|_k - | int_0^. b(., s) ds |_k.
/// `holds` when lhs >= rhs - tolerance.
InequalityCheck coercivity_lower_bound(const GridFunction& x, const Matrix& y, const VolterraKernel& kernel,
                                       const BieleckiParams& params);

/// Deterministic pseudo-random grid function number `index`: random
/// Fourier slopes plus one localized bump.
GridFunction random_grid_function(int n_cells, std::uint64_t seed, std::uint64_t index);

struct InequalitySuiteResult {
  /// One per (function, p, k, inequality).
  long evaluated = 0;
  long violations = 0;
  double worst_equivalence_slack = 0.0;
  double worst_poincare_slack = 0.0;
  double worst_integral_slack = 0.0;
  std::vector<std::string> violation_details;
};

/// Runs the equivalence, weighted Poincare, and integral-bound checks over
/// `count` random grid functions for every (p, k) pair.
InequalitySuiteResult run_inequality_suite(int count, int n_cells, const std::vector<double>& ps,
                                           const std::vector<double>& ks, std::uint64_t seed);

}  // namespace gloinv

#endif  // GLOINV_BIELECKI_HPP
