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

#ifndef GLOINV_SOLVER_HPP
#define GLOINV_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gloinv/core.hpp"

namespace gloinv {

struct LineSearch {
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 60;
};

/// Random starts drawn uniformly from [lo, hi]^dim with a fixed seed.
struct StartBox {
  int count = 0;
  double lo = -5.0;
  double hi = 5.0;
  std::uint64_t seed = 20260101;
};

struct SolveConfig {
  double tol_residual = 1e-10;
  double tol_gradient = 1e-8;
  int max_iters = 500;
  LineSearch line_search;
  /// Explicit starts take precedence over `start_box`.
  std::vector<Vector> starts;
  StartBox start_box;

  void validate() const;
  /// Explicit starts, or the seeded box draws when none are given.
  std::vector<Vector> resolve_starts(int dim) const;
};

struct TrajectoryPoint {
  int iter = 0;
  double phi = 0.0;
  double residual = 0.0;
};

enum class Termination { residual, gradient, max_iters, stalled, numerical };
const char* to_string(Termination t);

struct SolveResult {
  Vector root;
  double residual_norm = 0.0;
  double phi = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  int newton_steps = 0;
  int gradient_steps = 0;
  bool converged = false;
  Termination termination = Termination::max_iters;
  std::vector<TrajectoryPoint> trajectory;
  /// Noteworthy events such as singular Jacobians and fallbacks.
  std::vector<std::string> events;
};

/// Minimizes phi(x) = eta(f(x) - y) from `x0`. Each iteration first tries
/// the Newton step f'(x) d = -(f(x) - y) and falls back to steepest descent
/// on phi when that step is unavailable or fails the Armijo test. The run
/// stops at |f(x) - y| <= tol_residual, or at |grad phi| <= tol_gradient
/// once no Newton step makes progress. `converged` is set only in the
/// first case.
SolveResult solve(const NonlinearMap& f, const Vector& y, const NormalizationFunctional& eta,
                  const SolveConfig& cfg, const Vector& x0);

/// Same as above, starting from the first resolved start (or zero).
SolveResult solve(const NonlinearMap& f, const Vector& y, const NormalizationFunctional& eta,
                  const SolveConfig& cfg);

enum class ClusterVerdict { clustered, not_clustered, undetermined };
const char* to_string(ClusterVerdict v);

struct UniquenessReport {
  std::vector<Vector> starts;
  std::vector<SolveResult> results;
  ClusterVerdict verdict = ClusterVerdict::undetermined;
  /// Over converged starts only.
  double max_pairwise_distance = 0.0;
  double max_distance_to_mean = 0.0;
  Vector mean_root;
  int converged_count = 0;
  double cluster_radius = 0.0;

  bool clustered() const { return verdict == ClusterVerdict::clustered; }
};

/// Runs `solve` from every start concurrently. Converged roots cluster when
/// all lie within 10 * tol_residual of their mean; a spread beyond that is
/// evidence against injectivity. Non-converged starts are excluded from the
/// statistics and make an otherwise clustered run undetermined.
UniquenessReport multistart_uniqueness(const NonlinearMap& f, const Vector& y, const NormalizationFunctional& eta,
                                       const SolveConfig& cfg);

struct TargetSolve {
  Vector target;
  SolveResult result;
};

/// Solves for each target in order, warm-starting from the previous root
/// when that solve converged.
std::vector<TargetSolve> invert_on_targets(const NonlinearMap& f, const std::vector<Vector>& targets,
                                           const NormalizationFunctional& eta, const SolveConfig& cfg,
                                           const std::optional<Vector>& x0 = std::nullopt);

}  // namespace gloinv

#endif  // GLOINV_SOLVER_HPP
