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

#include "gloinv/solver.hpp"

#include <cmath>
#include <sstream>

#include "gloinv/sampling.hpp"

namespace gloinv {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::residual: return "residual";
    case Termination::gradient: return "gradient";
    case Termination::max_iters: return "max_iters";
    case Termination::stalled: return "stalled";
    case Termination::numerical: return "numerical";
  }
  return "unknown";
}

const char* to_string(ClusterVerdict v) {
  switch (v) {
    case ClusterVerdict::clustered: return "clustered";
    case ClusterVerdict::not_clustered: return "not_clustered";
    case ClusterVerdict::undetermined: return "undetermined";
  }
  return "unknown";
}

void SolveConfig::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorKind::invalid_input, msg); };
  if (!(tol_residual > 0.0)) bad("tol_residual must be positive");
  if (!(tol_gradient > 0.0)) bad("tol_gradient must be positive");
  if (max_iters < 0) bad("max_iters must be non-negative");
  if (!(line_search.shrink > 0.0 && line_search.shrink < 1.0)) bad("line-search shrink factor must lie in (0, 1)");
  if (!(line_search.sufficient_decrease > 0.0 && line_search.sufficient_decrease < 1.0)) {
    bad("sufficient-decrease constant must lie in (0, 1)");
  }
  if (line_search.max_backtracks < 1) bad("max_backtracks must be positive");
  if (starts.empty() && start_box.count > 0 && !(start_box.hi > start_box.lo)) bad("start box must have hi > lo");
}

std::vector<Vector> SolveConfig::resolve_starts(int dim) const {
  if (!starts.empty()) {
    for (const auto& s : starts) {
      if (s.size() != dim) throw Error(ErrorKind::invalid_input, "start dimension does not match the map");
      require_finite(s, "start point");
    }
    return starts;
  }
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(std::max(0, start_box.count)));
  for (int i = 0; i < start_box.count; ++i) {
    Vector x(dim);
    for (int a = 0; a < dim; ++a) {
      const double u = sampling::counter_uniform(start_box.seed, static_cast<std::uint64_t>(a),
                                                 static_cast<std::uint64_t>(i));
      x(a) = start_box.lo + (start_box.hi - start_box.lo) * u;
    }
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

constexpr std::size_t kMaxRecordedEvents = 32;

void record(SolveResult& out, const std::string& event) {
  if (out.events.size() < kMaxRecordedEvents) out.events.push_back(event);
}

struct Trial {
  bool accepted = false;
  Vector x;
  Vector r;
  double phi = 0.0;
};

// Backtracking Armijo search along `dir` with directional derivative `slope`.
Trial armijo(const NonlinearMap& f, const Vector& y, const NormalizationFunctional& eta, const LineSearch& ls,
             const Vector& x, double phi, const Vector& dir, double slope) {
  Trial t;
  double step = 1.0;
  for (int b = 0; b < ls.max_backtracks; ++b, step *= ls.shrink) {
    Vector xn = x + step * dir;
    Vector rn = f(xn) - y;
    if (!rn.allFinite()) continue;
    const double pn = eta.value(rn);
    if (std::isfinite(pn) && pn <= phi + ls.sufficient_decrease * step * slope) {
      t.accepted = true;
      t.x = std::move(xn);
      t.r = std::move(rn);
      t.phi = pn;
      return t;
    }
  }
  return t;
}

}  // namespace

SolveResult solve(const NonlinearMap& f, const Vector& y, const NormalizationFunctional& eta,
                  const SolveConfig& cfg, const Vector& x0) {
  cfg.validate();
  if (x0.size() != f.dim || y.size() != f.dim) throw Error(ErrorKind::invalid_input, "dimension mismatch in solve");
  require_finite(x0, "initial point");
  require_finite(y, "target");

  SolveResult out;
  Vector x = x0;
  Vector r = f(x) - y;
  if (!r.allFinite()) {
    out.root = x;
    out.residual_norm = r.norm();
    out.termination = Termination::numerical;
    record(out, "non-finite residual at the initial point");
    return out;
  }
  double phi = eta.value(r);
  out.trajectory.push_back({0, phi, r.norm()});

  Vector grad = Vector::Zero(f.dim);
  out.termination = Termination::max_iters;
  for (int it = 0;; ++it) {
    if (r.norm() <= cfg.tol_residual) {
      out.termination = Termination::residual;
      break;
    }
    const Matrix jac = f.jacobian_at(x);
    if (!jac.allFinite()) {
      out.termination = Termination::numerical;
      record(out, "non-finite Jacobian at iteration " + std::to_string(it));
      break;
    }
    grad = jac.transpose() * eta.gradient(r);
    if (it >= cfg.max_iters) break;

    // A productive Newton step is taken even when the gradient is already
    // below tol_gradient; the stationarity stop applies only without one.
    Trial trial;
    Eigen::ColPivHouseholderQR<Matrix> qr(jac);
    const bool small_gradient = grad.norm() <= cfg.tol_gradient;
    if (qr.isInvertible()) {
      const Vector dir = qr.solve(-r);
      const double slope = grad.dot(dir);
      if (dir.allFinite() && slope < 0.0) {
        trial = armijo(f, y, eta, cfg.line_search, x, phi, dir, slope);
        if (trial.accepted) ++out.newton_steps;
      }
      if (!trial.accepted && !small_gradient) {
        record(out, "Newton step rejected at iteration " + std::to_string(it) + "; gradient fallback");
      }
    } else if (!small_gradient) {
      record(out, "singular Jacobian at iteration " + std::to_string(it) + "; gradient fallback");
    }
    if (!trial.accepted && small_gradient) {
      out.termination = Termination::gradient;
      break;
    }
    if (!trial.accepted) {
      trial = armijo(f, y, eta, cfg.line_search, x, phi, -grad, -grad.squaredNorm());
      if (trial.accepted) ++out.gradient_steps;
    }
    if (!trial.accepted) {
      out.termination = Termination::stalled;
      record(out, "no sufficient decrease at iteration " + std::to_string(it));
      break;
    }
    x = std::move(trial.x);
    r = std::move(trial.r);
    phi = trial.phi;
    out.iterations = it + 1;
    out.trajectory.push_back({out.iterations, phi, r.norm()});
  }

  out.root = x;
  out.residual_norm = r.norm();
  out.phi = phi;
  out.gradient_norm = grad.norm();
  out.converged = out.residual_norm <= cfg.tol_residual;
  if (!out.converged && out.termination == Termination::gradient) {
    record(out, "stationary point of phi that is not a root");
  }
  return out;
}

SolveResult solve(const NonlinearMap& f, const Vector& y, const NormalizationFunctional& eta,
                  const SolveConfig& cfg) {
  const auto starts = cfg.resolve_starts(f.dim);
  return solve(f, y, eta, cfg, starts.empty() ? Vector(Vector::Zero(f.dim)) : starts.front());
}

UniquenessReport multistart_uniqueness(const NonlinearMap& f, const Vector& y, const NormalizationFunctional& eta,
                                       const SolveConfig& cfg) {
  cfg.validate();
  UniquenessReport rep;
  rep.starts = cfg.resolve_starts(f.dim);
  if (rep.starts.size() < 2) throw Error(ErrorKind::invalid_input, "multistart needs at least two starts");
  bool distinct = false;
  for (std::size_t i = 1; i < rep.starts.size() && !distinct; ++i) distinct = rep.starts[i] != rep.starts[0];
  if (!distinct) throw Error(ErrorKind::invalid_input, "multistart needs distinct starts");

  rep.results.resize(rep.starts.size());
  sampling::parallel_for(
      rep.starts.size(), [&](std::size_t i) { rep.results[i] = solve(f, y, eta, cfg, rep.starts[i]); }, 4);

  rep.cluster_radius = 10.0 * cfg.tol_residual;
  std::vector<const Vector*> roots;
  for (const auto& res : rep.results)
    if (res.converged) roots.push_back(&res.root);
  rep.converged_count = static_cast<int>(roots.size());
  rep.mean_root = Vector::Zero(f.dim);
  if (roots.empty()) {
    rep.verdict = ClusterVerdict::undetermined;
    return rep;
  }
  for (const Vector* r : roots) rep.mean_root += *r;
  rep.mean_root /= static_cast<double>(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    rep.max_distance_to_mean = std::max(rep.max_distance_to_mean, (*roots[i] - rep.mean_root).norm());
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      rep.max_pairwise_distance = std::max(rep.max_pairwise_distance, (*roots[i] - *roots[j]).norm());
  }
  if (rep.max_distance_to_mean > rep.cluster_radius) {
    rep.verdict = ClusterVerdict::not_clustered;
  } else if (rep.converged_count < static_cast<int>(rep.results.size()) || rep.converged_count < 2) {
    rep.verdict = ClusterVerdict::undetermined;
  } else {
    rep.verdict = ClusterVerdict::clustered;
  }
  return rep;
}

std::vector<TargetSolve> invert_on_targets(const NonlinearMap& f, const std::vector<Vector>& targets,
                                           const NormalizationFunctional& eta, const SolveConfig& cfg,
                                           const std::optional<Vector>& x0) {
  std::vector<TargetSolve> out;
  out.reserve(targets.size());
  Vector start = x0.value_or(Vector::Zero(f.dim));
  if (!x0 && !cfg.resolve_starts(f.dim).empty()) start = cfg.resolve_starts(f.dim).front();
  for (const auto& target : targets) {
    TargetSolve ts;
    ts.target = target;
    try {
      ts.result = solve(f, target, eta, cfg, start);
    } catch (const Error& e) {
      ts.result.root = start;
      ts.result.termination = Termination::numerical;
      ts.result.events.push_back(e.what());
    }
    if (ts.result.converged) start = ts.result.root;
    out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace gloinv
