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

#include "gloinv/hypothesis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gloinv/sampling.hpp"

namespace gloinv {

const char* to_string(ConditionId id) {
  switch (id) {
    case ConditionId::growth_i_small: return "growth_i_small";
    case ConditionId::growth_i_large: return "growth_i_large";
    case ConditionId::growth_iia: return "growth_iia";
    case ConditionId::growth_iib: return "growth_iib";
    case ConditionId::jacobian_nonsingular: return "jacobian_nonsingular";
    case ConditionId::coercivity_witness: return "coercivity_witness";
    case ConditionId::kernel_c1: return "kernel_c1";
    case ConditionId::kernel_growth: return "kernel_growth";
    case ConditionId::kernel_derivative_growth: return "kernel_derivative_growth";
  }
  return "unknown";
}

SingularValueBounds singular_value_bounds(const Matrix& a) {
  if (a.size() == 0 || !a.allFinite()) throw Error(ErrorKind::invalid_input, "matrix must be finite and non-empty");
  if (a.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorKind::invalid_input, "zero matrix has no useful singular bounds");
  const Matrix gram = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::numerical, "eigen decomposition of A^T A failed");
  const Vector& lambda = eig.eigenvalues();  // ascending
  const Eigen::Index last = lambda.size() - 1;
  SingularValueBounds out;
  out.min = std::sqrt(std::max(0.0, lambda(0)));
  out.max = std::sqrt(std::max(0.0, lambda(last)));
  out.min_vector = eig.eigenvectors().col(0);
  out.max_vector = eig.eigenvectors().col(last);
  return out;
}

namespace {

void require_plan(const SamplingPlan& plan) {
  if (plan.samples <= 0) throw Error(ErrorKind::invalid_input, "sample count must be positive");
}

Vector annulus_point(int dim, double radius, std::uint64_t seed, std::uint64_t i) {
  const Vector dir = sampling::sphere_direction(dim, seed, i);
  const double u = (i % 2 == 0) ? sampling::halton(i / 2, dim) : sampling::counter_uniform(seed, 977, i);
  return radius * (1.0 + 9.0 * u) * dir;
}

// Runs slack(x) over the annulus and fills the report with the worst case.
template <typename Slack>
CertificateReport annulus_check(ConditionId id, const NonlinearMap& f, double radius, const SamplingPlan& plan,
                                Slack slack) {
  require_plan(plan);
  if (!(radius > 0.0)) throw Error(ErrorKind::invalid_input, "annulus radius must be positive");
  const auto n = static_cast<std::size_t>(plan.samples);
  const auto values = sampling::parallel_evaluate(n, [&](std::size_t i) {
    const Vector x = annulus_point(f.dim, radius, plan.seed, i);
    const Vector fx = f(x);
    if (!fx.allFinite()) return -std::numeric_limits<double>::infinity();
    return slack(x.norm(), fx.norm());
  });
  const std::size_t worst = sampling::argmin(values);
  CertificateReport r;
  r.condition = id;
  r.margin = values[worst];
  r.passed = r.margin >= 0.0;
  const Vector x = annulus_point(f.dim, radius, plan.seed, worst);
  r.witnesses.push_back({x, f(x).norm()});
  r.samples_used = plan.samples;
  r.seed = plan.seed;
  r.parameters["radius_min"] = radius;
  r.parameters["radius_max"] = 10.0 * radius;
  r.note = "sampled on the annulus radius_min <= |x| <= radius_max; witness value is |F(x)|";
  return r;
}

}  // namespace

CertificateReport check_growth_small(const NonlinearMap& f, double a, double radius, const SamplingPlan& plan) {
  if (!(a > 0.0)) throw Error(ErrorKind::invalid_input, "growth constant a must be positive");
  auto r = annulus_check(ConditionId::growth_i_small, f, radius, plan,
                         [a](double nx, double nf) { return a * nx - nf; });
  r.parameters["a"] = a;
  return r;
}

CertificateReport check_growth_large(const NonlinearMap& f, double b, double radius, const SamplingPlan& plan) {
  if (!(b > 0.0)) throw Error(ErrorKind::invalid_input, "growth constant b must be positive");
  auto r = annulus_check(ConditionId::growth_i_large, f, radius, plan,
                         [b](double nx, double nf) { return nf - b * nx; });
  r.parameters["b"] = b;
  return r;
}

CertificateReport check_growth_power(const NonlinearMap& f, PowerGrowthMode mode, double coeff, double expo,
                                     double radius, const SamplingPlan& plan) {
  if (!(coeff > 0.0)) throw Error(ErrorKind::invalid_input, "power growth coefficient must be positive");
  CertificateReport r;
  if (mode == PowerGrowthMode::iia) {
    if (!(expo > 0.0 && expo < 1.0)) throw Error(ErrorKind::invalid_input, "mode iia needs 0 < exponent < 1");
    r = annulus_check(ConditionId::growth_iia, f, radius, plan,
                      [=](double nx, double nf) { return coeff * std::pow(nx, expo) - nf; });
  } else {
    if (!(expo > 1.0)) throw Error(ErrorKind::invalid_input, "mode iib needs exponent > 1");
    r = annulus_check(ConditionId::growth_iib, f, radius, plan,
                      [=](double nx, double nf) { return nf - coeff * std::pow(nx, expo); });
  }
  r.parameters["coeff"] = coeff;
  r.parameters["exponent"] = expo;
  return r;
}

CertificateReport check_jacobian_nonsingular(const NonlinearMap& f, const Matrix& a, const Box& box,
                                             int grid_per_axis, const SamplingPlan& plan) {
  const int d = f.dim;
  if (box.lo.size() != d || box.hi.size() != d || a.rows() != d || a.cols() != d) {
    throw Error(ErrorKind::invalid_input, "box and matrix dimensions must match the map");
  }
  if ((box.hi - box.lo).minCoeff() < 0.0) throw Error(ErrorKind::invalid_input, "box is empty");
  if (grid_per_axis < 0 || plan.samples < 0) throw Error(ErrorKind::invalid_input, "sample counts must be non-negative");

  std::size_t grid_count = grid_per_axis > 0 ? 1 : 0;
  for (int k = 0; k < d && grid_per_axis > 0; ++k) grid_count *= static_cast<std::size_t>(grid_per_axis);
  const std::size_t total = grid_count + static_cast<std::size_t>(plan.samples);
  if (total == 0) throw Error(ErrorKind::invalid_input, "no samples requested");

  auto point = [&](std::size_t i) {
    if (i >= grid_count) return sampling::box_point(box.lo, box.hi, plan.seed, i - grid_count);
    Vector x(d);
    std::size_t rest = i;
    for (int k = 0; k < d; ++k) {
      const auto idx = static_cast<double>(rest % static_cast<std::size_t>(grid_per_axis));
      rest /= static_cast<std::size_t>(grid_per_axis);
      const double frac = grid_per_axis == 1 ? 0.5 : idx / (grid_per_axis - 1);
      x(k) = box.lo(k) + frac * (box.hi(k) - box.lo(k));
    }
    return x;
  };

  const auto dets = sampling::parallel_evaluate(total, [&](std::size_t i) {
    const Matrix m = a - f.jacobian_at(point(i));
    if (!m.allFinite()) throw Error(ErrorKind::numerical, "non-finite Jacobian while certifying");
    return std::abs(m.determinant());
  });
  const std::size_t worst = sampling::argmin(dets);

  CertificateReport r;
  r.condition = ConditionId::jacobian_nonsingular;
  r.margin = dets[worst];
  r.passed = r.margin > kDeterminantTolerance;
  r.witnesses.push_back({point(worst), dets[worst]});
  r.samples_used = static_cast<long>(total);
  r.seed = plan.seed;
  r.parameters["grid_per_axis"] = grid_per_axis;
  r.parameters["random_samples"] = plan.samples;
  r.parameters["det_tolerance"] = kDeterminantTolerance;
  r.note = "sampling surrogate, not a proof: margin is min |det(A - F'(x))| over the sampled box";
  return r;
}

CoercivityTable coercivity_witness(const NonlinearMap& phi, const std::vector<double>& radii, int samples_per_radius,
                                   std::uint64_t seed) {
  if (radii.empty() || samples_per_radius <= 0) {
    throw Error(ErrorKind::invalid_input, "coercivity witness needs radii and a positive sample count");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw Error(ErrorKind::invalid_input, "radii must be positive and strictly increasing");
    }
  }
  CoercivityTable table;
  table.seed = seed;
  table.samples_per_radius = samples_per_radius;
  for (double r : radii) {
    const auto norms = sampling::parallel_evaluate(static_cast<std::size_t>(samples_per_radius), [&](std::size_t i) {
      const Vector v = phi(r * sampling::sphere_direction(phi.dim, seed, i));
      if (!v.allFinite()) throw Error(ErrorKind::numerical, "non-finite map value on coercivity sphere");
      return v.norm();
    });
    const std::size_t worst = sampling::argmin(norms);
    table.rows.push_back({r, norms[worst], r * sampling::sphere_direction(phi.dim, seed, worst)});
  }

  const std::size_t n = table.rows.size();
  const std::size_t tail_start = n >= 3 ? n - 3 : 0;
  table.tail_monotone = n >= 2;
  for (std::size_t i = tail_start + 1; i < n; ++i) {
    if (!(table.rows[i].min_norm > table.rows[i - 1].min_norm)) table.tail_monotone = false;
  }
  if (n >= 2) {
    const auto& a = table.rows[n - 2];
    const auto& b = table.rows[n - 1];
    table.tail_exponent = (a.min_norm > 0.0 && b.min_norm > 0.0)
                              ? std::log(b.min_norm / a.min_norm) / std::log(b.radius / a.radius)
                              : (b.min_norm > a.min_norm ? std::numeric_limits<double>::infinity() : 0.0);
  }
  table.coercive = table.tail_monotone && table.tail_exponent >= kCoercivityExponent;
  return table;
}

CertificateReport to_report(const CoercivityTable& table) {
  CertificateReport r;
  r.condition = ConditionId::coercivity_witness;
  r.passed = table.coercive;
  if (table.tail_monotone) {
    r.margin = table.tail_exponent - kCoercivityExponent;
  } else {
    double worst = 0.0;
    for (std::size_t i = 1; i < table.rows.size(); ++i)
      worst = std::min(worst, table.rows[i].min_norm - table.rows[i - 1].min_norm);
    r.margin = table.rows.size() < 2 ? -1.0 : std::min(worst, -0.0);
  }
  // Keep passed <=> margin >= 0 even at the exponent threshold boundary.
  if (!r.passed && r.margin >= 0.0) r.margin = -std::numeric_limits<double>::min();
  for (const auto& row : table.rows) r.witnesses.push_back({row.argmin, row.min_norm});
  r.samples_used = static_cast<long>(table.rows.size()) * table.samples_per_radius;
  r.seed = table.seed;
  r.parameters["tail_exponent"] = table.tail_exponent;
  r.parameters["exponent_threshold"] = kCoercivityExponent;
  r.parameters["tail_monotone"] = table.tail_monotone ? 1.0 : 0.0;
  r.note = "empirical radial growth; witnesses are the sphere minimizers, value is |phi(x)|";
  return r;
}

}  // namespace gloinv
