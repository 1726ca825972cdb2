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

#ifndef GLOINV_HYPOTHESIS_HPP
#define GLOINV_HYPOTHESIS_HPP

// Sampling certificates for the hypotheses that make x -> A x - F(x) a
// global diffeomorphism: a growth alternative for F at infinity plus a
// nonsingular derivative everywhere. None of these checks is a proof; each
// report carries the sampled domain and the seed that reproduces it.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gloinv/core.hpp"

namespace gloinv {

enum class ConditionId {
  growth_i_small,
  growth_i_large,
  growth_iia,
  growth_iib,
  jacobian_nonsingular,
  coercivity_witness,
  kernel_c1,
  kernel_growth,
  kernel_derivative_growth,
};

const char* to_string(ConditionId id);

struct Witness {
  Vector point;
  double value = 0.0;
};

/// Outcome of one sampled hypothesis check. `margin` is the worst slack
/// over all samples; inequality checks pass when it is non-negative.
struct CertificateReport {
  ConditionId condition = ConditionId::growth_i_small;
  bool passed = false;
  double margin = 0.0;
  std::vector<Witness> witnesses;
  long samples_used = 0;
  std::map<std::string, double> parameters;
  std::uint64_t seed = 0;
  std::string note;
};

struct SamplingPlan {
  int samples = 4096;
  std::uint64_t seed = 20260101;
};

struct SingularValueBounds {
  double min = 0.0;
  double max = 0.0;
  /// Unit eigenvectors of A^T A for min^2 and max^2.
  Vector min_vector;
  Vector max_vector;
};

/// Extreme singular values of A, i.e. square roots of the extreme
/// eigenvalues of A^T A. Throws for the zero matrix.
SingularValueBounds singular_value_bounds(const Matrix& a);

/// |F(x)| <= a |x| on the annulus R <= |x| <= 10 R.
CertificateReport check_growth_small(const NonlinearMap& f, double a, double radius, const SamplingPlan& plan);
/// |F(x)| >= b |x| on the annulus R <= |x| <= 10 R.
CertificateReport check_growth_large(const NonlinearMap& f, double b, double radius, const SamplingPlan& plan);

enum class PowerGrowthMode { iia, iib };

/// iia: |F(x)| <= coeff |x|^expo with 0 < expo < 1.
/// iib: |F(x)| >= coeff |x|^expo with expo > 1.
CertificateReport check_growth_power(const NonlinearMap& f, PowerGrowthMode mode, double coeff, double expo,
                                     double radius, const SamplingPlan& plan);

struct Box {
  Vector lo;
  Vector hi;
};

/// Below this |det| a matrix is treated as singular.
inline constexpr double kDeterminantTolerance = 1e-12;

/// min |det(A - F'(x))| over a tensor grid with `grid_per_axis` points per
/// axis plus `plan.samples` mixed Halton/uniform points in the box.
CertificateReport check_jacobian_nonsingular(const NonlinearMap& f, const Matrix& a, const Box& box,
                                             int grid_per_axis, const SamplingPlan& plan);

struct CoercivityRow {
  double radius = 0.0;
  double min_norm = 0.0;
  Vector argmin;
};

/// Growth exponent the tail of a coercivity table must reach.
inline constexpr double kCoercivityExponent = 0.25;

struct CoercivityTable {
  std::vector<CoercivityRow> rows;
  bool tail_monotone = false;
  /// log(m_last / m_prev) / log(r_last / r_prev) over the final pair.
  double tail_exponent = 0.0;
  bool coercive = false;
  std::uint64_t seed = 0;
  int samples_per_radius = 0;
};

/// min |phi(x)| over sampled spheres |x| = r for each radius. The table is
/// flagged coercive when its last three minima increase strictly and the
/// final pair grows at least like r^kCoercivityExponent.
CoercivityTable coercivity_witness(const NonlinearMap& phi, const std::vector<double>& radii,
                                   int samples_per_radius, std::uint64_t seed = 20260101);

CertificateReport to_report(const CoercivityTable& table);

}  // namespace gloinv

#endif  // GLOINV_HYPOTHESIS_HPP
