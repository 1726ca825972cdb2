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

#ifndef GLOINV_ALGEBRAIC_HPP
#define GLOINV_ALGEBRAIC_HPP

#include <cstdint>
#include <vector>

#include "gloinv/core.hpp"
#include "gloinv/hypothesis.hpp"
#include "gloinv/solver.hpp"

namespace gloinv {

/// The system A x = F(x), solved as phi(x) = A x - F(x) = 0.
struct AlgebraicProblem {
  Matrix a;
  NonlinearMap f;

  /// phi(x) = A x - F(x) with Jacobian A - F'(x).
  NonlinearMap phi() const;
};

/// A = [[-2, 1], [6, -3]] (singular, indefinite) and
/// F(x, y) = (x^3 + y + 1, 6x + y + y^3 + 1) with analytic Jacobian.
AlgebraicProblem example_problem();

struct ExampleCertificates {
  CertificateReport jacobian;
  CoercivityTable coercivity;
  CertificateReport coercivity_report;
  CertificateReport growth_iib;

  std::vector<CertificateReport> reports() const { return {jacobian, coercivity_report, growth_iib}; }
  bool all_passed() const { return jacobian.passed && coercivity_report.passed && growth_iib.passed; }
};

/// Nonsingularity on [-10, 10]^2 (101 x 101 grid plus 10^4 samples),
/// coercivity on radii {5, 10, 20, 40}, and |F(x)| >= 0.4 |x|^3 for
/// |x| >= 10.
ExampleCertificates certify_example(std::uint64_t seed = 20260101);

/// 64 seeded starts in [-5, 5]^2 on phi(v) = 0.
UniquenessReport solve_example(std::uint64_t seed = 20260101);

}  // namespace gloinv

#endif  // GLOINV_ALGEBRAIC_HPP
