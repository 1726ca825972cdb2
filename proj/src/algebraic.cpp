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

#include "gloinv/algebraic.hpp"

namespace gloinv {

NonlinearMap AlgebraicProblem::phi() const {
  if (a.rows() != f.dim || a.cols() != f.dim) throw Error(ErrorKind::invalid_input, "A and F dimensions disagree");
  NonlinearMap out;
  out.dim = f.dim;
  out.eval = [a = a, f = f](const Vector& x) -> Vector { return a * x - f(x); };
  out.jacobian = [a = a, f = f](const Vector& x) -> Matrix { return a - f.jacobian_at(x); };
  return out;
}

AlgebraicProblem example_problem() {
  AlgebraicProblem p;
  p.a.resize(2, 2);
  p.a << -2.0, 1.0, 6.0, -3.0;
  p.f.dim = 2;
  p.f.eval = [](const Vector& v) -> Vector {
    const double x = v(0);
    const double y = v(1);
    Vector out(2);
    out << x * x * x + y + 1.0, 6.0 * x + y + y * y * y + 1.0;
    return out;
  };
  p.f.jacobian = [](const Vector& v) -> Matrix {
    Matrix j(2, 2);
    j << 3.0 * v(0) * v(0), 1.0, 6.0, 1.0 + 3.0 * v(1) * v(1);
    return j;
  };
  return p;
}

ExampleCertificates certify_example(std::uint64_t seed) {
  const AlgebraicProblem p = example_problem();
  ExampleCertificates out;
  out.jacobian = check_jacobian_nonsingular(p.f, p.a, Box{Vector::Constant(2, -10.0), Vector::Constant(2, 10.0)}, 101,
                                            SamplingPlan{10000, seed});
  out.coercivity = coercivity_witness(p.phi(), {5.0, 10.0, 20.0, 40.0}, 720, seed);
  out.coercivity_report = to_report(out.coercivity);
  out.growth_iib = check_growth_power(p.f, PowerGrowthMode::iib, 0.4, 3.0, 10.0, SamplingPlan{4096, seed});
  return out;
}

UniquenessReport solve_example(std::uint64_t seed) {
  const AlgebraicProblem p = example_problem();
  SolveConfig cfg;
  cfg.start_box = StartBox{64, -5.0, 5.0, seed};
  return multistart_uniqueness(p.phi(), Vector::Zero(2), quadratic_functional(), cfg);
}

}  // namespace gloinv
