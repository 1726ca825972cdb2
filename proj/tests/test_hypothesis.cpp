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

#include <doctest.h>

#include <cmath>

#include <gloinv/algebraic.hpp>
#include <gloinv/hypothesis.hpp>
#include <gloinv/sampling.hpp>

using namespace gloinv;

namespace {

NonlinearMap zero_map(int dim) {
  return {dim, [dim](const Vector&) { return Vector(Vector::Zero(dim)); },
          [dim](const Vector&) { return Matrix(Matrix::Zero(dim, dim)); }};
}

NonlinearMap identity_map(int dim) {
  return {dim, [](const Vector& x) { return x; }, [dim](const Vector&) { return Matrix(Matrix::Identity(dim, dim)); }};
}

NonlinearMap componentwise(int dim, double (*fn)(double)) {
  return {dim, [fn](const Vector& x) { return Vector(x.unaryExpr(fn)); }, {}};
}

double signed_cbrt(double v) { return std::cbrt(v); }
double sine(double v) { return std::sin(v); }
double arctangent(double v) { return std::atan(v); }

Box square_box(double half) {
  return {Vector::Constant(2, -half), Vector::Constant(2, half)};
}

}  // namespace

TEST_CASE("singular value bounds") {
  auto id = singular_value_bounds(Matrix::Identity(2, 2));
  CHECK(id.min == doctest::Approx(1.0));
  CHECK(id.max == doctest::Approx(1.0));
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 2.0, 5.0;
  auto dd = singular_value_bounds(d);
  CHECK(dd.min == doctest::Approx(2.0));
  CHECK(dd.max == doctest::Approx(5.0));
  const auto ex = singular_value_bounds(example_problem().a);
  CHECK(ex.min == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(ex.max == doctest::Approx(std::sqrt(50.0)).epsilon(1e-12));
  CHECK(example_problem().a.determinant() == doctest::Approx(0.0));
  CHECK_THROWS_AS(singular_value_bounds(Matrix::Zero(2, 2)), Error);
}

TEST_CASE("singular values bracket |Ax| / |x|") {
  Matrix a(3, 3);
  a << 1.0, 2.0, -1.0, 0.5, -3.0, 2.0, 4.0, 0.0, 1.0;
  const auto sv = singular_value_bounds(a);
  CHECK(sv.min <= sv.max);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Vector x = sampling::sphere_direction(3, 5, i);
    const double r = (a * x).norm();
    CHECK(r >= sv.min - 1e-12);
    CHECK(r <= sv.max + 1e-12);
  }
  CHECK((a * sv.min_vector).norm() == doctest::Approx(sv.min));
  CHECK((a * sv.max_vector).norm() == doctest::Approx(sv.max));
}

TEST_CASE("small growth fixtures") {
  const SamplingPlan plan{512, 3};
  const auto zero = check_growth_small(zero_map(2), 0.5, 4.0, plan);
  CHECK(zero.passed);
  CHECK(zero.margin >= 0.5 * 4.0);
  const auto lin = check_growth_small(identity_map(2), 0.5, 4.0, plan);
  CHECK_FALSE(lin.passed);
  CHECK(lin.margin <= -0.5 * 4.0);
  CHECK(check_growth_small(componentwise(2, sine), 0.1, 100.0, plan).passed);
  CHECK(zero.condition == ConditionId::growth_i_small);
  CHECK_THROWS_AS(check_growth_small(zero_map(2), 0.5, 4.0, {0, 3}), Error);
}

TEST_CASE("large growth fixtures") {
  const SamplingPlan plan{512, 3};
  NonlinearMap ten{2, [](const Vector& x) { return Vector(10.0 * x); }, {}};
  CHECK(check_growth_large(ten, 2.0, 1.0, plan).passed);
  CHECK_FALSE(check_growth_large(zero_map(2), 1.0, 1.0, plan).passed);
  CHECK(check_growth_large(example_problem().f, 8.0, 10.0, plan).passed);
}

TEST_CASE("power growth fixtures") {
  const SamplingPlan plan{1024, 3};
  CHECK(check_growth_power(componentwise(2, signed_cbrt), PowerGrowthMode::iia, 2.0, 0.5, 10.0, plan).passed);
  CHECK_FALSE(check_growth_power(identity_map(2), PowerGrowthMode::iib, 1.0, 2.0, 2.0, plan).passed);
  CHECK(check_growth_power(example_problem().f, PowerGrowthMode::iib, 0.4, 3.0, 10.0, plan).passed);
  CHECK_THROWS_AS(check_growth_power(identity_map(2), PowerGrowthMode::iia, 1.0, 1.5, 2.0, plan), Error);
  CHECK_THROWS_AS(check_growth_power(identity_map(2), PowerGrowthMode::iib, 1.0, 0.5, 2.0, plan), Error);
}

TEST_CASE("growth certificates are monotone in the sample count") {
  const auto f = componentwise(3, arctangent);
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {16, 64, 256, 1024}) {
    const auto r = check_growth_large(f, 0.01, 5.0, {n, 17});
    CHECK(r.margin <= previous);
    previous = r.margin;
  }
}

TEST_CASE("jacobian certificate fixtures") {
  const auto trivial = check_jacobian_nonsingular(zero_map(2), Matrix::Identity(2, 2), square_box(3.0), 11, {100, 1});
  CHECK(trivial.passed);
  CHECK(trivial.margin == doctest::Approx(1.0));

  NonlinearMap line{1, [](const Vector& x) { return x; }, {}};
  const Box unit{Vector::Constant(1, -1.0), Vector::Constant(1, 1.0)};
  const auto degenerate = check_jacobian_nonsingular(line, Matrix::Identity(1, 1), unit, 11, {100, 1});
  CHECK_FALSE(degenerate.passed);
  CHECK(degenerate.margin == doctest::Approx(0.0));
}

TEST_CASE("jacobian certificate on the worked example") {
  const auto p = example_problem();
  const auto r = check_jacobian_nonsingular(p.f, p.a, square_box(10.0), 101, {10000, 20260101});
  CHECK(r.passed);
  // det(A - F') = (3x^2 + 2)(3y^2 + 4) for this F; minimum 8 at the origin.
  CHECK(r.margin == doctest::Approx(8.0).epsilon(1e-12));
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().point.norm() < 1e-12);
  CHECK(r.samples_used == 101 * 101 + 10000);
}

TEST_CASE("coercivity witness fixtures") {
  const auto id = coercivity_witness(identity_map(2), {1.0, 2.0, 4.0}, 64, 1);
  REQUIRE(id.rows.size() == 3);
  CHECK(id.rows[0].min_norm == doctest::Approx(1.0));
  CHECK(id.rows[1].min_norm == doctest::Approx(2.0));
  CHECK(id.rows[2].min_norm == doctest::Approx(4.0));
  CHECK(id.coercive);
  CHECK(to_report(id).passed);

  const auto bounded = coercivity_witness(componentwise(2, arctangent), {1.0, 10.0, 100.0}, 360, 1);
  for (const auto& row : bounded.rows) CHECK(row.min_norm <= std::sqrt(2.0) * M_PI / 2.0);
  CHECK_FALSE(bounded.coercive);
  CHECK_FALSE(to_report(bounded).passed);
}

TEST_CASE("coercivity table of the worked example respects the analytic lower bound") {
  const auto phi = example_problem().phi();
  const auto table = coercivity_witness(phi, {5.0, 10.0, 20.0}, 720, 20260101);
  for (const auto& row : table.rows) {
    const double r = row.radius;
    const double bound = 0.5 * r * r * r - (6.0 * std::sqrt(2.0) + std::sqrt(50.0)) * r - std::sqrt(2.0);
    CHECK(row.min_norm >= bound);
  }
  CHECK(table.coercive);
}

TEST_CASE("auxiliary norm inequality |v| <= 2^{1/3} (x^6 + y^6)^{1/6}") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double x = 200.0 * sampling::counter_uniform(77, 0, i) - 100.0;
    const double y = 200.0 * sampling::counter_uniform(77, 1, i) - 100.0;
    const double lhs = std::hypot(x, y);
    const double rhs = std::cbrt(2.0) * std::pow(std::pow(x, 6) + std::pow(y, 6), 1.0 / 6.0);
    CHECK(lhs <= rhs * (1.0 + 1e-14));
  }
}
