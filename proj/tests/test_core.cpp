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
#include <limits>

#include <gloinv/algebraic.hpp>
#include <gloinv/core.hpp>
#include <gloinv/sampling.hpp>

#include "oracles.hpp"

using gloinv::Error;
using gloinv::ErrorKind;
using gloinv::GridFunction;
using gloinv::Matrix;
using gloinv::Vector;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected gloinv::Error");
  return ErrorKind::numerical;
}

Vector random_vector(int n, std::uint64_t seed, std::uint64_t index, double scale = 2.0) {
  Vector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = scale * (2.0 * gloinv::sampling::counter_uniform(seed, index, static_cast<std::uint64_t>(i)) - 1.0);
  return v;
}

}  // namespace

TEST_CASE("eta_quadratic values and gradient") {
  auto [v0, g0] = gloinv::eta_quadratic(Vector::Zero(2));
  CHECK(v0 == 0.0);
  CHECK(g0.norm() == 0.0);
  Vector v(2);
  v << 3.0, 4.0;
  auto [v1, g1] = gloinv::eta_quadratic(v);
  CHECK(v1 == doctest::Approx(12.5));
  CHECK((g1 - v).norm() == 0.0);
}

TEST_CASE("eta_quadratic rejects non-finite input") {
  Vector v(2);
  v << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK(kind_of([&] { gloinv::eta_quadratic(v); }) == ErrorKind::invalid_input);
}

TEST_CASE("eta_pnorm on constant, zero, and linear samples") {
  auto [c, gc] = gloinv::eta_pnorm(Vector::Ones(101), 3.0);
  CHECK(c == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  auto [z, gz] = gloinv::eta_pnorm(Vector::Zero(11), 4.0);
  CHECK(z == 0.0);
  CHECK(gz.norm() == 0.0);
  const Vector t = Vector::LinSpaced(1001, 0.0, 1.0);
  auto [lin, glin] = gloinv::eta_pnorm(t, 2.0);
  CHECK(std::abs(lin - 1.0 / 6.0) < 1e-4);
}

TEST_CASE("eta_pnorm rejects p below 2") {
  CHECK(kind_of([] { gloinv::eta_pnorm(Vector::Ones(5), 1.5); }) == ErrorKind::unsupported_exponent);
  CHECK(kind_of([] { gloinv::pnorm_functional(1.0, 4); }) == ErrorKind::unsupported_exponent);
}

TEST_CASE("sobolev_energy fixtures") {
  CHECK(gloinv::sobolev_energy(GridFunction::zero(16), 3.0).first == 0.0);
  const auto t = GridFunction::sample(64, [](double s) { return s; });
  CHECK(gloinv::sobolev_energy(t, 2.0).first == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(kind_of([] { gloinv::sobolev_energy(GridFunction::zero(1), 2.0); }) == ErrorKind::grid_too_coarse);
}

TEST_CASE("sobolev_energy gradient is the discrete p-Laplacian") {
  for (double p : {2.0, 3.0, 4.5}) {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      const int n = 12;
      const Vector free = random_vector(n, 7, trial);
      auto energy = [&](const Vector& z) {
        return gloinv::sobolev_energy(GridFunction::from_free_values(z, n, 1), p).first;
      };
      const Matrix grad = gloinv::sobolev_energy(GridFunction::from_free_values(free, n, 1), p).second;
      const Vector analytic = Eigen::Map<const Vector>(grad.data(), grad.size());
      CHECK(oracle::relative_error(analytic, oracle::central_gradient(energy, free)) < 1e-5);
    }
  }
}

TEST_CASE("jacobian_fd fixtures") {
  gloinv::NonlinearMap id{3, [](const Vector& x) { return x; }, {}};
  const Vector x = Vector::LinSpaced(3, -1.0, 2.0);
  CHECK((gloinv::jacobian_fd(id, x) - Matrix::Identity(3, 3)).norm() < 1e-10);

  Matrix a(2, 2);
  a << 1.0, -2.0, 3.5, 0.25;
  gloinv::NonlinearMap lin{2, [a](const Vector& v) { return Vector(a * v); }, {}};
  CHECK((gloinv::jacobian_fd(lin, Vector::Ones(2)) - a).norm() < 1e-8);

  const auto problem = gloinv::example_problem();
  const Vector one = Vector::Ones(2);
  CHECK((gloinv::jacobian_fd(problem.f, one) - problem.f.jacobian(one)).norm() < 1e-6);
}

TEST_CASE("jacobian_fd propagates non-finite evaluations") {
  gloinv::NonlinearMap bad{1, [](const Vector& x) { return Vector(x.array().log()); }, {}};
  CHECK(kind_of([&] { gloinv::jacobian_fd(bad, Vector::Zero(1)); }) == ErrorKind::numerical);
}

TEST_CASE("jacobian_fd agrees with analytic Jacobians on random points") {
  const auto problem = gloinv::example_problem();
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Vector x = random_vector(2, 11, i, 5.0);
    const Matrix exact = problem.f.jacobian(x);
    CHECK((gloinv::jacobian_fd(problem.f, x) - exact).norm() / std::max(1.0, exact.norm()) < 1e-6);
  }
}

TEST_CASE("GridFunction construction round trips") {
  const auto x = GridFunction::sample(10, [](double t) { return t * t; });
  CHECK(x.n_cells() == 10);
  CHECK(x.step() == doctest::Approx(0.1));
  const auto y = GridFunction::from_derivatives(x.derivatives());
  CHECK((x.values() - y.values()).norm() < 1e-14);
  const auto z = GridFunction::from_free_values(x.free_values(), 10, 1);
  CHECK((x.values() - z.values()).norm() == 0.0);
  Matrix bad = Matrix::Ones(5, 1);
  CHECK(kind_of([&] { GridFunction::from_values(bad); }) == ErrorKind::invalid_input);
}

TEST_CASE("trapezoid weights sum to one") {
  for (int n : {1, 2, 7, 512}) CHECK(gloinv::trapezoid_weights(n).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("block power functional gradient") {
  const auto eta = gloinv::block_power_functional(3.0, 2);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Vector v = random_vector(6, 5, i);
    CHECK(oracle::relative_error(eta.gradient(v), oracle::central_gradient(eta.value, v)) < 1e-5);
  }
}
