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

#include <atomic>
#include <stdexcept>

#include <gloinv/sampling.hpp>

using gloinv::Vector;
namespace sampling = gloinv::sampling;

TEST_CASE("halton radical inverse") {
  CHECK(sampling::halton(0, 0) == doctest::Approx(0.5));
  CHECK(sampling::halton(1, 0) == doctest::Approx(0.25));
  CHECK(sampling::halton(2, 0) == doctest::Approx(0.75));
  CHECK(sampling::halton(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(sampling::halton(4, 1) == doctest::Approx(7.0 / 9.0));
}

TEST_CASE("counter uniform draws are reproducible and in range") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = sampling::counter_uniform(42, 3, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == sampling::counter_uniform(42, 3, i));
  }
  CHECK(sampling::counter_uniform(42, 3, 0) != sampling::counter_uniform(43, 3, 0));
}

TEST_CASE("box points stay in the box and depend only on (seed, index)") {
  Vector lo(2), hi(2);
  lo << -10.0, 0.0;
  hi << 10.0, 1.0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Vector p = sampling::box_point(lo, hi, 9, i);
    CHECK(((p.array() >= lo.array()) && (p.array() <= hi.array())).all());
    CHECK((p - sampling::box_point(lo, hi, 9, i)).norm() == 0.0);
  }
}

TEST_CASE("sphere directions are unit vectors, axes first") {
  for (int dim : {1, 2, 3, 5}) {
    for (std::uint64_t j = 0; j < 200; ++j) CHECK(sampling::sphere_direction(dim, 1, j).norm() == doctest::Approx(1.0));
  }
  const Vector e0 = sampling::sphere_direction(3, 1, 0);
  CHECK(e0.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(5000);
  sampling::parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); }, 16);
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  CHECK_THROWS_AS(sampling::parallel_for(
                      4000,
                      [](std::size_t i) {
                        if (i == 1234) throw std::runtime_error("boom");
                      },
                      8),
                  std::runtime_error);
}

TEST_CASE("parallel_evaluate keeps index order; argmin prefers the first tie") {
  const auto v = sampling::parallel_evaluate(1000, [](std::size_t i) { return static_cast<double>((i * 7) % 13); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<double>((i * 7) % 13));
  CHECK(sampling::argmin(v) == 0);
  CHECK(sampling::argmin({3.0, 1.0, 1.0}) == 1);
}
