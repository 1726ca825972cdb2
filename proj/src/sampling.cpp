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

#include "gloinv/sampling.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace gloinv::sampling {

namespace {

constexpr std::array<int, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,  29,  31,  37,  41,  43,  47,  53,
                                         59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const double u1 = 1.0 - counter_uniform(seed, stream, 2 * index);
  const double u2 = counter_uniform(seed, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t bits = splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double halton(std::uint64_t index, int axis) {
  const int base = kPrimes[static_cast<std::size_t>(axis) % kPrimes.size()];
  double f = 1.0;
  double r = 0.0;
  std::uint64_t i = index + 1;  // skip the all-zero point
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

Vector box_point(const Vector& lo, const Vector& hi, std::uint64_t seed, std::uint64_t i) {
  const Eigen::Index d = lo.size();
  Vector u(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    u(a) = (i % 2 == 0) ? halton(i / 2, static_cast<int>(a))
                        : counter_uniform(seed, static_cast<std::uint64_t>(a), i / 2);
  }
  return lo + (hi - lo).cwiseProduct(u);
}

Vector sphere_direction(int dim, std::uint64_t seed, std::uint64_t i) {
  Vector v = Vector::Zero(dim);
  const auto axes = static_cast<std::uint64_t>(2 * dim);
  if (i < axes) {
    v(static_cast<Eigen::Index>(i / 2)) = (i % 2 == 0) ? 1.0 : -1.0;
    return v;
  }
  const std::uint64_t j = i - axes;
  if (dim == 1) {
    v(0) = (j % 2 == 0) ? 1.0 : -1.0;
    return v;
  }
  if (j % 2 == 0 && dim == 2) {
    const double angle = 2.0 * std::numbers::pi * halton(j / 2, 0);
    v << std::cos(angle), std::sin(angle);
    return v;
  }
  for (int a = 0; a < dim; ++a) v(a) = gaussian(seed, static_cast<std::uint64_t>(a), j);
  const double n = v.norm();
  if (n < 1e-300) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / n;
}

std::size_t argmin(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = i;
  return best;
}

}  // namespace gloinv::sampling
