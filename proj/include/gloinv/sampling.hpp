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

#ifndef GLOINV_SAMPLING_HPP
#define GLOINV_SAMPLING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "gloinv/core.hpp"

namespace gloinv::sampling {

// Sample i of every sequence below is a pure function of (seed, i), so a
// plan with more samples always contains the smaller plan as a prefix.

std::uint64_t splitmix64(std::uint64_t x);
/// Uniform in [0, 1) from a counter.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
/// Radical inverse of index + 1 in the base of the `axis`-th prime.
double halton(std::uint64_t index, int axis);

/// Point i of a mixed sequence on [lo, hi]: even i take Halton points,
/// odd i take seeded uniform points.
Vector box_point(const Vector& lo, const Vector& hi, std::uint64_t seed, std::uint64_t i);
/// Unit direction i of a mixed sequence on the sphere in R^dim. The first
/// 2*dim directions are the signed coordinate axes.
Vector sphere_direction(int dim, std::uint64_t seed, std::uint64_t i);

/// Calls fn(i) for i in [0, count) on a small thread pool. The first
/// worker exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t grain = 256) {
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(std::thread::hardware_concurrency(), count / std::max<std::size_t>(grain, 1) + 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// fn(i) for every index, returned in index order.
template <typename Fn>
std::vector<double> parallel_evaluate(std::size_t count, Fn&& fn) {
  std::vector<double> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

/// Index of the smallest value; ties go to the lowest index.
std::size_t argmin(const std::vector<double>& values);

}  // namespace gloinv::sampling

#endif  // GLOINV_SAMPLING_HPP
