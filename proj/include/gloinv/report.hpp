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

#ifndef GLOINV_REPORT_HPP
#define GLOINV_REPORT_HPP

// JSON views of the result types. Field names are part of the file format
// consumed by downstream tooling; do not rename them.

#include <string>
#include <vector>

#include <json.hpp>

#include "gloinv/hypothesis.hpp"
#include "gloinv/solver.hpp"

namespace gloinv {

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const CoercivityTable& t);
/// Includes the trajectory summary when `with_trajectory` is set.
nlohmann::json to_json(const SolveResult& r, bool with_trajectory = false);
nlohmann::json to_json(const UniquenessReport& r);

/// "iter,phi,residual" rows.
std::string trajectory_csv(const SolveResult& r);

}  // namespace gloinv

#endif  // GLOINV_REPORT_HPP
