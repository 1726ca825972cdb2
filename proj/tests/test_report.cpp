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

#include <limits>
#include <sstream>

#include <gloinv/report.hpp>

using namespace gloinv;

TEST_CASE("certificate report fields") {
  CertificateReport r;
  r.condition = ConditionId::jacobian_nonsingular;
  r.passed = true;
  r.margin = 8.0;
  r.witnesses.push_back({Vector::Zero(2), 8.0});
  r.samples_used = 12;
  r.parameters["det_tolerance"] = 1e-12;
  r.seed = 7;
  const auto j = to_json(r);
  CHECK(j["condition_id"] == "jacobian_nonsingular");
  CHECK(j["passed"] == true);
  CHECK(j["margin"] == 8.0);
  CHECK(j["witnesses"][0]["point"].size() == 2);
  CHECK(j["witnesses"][0]["value"] == 8.0);
  CHECK(j["samples_used"] == 12);
  CHECK(j["parameters"]["det_tolerance"] == 1e-12);
  CHECK(j["seed"] == 7);
}

TEST_CASE("non-finite numbers become strings") {
  CertificateReport r;
  r.margin = -std::numeric_limits<double>::infinity();
  CHECK(to_json(r)["margin"] == "-inf");
  r.margin = std::numeric_limits<double>::quiet_NaN();
  CHECK(to_json(r)["margin"] == "nan");
}

TEST_CASE("solve result and trajectory csv") {
  SolveResult s;
  s.root = Vector::Ones(2);
  s.converged = true;
  s.termination = Termination::residual;
  s.trajectory = {{0, 2.0, 2.0}, {1, 0.5, 1.0}};
  const auto j = to_json(s, true);
  CHECK(j["converged"] == true);
  CHECK(j["termination"] == "residual");
  CHECK(j.contains("trajectory_summary"));
  CHECK_FALSE(to_json(s).contains("trajectory_summary"));
  std::istringstream csv(trajectory_csv(s));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "iter,phi,residual");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 2);
}
