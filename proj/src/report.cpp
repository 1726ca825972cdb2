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

#include "gloinv/report.hpp"

#include <cmath>
#include <sstream>

namespace gloinv {

namespace {

// JSON has no infinities; keep them readable instead of emitting null.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json to_json(const Vector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

nlohmann::json to_json(const Matrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

nlohmann::json to_json(const CertificateReport& r) {
  nlohmann::json out;
  out["condition_id"] = to_string(r.condition);
  out["passed"] = r.passed;
  out["margin"] = number(r.margin);
  auto witnesses = nlohmann::json::array();
  for (const auto& w : r.witnesses) witnesses.push_back({{"point", to_json(w.point)}, {"value", number(w.value)}});
  out["witnesses"] = std::move(witnesses);
  out["samples_used"] = r.samples_used;
  auto params = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  out["parameters"] = std::move(params);
  out["seed"] = r.seed;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

nlohmann::json to_json(const CoercivityTable& t) {
  auto rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    rows.push_back({{"radius", row.radius}, {"min_norm", number(row.min_norm)}, {"argmin", to_json(row.argmin)}});
  }
  return {{"rows", rows},
          {"tail_monotone", t.tail_monotone},
          {"tail_exponent", number(t.tail_exponent)},
          {"coercive", t.coercive},
          {"samples_per_radius", t.samples_per_radius},
          {"seed", t.seed}};
}

nlohmann::json to_json(const SolveResult& r, bool with_trajectory) {
  nlohmann::json out{{"root", to_json(r.root)},
                     {"residual_norm", number(r.residual_norm)},
                     {"phi", number(r.phi)},
                     {"gradient_norm", number(r.gradient_norm)},
                     {"iterations", r.iterations},
                     {"newton_steps", r.newton_steps},
                     {"gradient_steps", r.gradient_steps},
                     {"converged", r.converged},
                     {"termination", to_string(r.termination)},
                     {"events", r.events}};
  if (with_trajectory) {
    auto traj = nlohmann::json::array();
    for (const auto& p : r.trajectory) traj.push_back({p.iter, number(p.phi), number(p.residual)});
    out["trajectory_summary"] = std::move(traj);
  }
  return out;
}

nlohmann::json to_json(const UniquenessReport& r) {
  auto results = nlohmann::json::array();
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    auto item = to_json(r.results[i]);
    item["start"] = to_json(r.starts[i]);
    results.push_back(std::move(item));
  }
  return {{"verdict", to_string(r.verdict)},
          {"clustered", r.clustered()},
          {"max_pairwise_distance", number(r.max_pairwise_distance)},
          {"max_distance_to_mean", number(r.max_distance_to_mean)},
          {"cluster_radius", r.cluster_radius},
          {"mean_root", to_json(r.mean_root)},
          {"converged_count", r.converged_count},
          {"start_count", r.results.size()},
          {"results", std::move(results)}};
}

std::string trajectory_csv(const SolveResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "iter,phi,residual\n";
  for (const auto& p : r.trajectory) os << p.iter << ',' << p.phi << ',' << p.residual << '\n';
  return os.str();
}

}  // namespace gloinv
