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

#include "gloinv/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gloinv/algebraic.hpp"
#include "gloinv/bielecki.hpp"
#include "gloinv/report.hpp"
#include "gloinv/volterra.hpp"

namespace gloinv::cli {

using nlohmann::json;

const char* to_string(Command c) {
  switch (c) {
    case Command::certify: return "certify";
    case Command::solve: return "solve";
    case Command::volterra: return "volterra";
    case Command::bielecki_check: return "bielecki-check";
    case Command::example: return "example";
  }
  return "unknown";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::certify, Command::solve, Command::volterra, Command::bielecki_check, Command::example})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

namespace {

// Reads fields of one JSON object, recording every default it fills and
// rejecting keys nobody asked for.
class Fields {
 public:
  Fields(const json& doc, std::string path) : path_(std::move(path)) {
    if (doc.is_null()) {
      doc_ = json::object();
    } else if (!doc.is_object()) {
      throw ConfigError(path_.empty() ? "$" : path_, "expected an object");
    } else {
      doc_ = doc;
    }
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return doc_.contains(key); }
  const json& raw(const std::string& key) {
    used_.insert(key);
    return doc_.at(key);
  }

  double number(const std::string& key, double fallback, const std::function<bool(double)>& ok, const char* rule) {
    double v = fallback;
    if (has(key)) {
      const json& j = raw(key);
      if (!j.is_number()) throw ConfigError(at(key), "expected a number");
      v = j.get<double>();
    }
    if (!std::isfinite(v) || !ok(v)) throw ConfigError(at(key), std::string("out of range: ") + rule);
    resolved_[key] = v;
    return v;
  }

  long integer(const std::string& key, long fallback, long min, long max) {
    long v = fallback;
    if (has(key)) {
      const json& j = raw(key);
      if (!j.is_number_integer()) throw ConfigError(at(key), "expected an integer");
      v = j.get<long>();
    }
    if (v < min || v > max) {
      throw ConfigError(at(key), "out of range: must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    resolved_[key] = v;
    return v;
  }

  std::string choice(const std::string& key, const std::string& fallback, const std::set<std::string>& allowed) {
    std::string v = fallback;
    if (has(key)) {
      const json& j = raw(key);
      if (!j.is_string()) throw ConfigError(at(key), "expected a string");
      v = j.get<std::string>();
    }
    if (!allowed.empty() && !allowed.count(v)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError(at(key), "unknown value '" + v + "'; expected one of: " + list);
    }
    resolved_[key] = v;
    return v;
  }

  bool flag(const std::string& key, bool fallback) {
    bool v = fallback;
    if (has(key)) {
      const json& j = raw(key);
      if (!j.is_boolean()) throw ConfigError(at(key), "expected true or false");
      v = j.get<bool>();
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback, std::size_t min_size) {
    std::vector<double> v = fallback;
    if (has(key)) {
      const json& j = raw(key);
      if (!j.is_array()) throw ConfigError(at(key), "expected an array of numbers");
      v.clear();
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
        v.push_back(j[i].get<double>());
        if (!std::isfinite(v.back())) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "must be finite");
      }
    }
    if (v.size() < min_size) throw ConfigError(at(key), "needs at least " + std::to_string(min_size) + " entries");
    resolved_[key] = v;
    return v;
  }

  std::vector<std::vector<double>> points(const std::string& key) {
    std::vector<std::vector<double>> out;
    const json& j = raw(key);
    if (!j.is_array()) throw ConfigError(at(key), "expected an array of points");
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = at(key) + "[" + std::to_string(i) + "]";
      if (!j[i].is_array() || j[i].empty()) throw ConfigError(p, "expected a non-empty array of numbers");
      std::vector<double> pt;
      for (const auto& e : j[i]) {
        if (!e.is_number() || !std::isfinite(e.get<double>())) throw ConfigError(p, "expected finite numbers");
        pt.push_back(e.get<double>());
      }
      out.push_back(std::move(pt));
    }
    resolved_[key] = out;
    return out;
  }

  void set(const std::string& key, json value) { resolved_[key] = std::move(value); }

  json finish() const {
    for (const auto& [key, value] : doc_.items()) {
      (void)value;
      if (!used_.count(key)) throw ConfigError(at(key), "unknown key");
    }
    return resolved_;
  }

 private:
  json doc_;
  std::string path_;
  std::set<std::string> used_;
  json resolved_ = json::object();
};

auto positive = [](double v) { return v > 0.0; };
auto exponent_ok = [](double v) { return v >= 2.0; };
auto non_negative = [](double v) { return v >= 0.0; };

const std::set<std::string> kMapNames = {"example", "identity", "cubic", "square", "arctan", "sin"};
const std::set<std::string> kKernelNames = {"log", "zero", "linear", "square", "tabulated"};

json parse_forcing(const json& doc, const std::string& path, double fallback_constant) {
  Fields f(doc.is_null() ? json{{"constant", fallback_constant}} : doc, path);
  int given = 0;
  for (const char* key : {"constant", "polynomial", "csv"}) given += f.has(key) ? 1 : 0;
  if (given != 1) throw ConfigError(path, "give exactly one of constant, polynomial, csv");
  if (f.has("constant")) f.number("constant", 0.0, [](double) { return true; }, "finite");
  if (f.has("polynomial")) f.numbers("polynomial", {}, 1);
  if (f.has("csv")) f.choice("csv", "", {});
  return f.finish();
}

json parse_solver_fields(Fields& f) {
  f.number("tol_residual", 1e-10, positive, "> 0");
  f.number("tol_gradient", 1e-8, positive, "> 0");
  f.integer("max_iters", 500, 0, 1000000);
  f.number("shrink", 0.5, [](double v) { return v > 0.0 && v < 1.0; }, "in (0, 1)");
  f.number("sufficient_decrease", 1e-4, [](double v) { return v > 0.0 && v < 1.0; }, "in (0, 1)");
  return json();
}

// Command-line flags replace the matching document keys.
json apply_overrides(Command command, json doc, const Overrides& ov) {
  const bool volterra = command == Command::volterra;
  const bool bielecki = command == Command::bielecki_check;
  auto reject = [&](const char* flag) {
    throw ConfigError(flag, std::string("not used by '") + to_string(command) + "'");
  };
  if (ov.n_cells) {
    if (!volterra && !bielecki) reject("--n-cells");
    doc["n_cells"] = *ov.n_cells;
  }
  if (ov.alpha) {
    if (!volterra) reject("--alpha");
    doc["alpha"] = *ov.alpha;
  }
  if (ov.p) {
    if (volterra || command == Command::solve) doc["p"] = *ov.p;
    else if (bielecki) doc["p"] = json::array({*ov.p});
    else reject("--p");
  }
  if (ov.k) {
    if (volterra) {
      doc["k"] = *ov.k;
    } else if (bielecki) {
      if (*ov.k == "auto") throw ConfigError("k", "'auto' is only meaningful for volterra");
      doc["k"] = *ov.k;
    } else {
      reject("--k");
    }
  }
  return doc;
}

json parse_parameters(Command command, const json& document, const Overrides& ov) {
  const json doc = apply_overrides(command, document, ov);
  Fields f(doc, "");
  switch (command) {
    case Command::example:
      break;
    case Command::certify: {
      f.choice("F", "example", {"example", "zero", "identity", "sin", "arctan"});
      if (f.has("A")) {
        const auto rows = f.points("A");
        for (const auto& r : rows)
          if (r.size() != rows.size()) throw ConfigError("A", "matrix must be square");
      } else {
        f.set("A", json::array({json::array({-2.0, 1.0}), json::array({6.0, -3.0})}));
      }
      f.numbers("box", {-10.0, 10.0}, 2);
      f.integer("grid_per_axis", 101, 0, 100000);
      f.integer("random_samples", 10000, 0, 100000000);
      f.numbers("radii", {5.0, 10.0, 20.0, 40.0}, 1);
      f.integer("samples_per_radius", 720, 1, 10000000);
      json growth = f.has("growth") ? f.raw("growth") : json();
      Fields g(growth, "growth");
      g.choice("mode", "iib", {"small", "large", "iia", "iib", "none"});
      g.number("coeff", 0.4, positive, "> 0");
      g.number("exponent", 3.0, positive, "> 0");
      g.number("radius", 10.0, positive, "> 0");
      g.integer("samples", 4096, 1, 100000000);
      f.set("growth", g.finish());
      break;
    }
    case Command::solve: {
      const std::string map = f.choice("map", "example", kMapNames);
      const long fixed_dim = map == "example" ? 2 : (map == "square" ? 1 : 0);
      const long dim = f.integer("dim", fixed_dim ? fixed_dim : 2, 1, 64);
      if (fixed_dim && dim != fixed_dim) throw ConfigError("dim", "map '" + map + "' has fixed dimension " + std::to_string(fixed_dim));
      const auto target = f.numbers("target", std::vector<double>(static_cast<std::size_t>(dim), 0.0), 1);
      if (static_cast<long>(target.size()) != dim) throw ConfigError("target", "length must equal dim");
      if (f.has("starts")) {
        const auto starts = f.points("starts");
        for (std::size_t i = 0; i < starts.size(); ++i)
          if (static_cast<long>(starts[i].size()) != dim) throw ConfigError("starts[" + std::to_string(i) + "]", "length must equal dim");
        if (starts.size() < 1) throw ConfigError("starts", "needs at least one start");
      } else {
        json box = f.has("start_box") ? f.raw("start_box") : json();
        Fields b(box, "start_box");
        b.integer("count", 64, 1, 1000000);
        const double lo = b.number("lo", -5.0, [](double) { return true; }, "finite");
        b.number("hi", 5.0, [lo](double v) { return v > lo; }, "> lo");
        f.set("start_box", b.finish());
      }
      if (f.has("targets")) f.points("targets");
      f.choice("eta", "quadratic", {"quadratic", "power"});
      f.number("p", 2.0, exponent_ok, "p >= 2 (p-power functionals need 2 <= p < inf)");
      parse_solver_fields(f);
      f.flag("trajectory_csv", false);
      break;
    }
    case Command::volterra: {
      const std::string kernel = f.choice("kernel", "log", kKernelNames);
      f.number("alpha", 1.0, positive, "> 0");
      if (kernel == "tabulated") {
        f.choice("table", "", {});
      } else if (f.has("table")) {
        throw ConfigError("table", "only used with kernel 'tabulated'");
      }
      f.set("y", parse_forcing(f.has("y") ? f.raw("y") : json(), "y", 1.0));
      f.integer("n_cells", 256, 8, 1 << 16);
      f.number("p", 2.0, exponent_ok, "p >= 2 (p-power functionals need 2 <= p < inf)");
      std::string k_text;
      if (f.has("k")) {
        const json& kj = f.raw("k");
        if (!kj.is_string() && !kj.is_number()) throw ConfigError("k", "expected a number or \"auto\"");
        k_text = kj.is_string() ? kj.get<std::string>() : kj.dump();
      }
      if (k_text.empty() || k_text == "auto") {
        f.set("k", "auto");
      } else {
        double k = 0.0;
        try {
          std::size_t pos = 0;
          k = std::stod(k_text, &pos);
          if (pos != k_text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw ConfigError("k", "expected a number or \"auto\"");
        }
        if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("k", "out of range: k > 0");
        f.set("k", k);
      }
      f.flag("variational", true);
      f.flag("convergence", true);
      json deriv = f.has("derivative_check") ? f.raw("derivative_check") : json();
      Fields d(deriv, "derivative_check");
      d.flag("enabled", true);
      d.set("dy", parse_forcing(d.has("dy") ? d.raw("dy") : json(), "derivative_check.dy", 1.0));
      const auto eps = d.numbers("eps", {1e-2, 1e-3, 1e-4}, 2);
      for (double e : eps)
        if (!(e > 0.0)) throw ConfigError("derivative_check.eps", "step sizes must be positive");
      f.set("derivative_check", d.finish());
      json hyp = f.has("hypotheses") ? f.raw("hypotheses") : json();
      Fields h(hyp, "hypotheses");
      h.integer("samples", 4000, 1, 100000000);
      h.number("x_max", 10.0, positive, "> 0");
      f.set("hypotheses", h.finish());
      parse_solver_fields(f);
      break;
    }
    case Command::bielecki_check: {
      f.integer("functions", 100, 1, 1000000);
      f.integer("n_cells", 512, 2, 1 << 20);
      const auto ps = f.numbers("p", {2.0, 3.0}, 1);
      for (double p : ps)
        if (!(p >= 2.0)) throw ConfigError("p", "out of range: p >= 2 (p-power functionals need 2 <= p < inf)");
      std::vector<double> ks;
      if (f.has("k") && f.raw("k").is_string()) {
        const std::string text = f.raw("k").get<std::string>();
        try {
          std::size_t pos = 0;
          ks = {std::stod(text, &pos)};
          if (pos != text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw ConfigError("k", "expected a number");
        }
        f.set("k", ks);
      } else {
        ks = f.numbers("k", {0.5, 1.0, 5.0}, 1);
      }
      for (double k : ks)
        if (!(k > 0.0)) throw ConfigError("k", "out of range: k > 0");
      break;
    }
  }
  return f.finish();
}

// ---------------------------------------------------------------- pipelines

NonlinearMap named_map(const std::string& name, int dim) {
  if (name == "example") return example_problem().phi();
  NonlinearMap m;
  m.dim = dim;
  if (name == "identity") {
    m.eval = [](const Vector& x) -> Vector { return x; };
    m.jacobian = [dim](const Vector&) -> Matrix { return Matrix::Identity(dim, dim); };
  } else if (name == "cubic") {
    m.eval = [](const Vector& x) -> Vector { return x.array().cube() + x.array(); };
    m.jacobian = [](const Vector& x) -> Matrix { return (3.0 * x.array().square() + 1.0).matrix().asDiagonal(); };
  } else if (name == "square") {
    m.eval = [](const Vector& x) -> Vector { return x.array().square(); };
    m.jacobian = [](const Vector& x) -> Matrix { return (2.0 * x.array()).matrix().asDiagonal(); };
  } else if (name == "arctan") {
    m.eval = [](const Vector& x) -> Vector { return x.array().atan(); };
    m.jacobian = [](const Vector& x) -> Matrix { return (1.0 / (1.0 + x.array().square())).matrix().asDiagonal(); };
  } else if (name == "sin") {
    m.eval = [](const Vector& x) -> Vector { return x.array().sin(); };
    m.jacobian = [](const Vector& x) -> Matrix { return x.array().cos().matrix().asDiagonal(); };
  } else if (name == "zero") {
    m.eval = [dim](const Vector&) -> Vector { return Vector::Zero(dim); };
    m.jacobian = [dim](const Vector&) -> Matrix { return Matrix::Zero(dim, dim); };
  } else {
    throw Error(ErrorKind::invalid_input, "unknown map " + name);
  }
  return m;
}

Vector to_vector(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

SolveConfig solver_config(const json& p) {
  SolveConfig cfg;
  cfg.tol_residual = p.at("tol_residual").get<double>();
  cfg.tol_gradient = p.at("tol_gradient").get<double>();
  cfg.max_iters = p.at("max_iters").get<int>();
  cfg.line_search.shrink = p.at("shrink").get<double>();
  cfg.line_search.sufficient_decrease = p.at("sufficient_decrease").get<double>();
  return cfg;
}

std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0.0;
    double b = 0.0;
    if (!(ls >> a >> b)) {
      if (rows.empty()) continue;  // header
      throw Error(ErrorKind::invalid_input, path + ": malformed row '" + line + "'");
    }
    rows.emplace_back(a, b);
  }
  if (rows.size() < 2) throw Error(ErrorKind::invalid_input, path + ": needs at least two rows");
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].first > rows[i - 1].first)) throw Error(ErrorKind::invalid_input, path + ": first column must increase");
  return rows;
}

std::function<double(double)> forcing_function(const json& source) {
  if (source.contains("constant")) {
    const double c = source["constant"].get<double>();
    return [c](double) { return c; };
  }
  if (source.contains("polynomial")) {
    const auto coeffs = source["polynomial"].get<std::vector<double>>();
    return [coeffs](double t) {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
      return v;
    };
  }
  const auto rows = read_csv_pairs(source["csv"].get<std::string>());
  return [rows](double t) {
    if (t <= rows.front().first) return rows.front().second;
    if (t >= rows.back().first) return rows.back().second;
    const auto it = std::upper_bound(rows.begin(), rows.end(), t, [](double v, const auto& r) { return v < r.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.second + (t - lo.first) / (hi.first - lo.first) * (hi.second - lo.second);
  };
}

VolterraKernel named_kernel(const json& p) {
  const std::string name = p["kernel"];
  const double exponent = p["p"];
  if (name == "log") return paper_kernel(p["alpha"].get<double>(), exponent);
  if (name == "zero") return zero_kernel();
  if (name == "linear") return linear_kernel(exponent);
  if (name == "square") return square_kernel(exponent);
  std::vector<double> lags;
  std::vector<double> weights;
  for (const auto& [a, b] : read_csv_pairs(p["table"].get<std::string>())) {
    lags.push_back(a);
    weights.push_back(b);
  }
  return tabulated_kernel(std::move(lags), std::move(weights), exponent);
}

struct Pipeline {
  json results = json::object();
  json diagnostics = json::array();
  std::map<std::string, std::string> artifacts;
  bool check_failed = false;
  bool numerical_failed = false;
};

void run_certify(const json& p, std::uint64_t seed, Pipeline& out) {
  AlgebraicProblem prob;
  prob.a.resize(static_cast<Eigen::Index>(p["A"].size()), static_cast<Eigen::Index>(p["A"].size()));
  for (std::size_t i = 0; i < p["A"].size(); ++i)
    for (std::size_t j = 0; j < p["A"].size(); ++j) prob.a(i, j) = p["A"][i][j].get<double>();
  const int dim = static_cast<int>(prob.a.rows());
  if (p["F"] == "example") {
    if (dim != 2) throw Error(ErrorKind::invalid_input, "F 'example' is two-dimensional; A must be 2x2");
    prob.f = example_problem().f;
  } else {
    prob.f = named_map(p["F"], dim);
  }
  const auto box = p["box"].get<std::vector<double>>();
  if (!(box[1] > box[0])) throw Error(ErrorKind::invalid_input, "box must satisfy box[1] > box[0]");

  const SingularValueBounds sv = singular_value_bounds(prob.a);
  out.results["singular_values"] = {{"min", sv.min}, {"max", sv.max}};

  json reports = json::array();
  auto add = [&](const CertificateReport& r) {
    reports.push_back(to_json(r));
    if (!r.passed) out.check_failed = true;
  };
  add(check_jacobian_nonsingular(prob.f, prob.a, Box{Vector::Constant(dim, box[0]), Vector::Constant(dim, box[1])},
                                 p["grid_per_axis"], SamplingPlan{p["random_samples"], seed}));
  const CoercivityTable table =
      coercivity_witness(prob.phi(), p["radii"].get<std::vector<double>>(), p["samples_per_radius"], seed);
  out.results["coercivity_table"] = to_json(table);
  add(to_report(table));

  const json& g = p["growth"];
  const std::string mode = g["mode"];
  const SamplingPlan plan{g["samples"], seed};
  if (mode == "small") {
    auto r = check_growth_small(prob.f, g["coeff"], g["radius"], plan);
    r.parameters["delta_min"] = sv.min;
    if (!(g["coeff"].get<double>() < sv.min)) {
      r.passed = false;
      r.note += "; constant a is not below delta_min(A)";
    }
    add(r);
  } else if (mode == "large") {
    auto r = check_growth_large(prob.f, g["coeff"], g["radius"], plan);
    r.parameters["delta_max"] = sv.max;
    if (!(g["coeff"].get<double>() > sv.max)) {
      r.passed = false;
      r.note += "; constant b is not above delta_max(A)";
    }
    add(r);
  } else if (mode != "none") {
    add(check_growth_power(prob.f, mode == "iia" ? PowerGrowthMode::iia : PowerGrowthMode::iib, g["coeff"],
                           g["exponent"], g["radius"], plan));
  }
  out.results["reports"] = std::move(reports);
}

void run_solve(const json& p, std::uint64_t seed, Pipeline& out) {
  const int dim = p["dim"];
  const NonlinearMap f = named_map(p["map"], dim);
  SolveConfig cfg = solver_config(p);
  if (p.contains("starts")) {
    for (const auto& s : p["starts"]) cfg.starts.push_back(to_vector(s));
  } else {
    const auto& b = p["start_box"];
    cfg.start_box = StartBox{b["count"], b["lo"], b["hi"], seed};
  }
  const NormalizationFunctional eta =
      p["eta"] == "quadratic" ? quadratic_functional() : block_power_functional(p["p"].get<double>(), 1);
  const Vector y = to_vector(p["target"]);

  const auto starts = cfg.resolve_starts(dim);
  if (starts.size() >= 2) {
    const UniquenessReport rep = multistart_uniqueness(f, y, eta, cfg);
    out.results["uniqueness"] = to_json(rep);
    if (rep.verdict == ClusterVerdict::not_clustered) {
      out.check_failed = true;
      out.diagnostics.push_back("converged roots do not cluster: evidence against injectivity");
    } else if (rep.verdict == ClusterVerdict::undetermined) {
      out.numerical_failed = true;
      out.diagnostics.push_back("some starts did not converge; uniqueness undetermined");
    }
    if (p["trajectory_csv"].get<bool>()) out.artifacts["trajectory.csv"] = trajectory_csv(rep.results.front());
  } else {
    const SolveResult r = solve(f, y, eta, cfg, starts.front());
    out.results["solve"] = to_json(r, true);
    if (!r.converged) {
      out.numerical_failed = true;
      out.diagnostics.push_back(std::string("solve did not converge: ") + to_string(r.termination));
    }
    if (p["trajectory_csv"].get<bool>()) out.artifacts["trajectory.csv"] = trajectory_csv(r);
  }
  if (p.contains("targets")) {
    std::vector<Vector> targets;
    for (const auto& t : p["targets"]) {
      if (static_cast<int>(t.size()) != dim) throw Error(ErrorKind::invalid_input, "targets must have length dim");
      targets.push_back(to_vector(t));
    }
    json table = json::array();
    for (const auto& ts : invert_on_targets(f, targets, eta, cfg)) {
      table.push_back({{"target", to_json(ts.target)}, {"result", to_json(ts.result)}});
      if (!ts.result.converged) out.numerical_failed = true;
    }
    out.results["targets"] = std::move(table);
  }
}

void run_volterra(const json& p, std::uint64_t seed, Pipeline& out) {
  const VolterraKernel kernel = named_kernel(p);
  const int n = p["n_cells"];
  const double exponent = p["p"];
  const auto y_fn = forcing_function(p["y"]);
  const Matrix y = sample_forcing(n, y_fn);
  const double k = p["k"].is_string() ? select_k(kernel.a_bar, exponent) : p["k"].get<double>();
  out.results["k"] = k;
  out.results["k_auto"] = p["k"].is_string();

  const KernelConstants kc = kernel_constants(kernel, exponent);
  json constants{{"a_bar", kernel.a_bar},
                 {"c_const", kernel.c_const},
                 {"a_p_integral", kc.a_p_integral},
                 {"a_bar_quadrature", kc.a_bar_check},
                 {"c_q_sup", kc.c_q_sup},
                 {"coercivity_factor", 1.0 - kernel.a_bar / std::pow(k, 2.0 / exponent)}};
  if (kernel.name == "log") {
    constants["a_p_integral_closed_form"] = log_kernel_a_integral(p["alpha"], exponent);
    constants["c_q_bound_closed_form"] = log_kernel_c_bound(exponent);
  }
  out.results["constants"] = std::move(constants);

  json hyp = json::array();
  const auto& hs = p["hypotheses"];
  for (const auto& r : check_hypotheses(kernel, HypothesisSampling{hs["samples"], hs["x_max"], seed})) {
    hyp.push_back(to_json(r));
    if (!r.passed) out.check_failed = true;
  }
  out.results["hypotheses"] = std::move(hyp);

  const GridFunction x = solve_forward(kernel, y, n);
  const Matrix r = residual(x, y, kernel);
  const BieleckiParams params = BieleckiParams::make(exponent, k);
  out.results["forward"] = {{"residual_weighted_norm", bielecki_lp_norm(Matrix(r.rowwise().norm()), params)},
                            {"x_end", x.values()(n, 0)},
                            {"sobolev_norm", sobolev_norm(x, exponent)}};

  std::ostringstream csv;
  csv.precision(17);
  csv << "t,x,residual\n";
  for (int i = 0; i <= n; ++i) csv << x.node(i) << ',' << x.values()(i, 0) << ',' << (i == 0 ? 0.0 : r(i - 1, 0)) << '\n';
  out.artifacts["solution.csv"] = csv.str();

  if (p["convergence"].get<bool>()) {
    // Order against a 4x finer reference at n and 2n cells.
    const GridFunction ref = solve_forward(kernel, sample_forcing(8 * n, y_fn), 8 * n);
    auto error_at = [&](int cells, const GridFunction& sol) {
      double e = 0.0;
      const int stride = 8 * n / cells;
      for (int i = 0; i <= cells; ++i) e = std::max(e, (sol.values().row(i) - ref.values().row(i * stride)).norm());
      return e;
    };
    const GridFunction x2 = solve_forward(kernel, sample_forcing(2 * n, y_fn), 2 * n);
    const double e1 = error_at(n, x);
    const double e2 = error_at(2 * n, x2);
    out.results["convergence"] = {{"error_n", e1},
                                  {"error_2n", e2},
                                  {"order", (e1 > 0.0 && e2 > 0.0) ? std::log2(e1 / e2) : 0.0},
                                  {"reference_cells", 8 * n}};
  }

  if (p["variational"].get<bool>()) {
    const VariationalResult v = solve_variational(kernel, y, exponent, k, solver_config(p));
    json solve_summary = to_json(v.solve);
    solve_summary.erase("root");
    out.results["variational"] = {{"solve", std::move(solve_summary)},
                                  {"phi", v.phi},
                                  {"sup_distance_to_forward", sup_distance(v.x.values(), x.values())}};
    if (!v.solve.converged) {
      out.numerical_failed = true;
      out.diagnostics.push_back(std::string("variational solve did not converge: ") + to_string(v.solve.termination));
    }
  }

  const auto& d = p["derivative_check"];
  if (d["enabled"].get<bool>()) {
    const Matrix dy = sample_forcing(n, forcing_function(d["dy"]));
    const DerivativeCheck dc = solution_operator_derivative(kernel, y, dy, d["eps"].get<std::vector<double>>());
    out.results["derivative_check"] = {{"eps", dc.eps},
                                       {"ratios", dc.ratios},
                                       {"consistent", dc.consistent},
                                       {"extrapolated_end", dc.extrapolated(n, 0)}};
    if (!dc.consistent) {
      out.check_failed = true;
      out.diagnostics.push_back("directional derivative estimates are inconsistent across step sizes");
    }
  }
}

void run_bielecki(const json& p, std::uint64_t seed, Pipeline& out) {
  const auto res = run_inequality_suite(p["functions"], p["n_cells"], p["p"].get<std::vector<double>>(),
                                        p["k"].get<std::vector<double>>(), seed);
  out.results = {{"evaluated", res.evaluated},
                 {"violations", res.violations},
                 {"worst_equivalence_slack", res.worst_equivalence_slack},
                 {"worst_poincare_slack", res.worst_poincare_slack},
                 {"worst_integral_slack", res.worst_integral_slack},
                 {"violation_details", res.violation_details},
                 {"passed", res.violations == 0}};
  if (res.violations > 0) out.check_failed = true;
}

void run_example(std::uint64_t seed, Pipeline& out) {
  const AlgebraicProblem prob = example_problem();
  out.results["det_A"] = prob.a.determinant();
  const ExampleCertificates cert = certify_example(seed);
  json reports = json::array();
  for (const auto& r : cert.reports()) reports.push_back(to_json(r));
  out.results["reports"] = std::move(reports);
  out.results["coercivity_table"] = to_json(cert.coercivity);
  if (!cert.all_passed()) out.check_failed = true;

  const UniquenessReport rep = solve_example(seed);
  json summary = to_json(rep);
  summary.erase("results");
  out.results["uniqueness"] = std::move(summary);
  if (rep.verdict == ClusterVerdict::not_clustered) out.check_failed = true;
  if (rep.verdict == ClusterVerdict::undetermined) out.numerical_failed = true;
  if (rep.converged_count > 0) {
    const double residual = example_problem().phi()(rep.mean_root).norm();
    out.results["root_residual"] = residual;
    if (!(residual <= 1e-10)) out.check_failed = true;
  }
}

}  // namespace

RunConfig parse_config(Command command, const json& document, const Overrides& overrides) {
  RunConfig cfg;
  cfg.command = command;
  json doc = document.is_null() ? json::object() : document;
  if (!doc.is_object()) throw ConfigError("$", "configuration must be a JSON object");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0)) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
    doc.erase("seed");
  }
  if (overrides.seed) cfg.seed = *overrides.seed;
  cfg.parameters = parse_parameters(command, doc, overrides);
  return cfg;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome;
  Pipeline pipe;
  json& report = outcome.report;
  report["command"] = to_string(config.command);
  report["seed"] = config.seed;
  report["config"] = config.parameters;
  try {
    switch (config.command) {
      case Command::certify: run_certify(config.parameters, config.seed, pipe); break;
      case Command::solve: run_solve(config.parameters, config.seed, pipe); break;
      case Command::volterra: run_volterra(config.parameters, config.seed, pipe); break;
      case Command::bielecki_check: run_bielecki(config.parameters, config.seed, pipe); break;
      case Command::example: run_example(config.seed, pipe); break;
    }
    outcome.exit_code = pipe.numerical_failed ? exit_numerical : (pipe.check_failed ? exit_check_failed : exit_ok);
  } catch (const Error& e) {
    pipe.diagnostics.push_back(std::string(to_string(e.kind())) + ": " + e.what());
    const bool bad_input = e.kind() == ErrorKind::invalid_input || e.kind() == ErrorKind::unsupported_exponent ||
                           e.kind() == ErrorKind::grid_too_coarse;
    outcome.exit_code = bad_input ? exit_invalid_input : exit_numerical;
  }
  report["results"] = std::move(pipe.results);
  report["diagnostics"] = std::move(pipe.diagnostics);
  report["exit_code"] = outcome.exit_code;
  report["status"] = outcome.exit_code == exit_ok ? "ok"
                     : outcome.exit_code == exit_check_failed ? "check_failed"
                     : outcome.exit_code == exit_numerical ? "numerical_failure"
                                                           : "invalid_input";
  outcome.artifacts = std::move(pipe.artifacts);
  return outcome;
}

void write_outputs(const RunOutcome& outcome, const std::string& dir) {
  std::filesystem::create_directories(dir);
  json report = outcome.report;
  const auto now = std::chrono::system_clock::now();
  report["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  std::ofstream(std::filesystem::path(dir) / "report.json") << report.dump(2) << '\n';
  for (const auto& [name, contents] : outcome.artifacts) std::ofstream(std::filesystem::path(dir) / name) << contents;
}

}  // namespace gloinv::cli
