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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <gloinv/cli.hpp>

using namespace gloinv::cli;
using nlohmann::json;

namespace {

struct Process {
  int exit_code = -1;
  std::string out;
};

Process run_cli(const std::string& args) {
  const std::string cmd = std::string(GLOINV_CLI_PATH) + " " + args + " 2>/dev/null";
  Process p;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) p.out.append(buf.data(), n);
  const int status = pclose(pipe);
  p.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("gloinv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_config(const std::filesystem::path& dir, const json& doc) {
  const auto path = dir / "config.json";
  std::ofstream(path) << doc.dump();
  return path.string();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("command names") {
  CHECK(parse_command("bielecki-check") == Command::bielecki_check);
  CHECK(std::string(to_string(Command::bielecki_check)) == "bielecki-check");
  CHECK_FALSE(parse_command("nope").has_value());
}

TEST_CASE("empty solve config echoes defaults") {
  const auto cfg = parse_config(Command::solve, json::object());
  CHECK(cfg.parameters["tol_residual"] == 1e-10);
  CHECK(cfg.parameters["max_iters"] == 500);
  CHECK(cfg.parameters["map"] == "example");
  CHECK(cfg.parameters["start_box"]["count"] == 64);
  CHECK(cfg.seed == 20260101);
}

TEST_CASE("invalid configurations are rejected with the field path") {
  auto path_of = [](Command c, const json& doc) -> std::string {
    try {
      parse_config(c, doc);
    } catch (const ConfigError& e) {
      return e.path();
    }
    return "";
  };
  CHECK(path_of(Command::volterra, {{"p", 1.5}}) == "p");
  CHECK(path_of(Command::volterra, {{"n_cells", -4}}) == "n_cells");
  CHECK(path_of(Command::solve, {{"tolerance", 1e-3}}) == "tolerance");
  CHECK(path_of(Command::solve, {{"start_box", {{"count", 4}, {"size", 2}}}}) == "start_box.size");
  CHECK(path_of(Command::bielecki_check, {{"k", {1.0, -2.0}}}) == "k");
  try {
    parse_config(Command::solve, {{"p", 1.5}});
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("p >= 2") != std::string::npos);
  }
}

TEST_CASE("flags override document keys") {
  Overrides ov;
  ov.n_cells = 64;
  ov.k = "2.5";
  ov.seed = 9;
  const auto cfg = parse_config(Command::volterra, {{"n_cells", 128}, {"k", "auto"}, {"seed", 3}}, ov);
  CHECK(cfg.parameters["n_cells"] == 64);
  CHECK(cfg.parameters["k"] == 2.5);
  CHECK(cfg.seed == 9);
  Overrides alpha;
  alpha.alpha = 2.0;
  CHECK_THROWS_AS(parse_config(Command::certify, json::object(), alpha), ConfigError);
}

TEST_CASE("example command exits 0") {
  const auto p = run_cli("example -q");
  CHECK(p.exit_code == exit_ok);
}

TEST_CASE("bielecki-check command exits 0") {
  const auto p = run_cli("bielecki-check -q");
  CHECK(p.exit_code == exit_ok);
}

TEST_CASE("solve with x^2 and symmetric starts exits 1") {
  const auto dir = temp_dir("square");
  const auto cfg = write_config(dir, {{"map", "square"}, {"target", {1.0}}, {"starts", {{-2.0}, {2.0}}}});
  const auto p = run_cli("solve --config " + cfg + " --out " + (dir / "out").string());
  CHECK(p.exit_code == exit_check_failed);
  const auto report = json::parse(read_file(dir / "out" / "report.json"));
  CHECK(report["status"] == "check_failed");
  CHECK(report["results"]["uniqueness"]["verdict"] == "not_clustered");
}

TEST_CASE("invalid input exits 3") {
  const auto dir = temp_dir("invalid");
  CHECK(run_cli("volterra -q --p 1.5").exit_code == exit_invalid_input);
  CHECK(run_cli("volterra -q --n-cells -8").exit_code == exit_invalid_input);
  const auto cfg = write_config(dir, {{"bogus", 1}});
  CHECK(run_cli("solve -q --config " + cfg).exit_code == exit_invalid_input);
  CHECK(run_cli("solve -q --config " + (dir / "missing.json").string()).exit_code == exit_invalid_input);
}

TEST_CASE("reports are deterministic for a seed") {
  const auto a = run_cli("certify --seed 11");
  const auto b = run_cli("certify --seed 11");
  CHECK(a.exit_code == exit_ok);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"seed\": 11") != std::string::npos);
}

TEST_CASE("volterra writes report and solution csv") {
  const auto dir = temp_dir("volterra");
  const auto p = run_cli("volterra -q --n-cells 64 --alpha 1 --p 2 --k auto --out " + dir.string());
  CHECK(p.exit_code == exit_ok);
  const auto report = json::parse(read_file(dir / "report.json"));
  for (const char* key : {"command", "seed", "config", "results", "diagnostics", "exit_code", "status", "timestamp"})
    CHECK_MESSAGE(report.contains(key), key);
  std::istringstream csv(read_file(dir / "solution.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,x,residual");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 65);
}

TEST_CASE("library run matches the executable") {
  const auto outcome = run(parse_config(Command::bielecki_check, {{"functions", 5}, {"n_cells", 64}}));
  CHECK(outcome.exit_code == exit_ok);
  CHECK(outcome.report["results"]["violations"] == 0);
}
