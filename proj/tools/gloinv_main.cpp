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

// gloinv command-line front end.
//
//   gloinv example
//   gloinv solve --config solve.json --out runs/solve
//   gloinv volterra --alpha 1 --p 2 --k auto --n-cells 256
//   gloinv bielecki-check --seed 7
//   gloinv certify --config certify.json

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gloinv/cli.hpp"

int main(int argc, char** argv) {
  using namespace gloinv::cli;

  CLI::App app{"Certified global inversion of nonlinear maps and Volterra problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  Overrides ov;
  std::uint64_t seed = 0;
  int n_cells = 0;
  double alpha = 0.0;
  double p = 0.0;
  std::string k;
  bool quiet = false;

  for (Command c : {Command::certify, Command::solve, Command::volterra, Command::bielecki_check, Command::example}) {
    CLI::App* sub = app.add_subcommand(to_string(c));
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_dir, "Directory for report.json and CSV artifacts");
    sub->add_option("--seed", seed, "Seed for every sampled quantity");
    sub->add_option("--n-cells", n_cells, "Grid cells");
    sub->add_option("--alpha", alpha, "Coefficient of the logarithmic kernel");
    sub->add_option("--p", p, "Integrability exponent, p >= 2");
    sub->add_option("--k", k, "Bielecki weight rate, number or 'auto'");
    sub->add_flag("-q,--quiet", quiet, "Do not print the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_invalid_input;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Command command = *parse_command(sub->get_name());
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--n-cells")) ov.n_cells = n_cells;
  if (sub->count("--alpha")) ov.alpha = alpha;
  if (sub->count("--p")) ov.p = p;
  if (sub->count("--k")) ov.k = k;

  nlohmann::json document;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open " << config_path << '\n';
      return exit_invalid_input;
    }
    try {
      document = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << "error: " << config_path << ": " << e.what() << '\n';
      return exit_invalid_input;
    }
  }

  RunConfig config;
  try {
    config = parse_config(command, document, ov);
  } catch (const ConfigError& e) {
    nlohmann::json err{{"command", to_string(command)},
                       {"status", "invalid_input"},
                       {"exit_code", static_cast<int>(exit_invalid_input)},
                       {"diagnostics", {e.what()}},
                       {"field", e.path()}};
    std::cerr << "error: " << e.what() << '\n';
    if (!quiet) std::cout << err.dump(2) << '\n';
    return exit_invalid_input;
  }

  const RunOutcome outcome = run(config);
  if (!out_dir.empty()) write_outputs(outcome, out_dir);
  if (!quiet) std::cout << outcome.report.dump(2) << '\n';
  return outcome.exit_code;
}
