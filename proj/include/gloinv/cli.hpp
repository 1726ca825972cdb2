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

#ifndef GLOINV_CLI_HPP
#define GLOINV_CLI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace gloinv::cli {

enum class Command { certify, solve, volterra, bielecki_check, example };

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& name);

/// Process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_numerical = 2,
  exit_invalid_input = 3,
};

/// Malformed or out-of-range configuration; `path` names the field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Command-line flags that override values of the configuration document.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> n_cells;
  std::optional<double> alpha;
  std::optional<double> p;
  /// A number or "auto".
  std::optional<std::string> k;
};

struct RunConfig {
  Command command = Command::example;
  /// Fully resolved parameters with every default filled in.
  nlohmann::json parameters;
  std::uint64_t seed = 20260101;
  std::string out_dir;
};

/// Strict parse: unknown keys and out-of-range values throw ConfigError.
/// `document` may be null (all defaults).
RunConfig parse_config(Command command, const nlohmann::json& document, const Overrides& overrides = {});

struct RunOutcome {
  int exit_code = exit_ok;
  /// Report without the timestamp; byte-stable for a given config.
  nlohmann::json report;
  /// Extra files to write next to report.json, name -> contents.
  std::map<std::string, std::string> artifacts;
};

/// Executes the pipeline. Never throws for numerical or input failures;
/// those become exit codes with diagnostics in the report.
RunOutcome run(const RunConfig& config);

/// Writes report.json (with a "timestamp" field added) and the artifacts
/// into `dir`, creating it if needed.
void write_outputs(const RunOutcome& outcome, const std::string& dir);

}  // namespace gloinv::cli

#endif  // GLOINV_CLI_HPP
