// Copyright 2026 The qgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qgame: run, validate, and describe scenario files.
//
// Exit codes: 0 success, 2 validation error, 3 computation error, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qgame/cli/runner.hpp"
#include "qgame/cli/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kComputation = 3, kIo = 4 };

int exit_code_for(qgame::ErrorCode code) {
  switch (code) {
    case qgame::ErrorCode::ParseError:
    case qgame::ErrorCode::SchemaError: return kValidation;
    case qgame::ErrorCode::IoError: return kIo;
    default: return kComputation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgame: two-player quantum games, quantized classical games, and their equilibria"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "run a scenario and write its report");
  run->add_option("--scenario", scenario_path, "scenario file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--seed", seed, "override the scenario seed");

  auto* validate = app.add_subcommand("validate", "validate a scenario file");
  validate->add_option("--scenario", scenario_path, "scenario file")->required();

  std::string kind;
  auto* schema = app.add_subcommand("schema", "print the scenario schema for a kind");
  schema->add_option("--kind", kind, "scenario kind")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*schema) {
      std::cout << qgame::cli::schema(qgame::cli::parse_kind(kind)).dump(2) << "\n";
      return kOk;
    }
    qgame::cli::Scenario s = qgame::cli::load_scenario(scenario_path);
    if (*validate) {
      std::cout << qgame::cli::echo(s).dump(2) << "\n";
      return kOk;
    }
    if (seed) {
      s.seed = *seed;
      s.search.seed = *seed;
    }
    const qgame::cli::RunReport rep = qgame::cli::run(s);
    const auto fmt = format == "csv" ? qgame::cli::OutputFormat::Csv : qgame::cli::OutputFormat::Json;
    for (const auto& p : qgame::cli::emit(rep, fmt, out_dir)) std::cout << p.string() << "\n";
    std::fprintf(stderr, "%s: %zu results in %.3f s\n", qgame::cli::to_string(s.kind).c_str(), rep.results.size(),
                 rep.elapsed_seconds);
    return kOk;
  } catch (const qgame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
}
