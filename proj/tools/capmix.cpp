// Copyright 2026 The capmix Authors
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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capmix/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = capmix::cli;
  CLI::App app{"Average and expected capability sets for risky policy choices", "capmix"};
  app.set_version_flag("--version", "capmix 1.0.0");

  cli::Options opts;
  std::string mix;
  std::vector<std::string> commands(std::begin(cli::kCommands), std::end(cli::kCommands));

  app.add_option("command", opts.command, "Operation to run")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("scenario", opts.scenario, "Scenario file")->required();
  app.add_option("--act", opts.act, "Restrict to one act");
  app.add_option("--acts", opts.acts, "Comma-separated act names")->delimiter(',');
  app.add_option("--mix", mix, "Mixing operator")
      ->check(CLI::IsMember({"expected", "average"}));
  app.add_option("--property", opts.property, "Run a single property check");
  app.add_flag("--strict", opts.strict, "Exit 1 when a property check fails");
  app.add_option("--out", opts.out, "Write the result to PATH instead of stdout");
  app.add_option("--cap", opts.cap, "Enumeration cap (overrides CAPMIX_CAP)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInputError;
  }
  if (!mix.empty()) opts.mix = cli::parse_mix(mix);
  return cli::execute(opts, std::cout, std::cerr);
}
