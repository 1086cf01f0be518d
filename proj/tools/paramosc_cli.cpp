// Copyright 2026 The paramosc Authors
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

#include <iostream>
#include <optional>
#include <regex>
#include <string>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif
#include "paramosc/config.hpp"
#include "paramosc/protocols.hpp"
#include "paramosc/runner.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<long> shots;
  bool exact = false;
  std::optional<std::string> dims;
  std::optional<std::string> state;
  std::optional<int> threads;
  bool print_config = false;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Run configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--seed", o.seed, "Master seed (overrides the config)");
  cmd->add_option("--shots", o.shots, "Shots per point")->check(CLI::PositiveNumber);
  cmd->add_flag("--exact", o.exact, "Infinite-shot mode");
  cmd->add_option("--dims", o.dims, "Truncation as RADIALxAXIAL, e.g. 40x20");
  cmd->add_option("--state", o.state, "Radial state descriptor, e.g. fock:2, cat:1.73:pi:minus");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--print-config", o.print_config, "Print the canonical config and exit");
}

paramosc::RunConfig build_config(const Overrides& o, std::optional<paramosc::Experiment> experiment) {
  using paramosc::ConfigError;
  using paramosc::ConfigErrorKind;
  paramosc::RunConfig c = o.config_path.empty() ? paramosc::RunConfig{} : paramosc::load_config(o.config_path);
  if (experiment) c.run.experiment = *experiment;
  if (o.out) c.run.output = *o.out;
  if (o.seed) c.measurement.seed = *o.seed;
  if (o.exact && o.shots) throw ConfigError(ConfigErrorKind::value, "--exact and --shots are exclusive");
  if (o.exact) c.measurement.shots.reset();
  if (o.shots) c.measurement.shots = *o.shots;
  if (o.threads) c.run.threads = *o.threads;
  if (o.state) {
    try {
      c.state.descriptor = paramosc::StateDescriptor::parse(*o.state).canonical();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(ConfigErrorKind::value, std::string("--state: ") + e.what());
    }
  }
  if (o.dims) {
    static const std::regex pattern(R"((\d+)x(\d+))");
    std::smatch m;
    if (!std::regex_match(*o.dims, m, pattern)) {
      throw ConfigError(ConfigErrorKind::value, "--dims must look like 40x20");
    }
    const int radial = std::stoi(m[1]);
    const int axial = std::stoi(m[2]);
    if (radial < paramosc::kGuardBand + 2 || axial < paramosc::kGuardBand + 2) {
      throw ConfigError(ConfigErrorKind::value, "--dims: each mode needs at least 4 levels");
    }
    c.simulation.radial_levels = radial;
    c.simulation.axial_levels = axial;
  }
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric phonon coupling of two trapped ions: simulations and CSV reports"};
  app.set_version_flag("--version", PARAMOSC_VERSION);
  app.require_subcommand(1);

  Overrides overrides;
  struct Command {
    CLI::App* app;
    std::optional<paramosc::Experiment> experiment;
  };
  std::vector<Command> commands;
  commands.push_back({app.add_subcommand("run", "Run the experiment named in the config file"), std::nullopt});
  const std::pair<const char*, const char*> experiments[] = {
      {"modes", "Mode frequencies and coupling strength"},
      {"oscillate", "Conversion oscillation versus hold time"},
      {"crossing", "K = 2 eigenvalue branches versus detuning"},
      {"parity", "Parity readout of Fock states through the sweep"},
      {"wigner", "Wigner function by displaced parity"},
      {"converge", "Truncation and step convergence table"},
  };
  for (const auto& [name, help] : experiments) {
    commands.push_back({app.add_subcommand(name, help), paramosc::experiment_from_string(name)});
  }
  for (auto& cmd : commands) add_common_flags(cmd.app, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? paramosc::kExitOk : paramosc::kExitConfig;
  }

  try {
    std::optional<paramosc::Experiment> experiment;
    for (const auto& cmd : commands) {
      if (cmd.app->parsed()) experiment = cmd.experiment;
    }
    const paramosc::RunConfig config = build_config(overrides, experiment);
    if (overrides.print_config) {
      std::cout << paramosc::serialize_config(config);
      return paramosc::kExitOk;
    }
    const paramosc::RunOutcome outcome = paramosc::run_experiment(config);
    std::cout << outcome.summary;
    for (const auto& f : outcome.files) std::cout << "wrote " << f << "\n";
    if (outcome.exit_code != paramosc::kExitOk) {
      std::cerr << "error: numerical contract violated; see the flags column\n";
    }
    return outcome.exit_code;
  } catch (const paramosc::ConfigError& e) {
    std::cerr << "config error [" << paramosc::to_string(e.kind()) << "]: " << e.what() << "\n";
    return paramosc::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return paramosc::exit_code_for(e);
  }
}
