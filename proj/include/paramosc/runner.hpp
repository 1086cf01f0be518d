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

#ifndef PARAMOSC_RUNNER_HPP
#define PARAMOSC_RUNNER_HPP

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "paramosc/config.hpp"
#include "paramosc/fock.hpp"

namespace paramosc {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,    // I/O and anything unexpected
  kExitConfig = 2,     // invalid configuration or command line
  kExitNumerical = 3,  // truncation leak or other numerical-contract violation
};

/// Maps an exception escaping a run to its exit code.
int exit_code_for(const std::exception& e);

/// Axial truncation that holds every sector reachable from a radial space of
/// `radial_levels`, plus the guard band.
int auto_axial_levels(int radial_levels);

/// Truncation for a run: explicit config values, else `radial_auto` and the
/// matching axial size.
TwoModeSpace resolve_space(const RunConfig& config, int radial_auto);

/// Comment lines written atop every CSV, each starting with "# ".
std::string provenance_header(const RunConfig& config, const TwoModeSpace* space);

/// Shortest round-trip decimal form used in every CSV cell.
std::string format_cell(double v);

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> files;  // written, in order
  std::string summary;             // human-readable report
};

/// Executes config.run.experiment and writes its CSV files into
/// config.run.output (created if missing). Throws ConfigError, ContractError
/// and std::runtime_error; see exit_code_for.
RunOutcome run_experiment(const RunConfig& config);

struct ConvergenceRow {
  std::string sweep;       // "radial_levels" or "step"
  double setting = 0.0;
  std::string observable;
  double value = 0.0;
  double delta = 0.0;      // value - value at the finest setting
  bool monotone = true;    // |delta| non-increasing along the sweep so far
};

/// Truncation sweep (W(0) of the configured state, K = 2 gap, oscillation
/// frequency) and step sweep (infidelity of the adiabatic sweep output and its
/// parity) against the finest setting of each list.
std::vector<ConvergenceRow> convergence_report(const RunConfig& config);

}  // namespace paramosc

#endif  // PARAMOSC_RUNNER_HPP
