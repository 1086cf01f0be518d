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

#ifndef PARAMOSC_CONFIG_HPP
#define PARAMOSC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paramosc/propagate.hpp"
#include "paramosc/trap.hpp"

namespace paramosc {

enum class ConfigErrorKind {
  syntax,           // malformed line
  unknown_section,
  unknown_key,
  duplicate_key,
  unit,             // missing, unknown or wrong-dimension unit
  value,            // well-formed but out of range or not a valid value
};

std::string_view to_string(ConfigErrorKind kind);

/// Config failure with a machine-readable kind and a 1-based position (0 when
/// the error is not tied to a line, e.g. a cross-field check).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, std::string message, int line = 0, int column = 0);

  ConfigErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ConfigErrorKind kind_;
  int line_;
  int column_;
};

enum class Experiment { modes, oscillate, crossing, parity, wigner, converge };

std::string_view to_string(Experiment e);
std::optional<Experiment> experiment_from_string(std::string_view s);

enum class SweepKind { adiabatic, diabatic };
enum class WignerMode { grid, radial };

/// Every field of a run. Frequencies are stored in Hz (f = omega / 2 pi) and
/// times in seconds, exactly as written after unit conversion.
struct RunConfig {
  struct Run {
    Experiment experiment = Experiment::modes;
    std::string output = "out";
    int threads = 0;
    bool operator==(const Run&) const = default;
  } run;

  struct Trap {
    std::string species = "yb171";
    double fx = 0.99e6;
    double fy = 0.90e6;
    double fz = 0.75e6;
    CouplingEvaluation coupling = CouplingEvaluation::resonance;
    bool operator==(const Trap&) const = default;
  } trap;

  struct Simulation {
    std::optional<int> radial_levels;  // empty = auto
    std::optional<int> axial_levels;
    std::optional<double> max_step;    // s; empty = auto
    double parking_delta = 35e3;       // Hz
    double slow_tau = 2e-3;
    double fast_tau = 20e-6;
    ParkingBasis basis = ParkingBasis::dressed;
    bool operator==(const Simulation&) const = default;
  } simulation;

  struct Measurement {
    double eta = 0.86;
    std::optional<long> shots;  // empty = exact
    std::uint64_t seed = 1;
    double dark_error = 0.0;
    bool operator==(const Measurement&) const = default;
  } measurement;

  struct State {
    std::string descriptor = "fock:2";
    bool operator==(const State&) const = default;
  } state;

  struct Oscillation {
    int n_initial = 2;
    double hold_max = 1e-3;
    int hold_points = 41;
    std::optional<double> coherence_time;
    bool operator==(const Oscillation&) const = default;
  } oscillation;

  struct Crossing {
    double delta_min = -10e3;  // Hz
    double delta_max = 10e3;
    int points = 201;
    bool operator==(const Crossing&) const = default;
  } crossing;

  struct Parity {
    int fock_max = 6;
    SweepKind sweep = SweepKind::adiabatic;
    bool operator==(const Parity&) const = default;
  } parity;

  struct Wigner {
    WignerMode mode = WignerMode::grid;
    double extent = 3.0;
    int points = 41;
    int phases = 8;
    bool operator==(const Wigner&) const = default;
  } wigner;

  struct Converge {
    std::vector<int> radial_levels{20, 30, 40};
    std::vector<double> steps{4e-6, 2e-6, 1e-6};
    bool operator==(const Converge&) const = default;
  } converge;

  /// Cross-field checks. Throws ConfigError(kind = value).
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parses the INI-style format:
///
///   # comment
///   [section]
///   key = value unit
///
/// Sections and keys are optional and default to the reference setup; unknown
/// sections and keys are rejected. Frequencies need Hz, kHz or MHz; times need
/// s, ms or us.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text: every key in a fixed order, frequencies in Hz, times in s,
/// shortest round-trip number formatting. parse_config(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

/// FNV-1a 64 of the canonical text, as 16 hex digits. run.output and
/// run.threads do not change results and are excluded.
std::string config_hash(const RunConfig& config);

}  // namespace paramosc

#endif  // PARAMOSC_CONFIG_HPP
