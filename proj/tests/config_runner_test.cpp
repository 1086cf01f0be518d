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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "paramosc/config.hpp"
#include "paramosc/measurement.hpp"
#include "paramosc/runner.hpp"

namespace paramosc {
namespace {

namespace fs = std::filesystem;

ConfigError expect_config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return ConfigError(ConfigErrorKind::syntax, "none");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Lines that do not start with '#'.
std::string data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.starts_with("#")) out += line + "\n";
  }
  return out;
}

std::vector<std::vector<std::string>> parse_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(data_rows(csv));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("paramosc_test_" + name);
  fs::remove_all(p);
  return p;
}

TEST(Config, DefaultsAreReferenceSetup) {
  const RunConfig c = parse_config("[run]\nexperiment = modes\n[trap]\n");
  EXPECT_EQ(c.trap.fx, 0.99e6);
  EXPECT_EQ(c.trap.fy, 0.90e6);
  EXPECT_EQ(c.trap.fz, 0.75e6);
  EXPECT_EQ(c.measurement.eta, 0.86);
  EXPECT_EQ(c.simulation.parking_delta, 35e3);
  EXPECT_EQ(c.simulation.slow_tau, 2e-3);
  EXPECT_EQ(c.simulation.fast_tau, 20e-6);
  EXPECT_EQ(c, RunConfig{});
}

TEST(Config, UnitsConvertExactly) {
  const RunConfig c = parse_config(
      "[trap]\nomega_x = 0.99 MHz\nomega_y = 900 kHz\nomega_z = 750000Hz\n"
      "[simulation]\nslow_tau = 2 ms\nfast_tau = 20 us\nmax_step = 4e-6 s\n"
      "[crossing]\ndelta_min = -12.5 kHz\n");
  EXPECT_EQ(c.trap.fx, 0.99e6);
  EXPECT_EQ(c.trap.fy, 0.90e6);
  EXPECT_EQ(c.trap.fz, 0.75e6);
  EXPECT_EQ(c.simulation.slow_tau, 2e-3);
  EXPECT_EQ(c.simulation.fast_tau, 20e-6);
  EXPECT_EQ(c.simulation.max_step, 4e-6);
  EXPECT_EQ(c.crossing.delta_min, -12.5e3);
}

TEST(Config, StateDescriptor) {
  EXPECT_EQ(parse_config("[state]\ndescriptor = fock:2\n").state.descriptor, "fock:2");
  EXPECT_EQ(parse_config("[state]\ndescriptor = cat:1.73:pi:minus\n").state.descriptor,
            "cat:1.73:3.141592653589793:minus");
}

TEST(Config, ErrorKindsAndPositions) {
  ConfigError e = expect_config_error("[measurement]\nshots = -5\n");
  EXPECT_EQ(e.kind(), ConfigErrorKind::value);
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 9);

  e = expect_config_error("[trap]\n  omega_q = 1 MHz\n");
  EXPECT_EQ(e.kind(), ConfigErrorKind::unknown_key);
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 3);

  EXPECT_EQ(expect_config_error("[nonsense]\n").kind(), ConfigErrorKind::unknown_section);
  EXPECT_EQ(expect_config_error("[trap]\nomega_x = 0.99\n").kind(), ConfigErrorKind::unit);
  EXPECT_EQ(expect_config_error("[trap]\nomega_x = 0.99 ms\n").kind(), ConfigErrorKind::unit);
  EXPECT_EQ(expect_config_error("[trap]\nomega_x = 0.99 GHz\n").kind(), ConfigErrorKind::unit);
  EXPECT_EQ(expect_config_error("[measurement]\neta = 0.8 Hz\n").kind(), ConfigErrorKind::unit);
  EXPECT_EQ(expect_config_error("[trap\n").kind(), ConfigErrorKind::syntax);
  EXPECT_EQ(expect_config_error("experiment = modes\n").kind(), ConfigErrorKind::syntax);
  EXPECT_EQ(expect_config_error("[run]\nexperiment\n").kind(), ConfigErrorKind::syntax);
  EXPECT_EQ(expect_config_error("[run]\nexperiment = modes\nexperiment = wigner\n").kind(),
            ConfigErrorKind::duplicate_key);
  EXPECT_EQ(expect_config_error("[run]\nexperiment = dance\n").kind(), ConfigErrorKind::value);
  EXPECT_EQ(expect_config_error("[state]\ndescriptor = fock:x\n").kind(), ConfigErrorKind::value);
  EXPECT_EQ(expect_config_error("[trap]\nomega_z = 1 MHz\n").kind(), ConfigErrorKind::value);
  EXPECT_EQ(expect_config_error("[measurement]\neta = 1.5\n").kind(), ConfigErrorKind::value);
  EXPECT_EQ(expect_config_error("[converge]\nsteps = 1 us, 2 us\n").kind(), ConfigErrorKind::value);
  EXPECT_EQ(expect_config_error("[crossing]\ndelta_min = 1 kHz\n").kind(), ConfigErrorKind::value);
}

TEST(Config, CommentsAndWhitespace) {
  const RunConfig c = parse_config(
      "# header\n\n[run]   ; trailing\n  experiment=wigner   # inline\n[measurement]\nshots = exact\n");
  EXPECT_EQ(c.run.experiment, Experiment::wigner);
  EXPECT_FALSE(c.measurement.shots.has_value());
}

TEST(Config, SerializationIsIdempotent) {
  const std::string text =
      "[run]\nexperiment = wigner\n[trap]\nomega_x = 0.99 MHz\n[simulation]\nradial_levels = 60\n"
      "[measurement]\nshots = 500\nseed = 12\n[state]\ndescriptor = cat:1.73:pi:minus\n"
      "[oscillation]\ncoherence_time = 10.2 ms\n[converge]\nsteps = 4 us, 1 us\n";
  const RunConfig c = parse_config(text);
  const std::string canonical = serialize_config(c);
  EXPECT_EQ(parse_config(canonical), c);
  EXPECT_EQ(serialize_config(parse_config(canonical)), canonical);
  EXPECT_EQ(config_hash(c), config_hash(parse_config(canonical)));
  RunConfig other = c;
  other.measurement.seed = 13;
  EXPECT_NE(config_hash(c), config_hash(other));
  EXPECT_EQ(config_hash(c).size(), 16u);
}

TEST(Runner, AutoAxialLevels) {
  EXPECT_EQ(auto_axial_levels(40), 22);
  EXPECT_EQ(auto_axial_levels(41), 23);
  RunConfig c;
  EXPECT_EQ(resolve_space(c, 50), TwoModeSpace(50, 27));
  c.simulation.radial_levels = 30;
  c.simulation.axial_levels = 9;
  EXPECT_EQ(resolve_space(c, 50), TwoModeSpace(30, 9));
}

TEST(Runner, ExitCodeMapping) {
  EXPECT_EQ(exit_code_for(ConfigError(ConfigErrorKind::unit, "x")), kExitConfig);
  EXPECT_EQ(exit_code_for(StepPolicyError("x")), kExitConfig);
  EXPECT_EQ(exit_code_for(TruncationError("x")), kExitNumerical);
  EXPECT_EQ(exit_code_for(ContractError("x")), kExitNumerical);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), kExitFailure);
}

TEST(Runner, ModesReport) {
  RunConfig c;
  c.run.output = scratch_dir("modes").string();
  const RunOutcome o = run_experiment(c);
  EXPECT_EQ(o.exit_code, kExitOk);
  ASSERT_EQ(o.files.size(), 1u);
  const std::string csv = slurp(o.files[0]);
  EXPECT_NE(csv.find("# config_hash: fnv1a64:" + config_hash(c)), std::string::npos);
  EXPECT_NE(csv.find("# rng: " + std::string(kRngAlgorithm)), std::string::npos);
  EXPECT_NE(csv.find("# frame: "), std::string::npos);
  const auto rows = parse_rows(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][8], "splitting_hz");
  EXPECT_NEAR(std::stod(rows[1][8]), 2962.76, 0.01);
  EXPECT_NE(o.summary.find("2 sqrt2 xi/2pi"), std::string::npos);
}

TEST(Runner, CrossingMinimumAtResonance) {
  RunConfig c;
  c.run.experiment = Experiment::crossing;
  c.run.output = scratch_dir("crossing").string();
  const RunOutcome o = run_experiment(c);
  const auto rows = parse_rows(slurp(o.files[0]));
  ASSERT_EQ(rows[0], (std::vector<std::string>{"delta_hz", "branch0_hz", "branch1_hz"}));
  double best = 1e300;
  double at = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double gap = std::stod(rows[i][2]) - std::stod(rows[i][1]);
    if (gap < best) {
      best = gap;
      at = std::stod(rows[i][0]);
    }
  }
  EXPECT_NEAR(best, 2962.76, 0.01);
  EXPECT_EQ(at, 0.0);
}

TEST(Runner, TimestampHonoursSourceDateEpoch) {
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  const std::string h = provenance_header(RunConfig{}, nullptr);
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_NE(h.find("# timestamp: 1970-01-01T00:00:00Z"), std::string::npos);
}

TEST(Runner, RerunsAreByteIdentical) {
  RunConfig c = parse_config(
      "[run]\nexperiment = wigner\nthreads = 2\n[measurement]\nshots = 300\nseed = 7\n"
      "[state]\ndescriptor = cat:1.73:pi:plus\n[wigner]\nextent = 1.5\npoints = 5\n"
      "[simulation]\nradial_levels = 40\n");
  c.run.output = scratch_dir("rerun_a").string();
  const RunOutcome a = run_experiment(c);
  c.run.output = scratch_dir("rerun_b").string();
  const RunOutcome b = run_experiment(c);
  const std::string ca = slurp(a.files[0]);
  const std::string cb = slurp(b.files[0]);
  EXPECT_EQ(data_rows(ca), data_rows(cb));
  const auto rows = parse_rows(ca);
  ASSERT_EQ(rows.size(), 26u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"re_alpha", "im_alpha", "p1_exact", "p1_sampled", "parity", "wigner",
                                               "stderr", "flags"}));
}

TEST(Runner, OscillationCsv) {
  RunConfig c;
  c.run.experiment = Experiment::oscillate;
  c.oscillation.hold_points = 21;
  c.run.output = scratch_dir("osc").string();
  const RunOutcome o = run_experiment(c);
  EXPECT_EQ(o.exit_code, kExitOk);
  const auto rows = parse_rows(slurp(o.files[0]));
  ASSERT_EQ(rows.size(), 22u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t_ms", "p_radial", "p_axial", "p_radial_sampled", "p_axial_sampled"}));
  EXPECT_EQ(rows.back()[0], "1");
}

TEST(Runner, ParityAndTrajectory) {
  RunConfig c;
  c.run.experiment = Experiment::parity;
  c.parity.fock_max = 3;
  c.run.output = scratch_dir("parity").string();
  const RunOutcome o = run_experiment(c);
  EXPECT_EQ(o.exit_code, kExitOk);
  ASSERT_EQ(o.files.size(), 2u);
  const auto rows = parse_rows(slurp(o.files[0]));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NEAR(std::stod(rows[3][4]), 1.0, 0.02);  // n = 2
  const auto traj = parse_rows(slurp(o.files[1]));
  EXPECT_EQ(traj[0].back(), "K_expect");
  EXPECT_NEAR(std::stod(traj.back().back()), 2.0, 1e-9);
}

TEST(Runner, TruncationLeakExitsNumerical) {
  RunConfig c = parse_config(
      "[run]\nexperiment = wigner\n[state]\ndescriptor = coherent:1\n[wigner]\nextent = 4\npoints = 3\n"
      "[simulation]\nradial_levels = 16\naxial_levels = 10\n");
  c.run.output = scratch_dir("leak").string();
  EXPECT_EQ(run_experiment(c).exit_code, kExitNumerical);
}

TEST(Runner, ConvergenceReport) {
  RunConfig c = parse_config(
      "[state]\ndescriptor = coherent:1.73\n[converge]\nradial_levels = 20, 40\nsteps = 4 us, 2 us\n"
      "[oscillation]\nhold_points = 11\n");
  const std::vector<ConvergenceRow> rows = convergence_report(c);
  bool saw_w0 = false;
  bool saw_step = false;
  for (const auto& r : rows) {
    if (r.sweep == "radial_levels" && r.observable == "wigner_origin" && r.setting == 20) {
      EXPECT_LT(std::abs(r.delta), 1e-4);
      saw_w0 = true;
    }
    if (r.sweep == "radial_levels" && r.observable == "gap_hz") EXPECT_EQ(r.delta, 0.0);
    if (r.sweep == "step" && r.observable == "sweep_infidelity") {
      EXPECT_LT(std::abs(r.delta), 1e-8);
      saw_step = true;
    }
  }
  EXPECT_TRUE(saw_w0);
  EXPECT_TRUE(saw_step);
}

}  // namespace
}  // namespace paramosc
