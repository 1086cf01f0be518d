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

#include "paramosc/format.hpp"
#include "paramosc/runner.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "paramosc/constants.hpp"
#include "paramosc/hamiltonian.hpp"
#include "paramosc/protocols.hpp"
#include "paramosc/trap.hpp"

namespace paramosc {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const StepPolicyError*>(&e)) return kExitConfig;
  if (dynamic_cast<const ContractError*>(&e)) return kExitNumerical;
  return kExitFailure;
}

int auto_axial_levels(int radial_levels) { return (radial_levels - 1) / 2 + 1 + kGuardBand; }

TwoModeSpace resolve_space(const RunConfig& config, int radial_auto) {
  const int radial = config.simulation.radial_levels.value_or(radial_auto);
  const int axial = config.simulation.axial_levels.value_or(auto_axial_levels(radial));
  return {radial, axial};
}

std::string format_cell(double v) { return format_shortest(v); }

namespace {

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string provenance_header(const RunConfig& config, const TwoModeSpace* space) {
  std::ostringstream out;
  out << "# tool: paramosc " << PARAMOSC_VERSION << "\n";
  out << "# experiment: " << to_string(config.run.experiment) << "\n";
  out << "# config_hash: fnv1a64:" << config_hash(config) << "\n";
  out << "# seed: " << config.measurement.seed << "\n";
  out << "# rng: " << kRngAlgorithm << "\n";
  out << "# shots: " << (config.measurement.shots ? std::to_string(*config.measurement.shots) : "exact") << "\n";
  out << "# timestamp: " << timestamp() << "\n";
  if (space) {
    out << "# dims: radial=" << space->radial().levels() << " axial=" << space->axial().levels()
        << " guard=" << kGuardBand << "\n";
  } else {
    out << "# dims: none\n";
  }
  out << "# frame: rotating at omega_s (axial) and omega_s/2 (radial); "
         "H/hbar = delta c^dag c + xi (a^dag^2 c + a^2 c^dag); frequencies are omega/2pi in Hz\n";
  return out.str();
}

namespace {

// Single-owner CSV writer; rows are written in the order given.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header, const std::vector<std::string>& columns)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    out_ << header;
    write_row(columns);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << "\n";
  }

  std::string finish() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing '" + path_.string() + "'");
    return path_.string();
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

struct Context {
  const RunConfig& config;
  std::filesystem::path dir;
  IonSpecies ion = IonSpecies::ytterbium171();
  TrapConfig trap;
  double xi;
  ProtocolTiming timing;
  StepPolicy step;
  MeasurementModel model;

  explicit Context(const RunConfig& c)
      : config(c),
        dir(c.run.output),
        trap(TrapConfig::from_hertz(c.trap.fx, c.trap.fy, c.trap.fz)),
        xi(coupling_strength(ion, trap, c.trap.coupling).xi) {
    timing.parking_delta = constants::angular(c.simulation.parking_delta);
    timing.slow_tau = c.simulation.slow_tau;
    timing.fast_tau = c.simulation.fast_tau;
    step.max_step = c.simulation.max_step.value_or(0.0);
    model.eta = c.measurement.eta;
    model.shots = c.measurement.shots;
    model.seed = c.measurement.seed;
    model.dark_error = c.measurement.dark_error;
    model.validate();
  }

  std::filesystem::path file(const std::string& name) const { return dir / name; }
};

std::string hz(double omega) { return format_cell(constants::hertz(omega)); }

RunOutcome run_modes(const Context& ctx) {
  const ModeParams p = mode_params(ctx.ion, ctx.trap, ctx.config.trap.coupling);
  const ModeParams bare = mode_params(ctx.ion, ctx.trap, CouplingEvaluation::bare);
  const double splitting = 2.0 * std::numbers::sqrt2 * p.xi;
  RunOutcome out;
  CsvWriter csv(ctx.file("modes.csv"), provenance_header(ctx.config, nullptr),
                {"omega_x_hz", "omega_y_hz", "omega_z_hz", "omega_s_hz", "omega_r_hz", "omega_r_bare_hz", "z0_m",
                 "xi_hz", "splitting_hz", "delta_bare_hz", "coupling"});
  csv.write_row({format_cell(ctx.config.trap.fx), format_cell(ctx.config.trap.fy), format_cell(ctx.config.trap.fz),
                 hz(p.omega_s), hz(p.omega_r), hz(bare.omega_r), format_cell(p.z0), hz(p.xi), hz(splitting),
                 hz(bare.delta), ctx.config.trap.coupling == CouplingEvaluation::bare ? "bare" : "resonance"});
  out.files.push_back(csv.finish());
  std::ostringstream s;
  s << "omega_s/2pi      = " << constants::hertz(p.omega_s) << " Hz\n"
    << "omega_r/2pi      = " << constants::hertz(p.omega_r) << " Hz (bare " << constants::hertz(bare.omega_r)
    << " Hz)\n"
    << "z0               = " << p.z0 << " m\n"
    << "xi/2pi           = " << constants::hertz(p.xi) << " Hz\n"
    << "2 sqrt2 xi/2pi   = " << constants::hertz(splitting) << " Hz\n"
    << "delta_bare/2pi   = " << constants::hertz(bare.delta) << " Hz\n";
  out.summary = s.str();
  return out;
}

RunOutcome run_oscillate(const Context& ctx) {
  const RunConfig& c = ctx.config;
  OscillationSetup setup;
  setup.xi = ctx.xi;
  setup.n_initial = c.oscillation.n_initial;
  setup.hold_times = linspace(0.0, c.oscillation.hold_max, c.oscillation.hold_points);
  setup.model = ctx.model;
  setup.coherence_time = c.oscillation.coherence_time;
  setup.space = resolve_space(c, std::max(40, 10 * ((c.oscillation.n_initial + kGuardBand) / 10 + 1)));
  setup.timing = ctx.timing;
  setup.step = ctx.step;
  setup.basis = c.simulation.basis;
  const OscillationResult r = oscillation_experiment(setup);

  RunOutcome out;
  CsvWriter csv(ctx.file("oscillation.csv"), provenance_header(c, &setup.space),
                {"t_ms", "p_radial", "p_axial", "p_radial_sampled", "p_axial_sampled"});
  for (const auto& row : r.rows) {
    csv.write_row({format_cell(row.t * 1e3), format_cell(row.p_radial), format_cell(row.p_axial),
                   format_cell(row.p_radial_sampled), format_cell(row.p_axial_sampled)});
  }
  out.files.push_back(csv.finish());
  std::ostringstream s;
  s << "fitted frequency = " << r.frequency_hz << " Hz (converged " << (r.fit.converged ? "yes" : "no") << ")\n"
    << "2 sqrt2 xi/2pi   = " << constants::hertz(2.0 * std::numbers::sqrt2 * ctx.xi) << " Hz\n"
    << "max transfer     = " << r.max_transfer << "\n";
  if (r.truncation_leak) {
    s << "truncation leak detected\n";
    out.exit_code = kExitNumerical;
  }
  out.summary = s.str();
  return out;
}

RunOutcome run_crossing(const Context& ctx) {
  const RunConfig& c = ctx.config;
  std::vector<double> deltas = linspace(constants::angular(c.crossing.delta_min),
                                        constants::angular(c.crossing.delta_max), c.crossing.points);
  SpectrumCache cache(ctx.xi, TwoModeSpace(3, 2));
  const SpectrumBranch b = avoided_crossing_spectrum(deltas, ctx.xi, &cache);
  const TwoModeSpace space(3, 2);
  RunOutcome out;
  CsvWriter csv(ctx.file("spectrum.csv"), provenance_header(c, &space), {"delta_hz", "branch0_hz", "branch1_hz"});
  for (std::size_t i = 0; i < b.deltas.size(); ++i) {
    csv.write_row({hz(b.deltas[i]), hz(b.lower[i]), hz(b.upper[i])});
  }
  out.files.push_back(csv.finish());
  std::ostringstream s;
  s << "minimum gap = " << constants::hertz(b.min_gap) << " Hz at delta/2pi = " << constants::hertz(b.delta_at_min)
    << " Hz\n";
  out.summary = s.str();
  return out;
}

RampSchedule parity_ramp(const Context& ctx) {
  return ctx.config.parity.sweep == SweepKind::adiabatic ? adiabatic_sweep(ctx.timing) : diabatic_sweep(ctx.timing);
}

RunOutcome run_parity(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const TwoModeSpace space = resolve_space(c, std::max(40, 10 * ((c.parity.fock_max + kGuardBand) / 10 + 1)));
  const ParityProtocol protocol(ctx.xi, parity_ramp(ctx), space, ctx.step, c.simulation.basis);
  RunOutcome out;
  bool leak = false;
  {
    CsvWriter csv(ctx.file("parity.csv"), provenance_header(c, &space),
                  {"n", "p_phonon", "p1_exact", "p1_sampled", "parity_exact", "parity", "stderr", "p_axial_target",
                   "min_ground_fidelity", "flags"});
    std::ostringstream s;
    for (int n = 0; n <= c.parity.fock_max; ++n) {
      const AdiabaticParity ap =
          adiabatic_parity(fock_state(space.radial(), n), protocol, ctx.model, static_cast<std::uint64_t>(n));
      unsigned flags = kFlagNone;
      if (ap.truncation_leak) flags |= kFlagLeak;
      if (ap.adiabaticity_violation) flags |= kFlagNonAdiabatic;
      leak = leak || ap.truncation_leak;
      const double target = n / 2 < ap.axial_distribution.size() ? ap.axial_distribution[n / 2] : 0.0;
      csv.write_row({std::to_string(n), format_cell(ap.parity.p_phonon), format_cell(ap.parity.p1_exact),
                     format_cell(ap.parity.p1_sampled), format_cell(ap.parity.parity_exact),
                     format_cell(ap.parity.parity), format_cell(ap.parity.stderr_parity), format_cell(target),
                     format_cell(ap.min_ground_fidelity), flag_string(flags)});
      s << "n=" << n << " parity=" << ap.parity.parity_exact << " P(n_c=" << n / 2 << ")=" << target << "\n";
    }
    out.files.push_back(csv.finish());
    out.summary = s.str();
  }

  // Trajectory of the configured state through the same sweep.
  const StateVector radial = StateDescriptor::parse(c.state.descriptor).build(space.radial());
  const StateVector start = protocol.sweep().prepare(with_axial_vacuum(radial, space));
  StepPolicy policy = ctx.step;
  policy.record_stride = 10;
  std::vector<TrackedState> tracked{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {3, 0}, {1, 1}};
  const Trajectory traj =
      propagate(start, ctx.xi, DetuningSchedule(parity_ramp(ctx)), space, policy, tracked);
  std::vector<std::string> columns{"t_s", "delta_hz"};
  for (const auto& [nr, nc] : tracked) columns.push_back("p_" + std::to_string(nr) + "_" + std::to_string(nc));
  columns.push_back("norm");
  columns.push_back("K_expect");
  CsvWriter csv(ctx.file("trajectory.csv"), provenance_header(c, &space), columns);
  const RampSchedule ramp = parity_ramp(ctx);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<std::string> row{format_cell(traj.times[i]), hz(ramp.delta_at(traj.times[i]))};
    for (double p : traj.populations[i]) row.push_back(format_cell(p));
    row.push_back(format_cell(traj.norms[i]));
    row.push_back(format_cell(traj.excitation_means[i]));
    csv.write_row(row);
  }
  out.files.push_back(csv.finish());
  leak = leak || traj.truncation_leak;
  if (leak) {
    out.summary += "truncation leak detected\n";
    out.exit_code = kExitNumerical;
  }
  return out;
}

RunOutcome run_wigner(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const StateDescriptor state = StateDescriptor::parse(c.state.descriptor);
  RunOutcome out;
  std::ostringstream s;
  if (c.wigner.mode == WignerMode::grid) {
    const std::vector<cplx> grid = square_grid(c.wigner.extent, c.wigner.points);
    const TwoModeSpace space =
        resolve_space(c, c.simulation.radial_levels ? *c.simulation.radial_levels : safe_radial_levels(state, grid));
    const ParityProtocol protocol(ctx.xi, adiabatic_sweep(ctx.timing), space, ctx.step, c.simulation.basis);
    const WignerScan scan = wigner_scan(state.build(space.radial()), grid, protocol, ctx.model, c.run.threads);
    CsvWriter csv(ctx.file("wigner.csv"), provenance_header(c, &space),
                  {"re_alpha", "im_alpha", "p1_exact", "p1_sampled", "parity", "wigner", "stderr", "flags"});
    for (const WignerPoint& p : scan.points) {
      csv.write_row({format_cell(p.alpha.real()), format_cell(p.alpha.imag()), format_cell(p.parity.p1_exact),
                     format_cell(p.parity.p1_sampled), format_cell(p.parity.parity), format_cell(p.wigner),
                     format_cell(p.stderr_wigner), flag_string(p.flags)});
    }
    out.files.push_back(csv.finish());
    s << "state " << state.canonical() << ", " << scan.points.size() << " points, flags " << flag_string(scan.flags)
      << "\n";
    if (scan.flags & kFlagLeak) out.exit_code = kExitNumerical;
  } else {
    const std::vector<double> radii = linspace(0.0, c.wigner.extent, c.wigner.points);
    std::vector<cplx> ring;
    for (double r : radii) {
      for (int k = 0; k < c.wigner.phases; ++k) ring.push_back(std::polar(r, 2.0 * std::numbers::pi * k / c.wigner.phases));
    }
    const TwoModeSpace space =
        resolve_space(c, c.simulation.radial_levels ? *c.simulation.radial_levels : safe_radial_levels(state, ring));
    const ParityProtocol protocol(ctx.xi, adiabatic_sweep(ctx.timing), space, ctx.step, c.simulation.basis);
    const RadialCut cut =
        radial_cut(state.build(space.radial()), radii, c.wigner.phases, protocol, ctx.model, c.run.threads);
    CsvWriter csv(ctx.file("wigner_radial.csv"), provenance_header(c, &space),
                  {"abs_alpha", "wigner", "wigner_exact", "flags"});
    for (std::size_t i = 0; i < cut.radii.size(); ++i) {
      csv.write_row({format_cell(cut.radii[i]), format_cell(cut.wigner[i]), format_cell(cut.wigner_exact[i]),
                     flag_string(cut.flags)});
    }
    out.files.push_back(csv.finish());
    s << "state " << state.canonical() << ", " << cut.radii.size() << " radii x " << c.wigner.phases
      << " phases, flags " << flag_string(cut.flags) << "\n";
    if (cut.flags & kFlagLeak) out.exit_code = kExitNumerical;
  }
  out.summary = s.str();
  return out;
}

RunOutcome run_converge(const Context& ctx) {
  const std::vector<ConvergenceRow> rows = convergence_report(ctx.config);
  RunOutcome out;
  CsvWriter csv(ctx.file("convergence.csv"), provenance_header(ctx.config, nullptr),
                {"sweep", "setting", "observable", "value", "delta_vs_finest", "monotone"});
  std::ostringstream s;
  for (const auto& r : rows) {
    csv.write_row({r.sweep, format_cell(r.setting), r.observable, format_cell(r.value), format_cell(r.delta),
                   r.monotone ? "yes" : "no"});
    if (!r.monotone) s << "non-monotone: " << r.sweep << "=" << r.setting << " " << r.observable << "\n";
  }
  out.files.push_back(csv.finish());
  s << rows.size() << " convergence rows\n";
  out.summary = s.str();
  return out;
}

// Fills delta and monotone for rows [first, end) of one observable series,
// ordered coarse to fine.
void finish_series(std::vector<ConvergenceRow>& rows, std::size_t first) {
  const double finest = rows.back().value;
  double previous = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (std::size_t i = first; i < rows.size(); ++i) {
    rows[i].delta = rows[i].value - finest;
    const double mag = std::abs(rows[i].delta);
    // Differences at rounding level carry no ordering information.
    if (mag > previous + 1e-12 * (1.0 + std::abs(finest))) monotone = false;
    previous = mag;
    rows[i].monotone = monotone;
  }
}

}  // namespace

RunOutcome run_experiment(const RunConfig& config) {
  config.validate();
  const Context ctx(config);
  std::filesystem::create_directories(ctx.dir);
  switch (config.run.experiment) {
    case Experiment::modes:
      return run_modes(ctx);
    case Experiment::oscillate:
      return run_oscillate(ctx);
    case Experiment::crossing:
      return run_crossing(ctx);
    case Experiment::parity:
      return run_parity(ctx);
    case Experiment::wigner:
      return run_wigner(ctx);
    case Experiment::converge:
      return run_converge(ctx);
  }
  throw std::logic_error("unknown experiment");
}

std::vector<ConvergenceRow> convergence_report(const RunConfig& config) {
  config.validate();
  const Context ctx(config);
  const StateDescriptor state = StateDescriptor::parse(config.state.descriptor);
  const MeasurementModel exact{1.0, std::nullopt, config.measurement.seed, 0.0};
  std::vector<ConvergenceRow> rows;

  // Truncation sweep.
  struct TruncationPoint {
    double w0;
    double gap;
    double frequency;
  };
  std::vector<TruncationPoint> points;
  for (int radial : config.converge.radial_levels) {
    const TwoModeSpace space(radial, auto_axial_levels(radial));
    const ParityProtocol protocol(ctx.xi, adiabatic_sweep(ctx.timing), space, ctx.step, config.simulation.basis);
    const cplx origin{0.0, 0.0};
    const WignerScan scan =
        wigner_scan(state.build(space.radial()), std::span<const cplx>(&origin, 1), protocol, exact, 1);
    const BlockDecomposition blocks(space);
    const SectorSpectrum spec = sector_spectrum(ctx.xi, 0.0, space, blocks.sector(2));
    OscillationSetup osc;
    osc.xi = ctx.xi;
    osc.n_initial = 2;
    osc.hold_times = linspace(0.0, config.oscillation.hold_max, config.oscillation.hold_points);
    osc.space = space;
    osc.timing = ctx.timing;
    osc.basis = config.simulation.basis;
    const OscillationResult r = oscillation_experiment(osc);
    points.push_back({scan.points[0].wigner_exact, constants::hertz(spec.energies[1] - spec.energies[0]),
                      r.frequency_hz});
  }
  const auto add_series = [&](const std::string& sweep, const std::vector<double>& settings,
                              const std::string& observable, const std::vector<double>& values) {
    const std::size_t first = rows.size();
    for (std::size_t i = 0; i < settings.size(); ++i) rows.push_back({sweep, settings[i], observable, values[i]});
    finish_series(rows, first);
  };
  std::vector<double> radial_settings(config.converge.radial_levels.begin(), config.converge.radial_levels.end());
  std::vector<double> w0, gap, freq;
  for (const auto& p : points) {
    w0.push_back(p.w0);
    gap.push_back(p.gap);
    freq.push_back(p.frequency);
  }
  add_series("radial_levels", radial_settings, "wigner_origin", w0);
  add_series("radial_levels", radial_settings, "gap_hz", gap);
  add_series("radial_levels", radial_settings, "oscillation_hz", freq);

  // Step sweep at the configured truncation.
  const TwoModeSpace space =
      resolve_space(config, std::max(40, config.converge.radial_levels.back()));
  const StateVector input = with_axial_vacuum(state.build(space.radial()), space);
  std::vector<StateVector> finals;
  std::vector<double> parity;
  for (double step : config.converge.steps) {
    StepPolicy policy;
    policy.max_step = step;
    const ParityProtocol protocol(ctx.xi, adiabatic_sweep(ctx.timing), space, policy, config.simulation.basis);
    finals.push_back(protocol.sweep().evolve(protocol.sweep().prepare(input)));
    parity.push_back(adiabatic_parity(state.build(space.radial()), protocol, exact).parity.parity_exact);
  }
  std::vector<double> infidelity;
  for (const StateVector& f : finals) {
    infidelity.push_back(1.0 - std::norm(f.amplitudes().dot(finals.back().amplitudes())));
  }
  add_series("step", config.converge.steps, "sweep_infidelity", infidelity);
  add_series("step", config.converge.steps, "parity", parity);
  return rows;
}

}  // namespace paramosc
