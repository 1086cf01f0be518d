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
#include "paramosc/protocols.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "paramosc/parallel.hpp"

namespace paramosc {

RampSchedule adiabatic_sweep(const ProtocolTiming& timing) {
  return rc_ramp(timing.parking_delta, -timing.parking_delta, timing.slow_tau);
}

RampSchedule diabatic_sweep(const ProtocolTiming& timing) {
  return rc_ramp(timing.parking_delta, -timing.parking_delta, timing.fast_tau);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& s, const std::string& context) {
  double value = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw std::invalid_argument("bad number '" + s + "' in state descriptor '" + context + "'");
  }
  return value;
}

double parse_angle(const std::string& s, const std::string& context) {
  // Accepts [-]pi, [-]pi/N, [-]M*pi, [-]M*pi/N, or plain radians.
  std::string body = s;
  double sign = 1.0;
  if (!body.empty() && body[0] == '-') {
    sign = -1.0;
    body = body.substr(1);
  }
  const auto pi_pos = body.find("pi");
  if (pi_pos == std::string::npos) return sign * parse_number(body, context);
  double factor = 1.0;
  if (pi_pos > 0) {
    std::string pre = body.substr(0, pi_pos);
    if (pre.back() == '*') pre.pop_back();
    factor = parse_number(pre, context);
  }
  double divisor = 1.0;
  std::string post = body.substr(pi_pos + 2);
  if (!post.empty()) {
    if (post[0] != '/') throw std::invalid_argument("bad angle '" + s + "' in '" + context + "'");
    divisor = parse_number(post.substr(1), context);
  }
  return sign * factor * std::numbers::pi / divisor;
}

std::string format_double(double v) { return format_shortest(v); }

}  // namespace

StateDescriptor StateDescriptor::parse(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.empty()) throw std::invalid_argument("empty state descriptor");
  StateDescriptor d;
  const std::string& kind = parts[0];
  if (kind == "vacuum" && parts.size() == 1) {
    d.kind = Kind::fock;
    d.n = 0;
  } else if (kind == "fock" && parts.size() == 2) {
    d.kind = Kind::fock;
    const double n = parse_number(parts[1], text);
    if (n < 0 || n != std::floor(n)) throw std::invalid_argument("Fock number must be a non-negative integer");
    d.n = static_cast<int>(n);
  } else if (kind == "coherent" && (parts.size() == 2 || parts.size() == 3)) {
    d.kind = Kind::coherent;
    d.alpha = {parse_number(parts[1], text), parts.size() == 3 ? parse_number(parts[2], text) : 0.0};
  } else if (kind == "cat" && parts.size() == 4) {
    d.kind = Kind::cat;
    d.alpha = {parse_number(parts[1], text), 0.0};
    d.phi = parse_angle(parts[2], text);
    if (parts[3] == "plus" || parts[3] == "+") {
      d.sign = CatSign::plus;
    } else if (parts[3] == "minus" || parts[3] == "-") {
      d.sign = CatSign::minus;
    } else {
      throw std::invalid_argument("cat sign must be plus or minus in '" + text + "'");
    }
  } else {
    throw std::invalid_argument("unrecognized state descriptor '" + text + "'");
  }
  return d;
}

std::string StateDescriptor::canonical() const {
  switch (kind) {
    case Kind::fock:
      return "fock:" + std::to_string(n);
    case Kind::coherent:
      return "coherent:" + format_double(alpha.real()) +
             (alpha.imag() != 0.0 ? ":" + format_double(alpha.imag()) : "");
    case Kind::cat:
      return "cat:" + format_double(alpha.real()) + ":" + format_double(phi) + ":" +
             (sign == CatSign::plus ? "plus" : "minus");
  }
  return {};
}

StateVector StateDescriptor::build(const FockDim& dim) const {
  switch (kind) {
    case Kind::fock:
      return fock_state(dim, n);
    case Kind::coherent:
      return coherent_state(dim, alpha);
    case Kind::cat:
      return cat_state(dim, alpha, phi, sign);
  }
  throw std::logic_error("unknown state kind");
}

double StateDescriptor::amplitude() const { return kind == Kind::fock ? 0.0 : std::abs(alpha); }

int safe_radial_levels(const StateDescriptor& state, std::span<const cplx> grid, int minimum) {
  constexpr int kMaxLevels = 400;
  for (int levels = std::max(minimum, kGuardBand + 2); levels <= kMaxLevels; levels += 10) {
    const FockDim dim(levels);
    StateVector psi = [&]() -> StateVector {
      try {
        return state.build(dim);
      } catch (const TruncationError&) {
        return fock_state(FockDim(2 + kGuardBand), 0);  // sentinel: too small
      }
    }();
    if (psi.size() != levels) continue;
    const DisplacementKernel kernel(dim);
    bool safe = psi.guard_population(dim) < kLeakThreshold;
    for (std::size_t i = 0; safe && i < grid.size(); ++i) {
      safe = StateVector::normalized(kernel.apply(-grid[i], psi.amplitudes())).guard_population(dim) <
             kLeakThreshold;
    }
    if (safe) return levels;
  }
  throw TruncationError("no radial truncation up to " + std::to_string(kMaxLevels) +
                        " levels is safe for this state and grid");
}

// ---------------------------------------------------------------------------

double decoherence_envelope(double t, double tau_c) {
  if (!(t >= 0.0 && tau_c > 0.0)) throw std::invalid_argument("envelope needs t >= 0 and tau_c > 0");
  return std::exp(-t / tau_c);
}

namespace {

struct ModeExcitation {
  double radial;
  double axial;
  double guard;
};

ModeExcitation excitation_probabilities(const StateVector& labels, const StateVector& physical,
                                        const TwoModeSpace& space) {
  ModeExcitation e{0.0, 0.0, physical.guard_population(space)};
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const double p = std::norm(labels[i]);
    if (space.radial_of(i) >= 1) e.radial += p;
    if (space.axial_of(i) >= 1) e.axial += p;
  }
  return e;
}

}  // namespace

OscillationResult oscillation_experiment(const OscillationSetup& setup) {
  setup.model.validate();
  if (setup.n_initial < 0) throw std::invalid_argument("n_initial must be non-negative");
  if (setup.hold_times.size() < 5) throw std::invalid_argument("need at least 5 hold times to fit");
  const ProtocolTiming& timing = setup.timing;
  const StateVector initial = product_state(setup.space, setup.n_initial, 0);

  OscillationResult result;
  result.rows.resize(setup.hold_times.size());
  for (std::size_t i = 0; i < setup.hold_times.size(); ++i) {
    const double hold = setup.hold_times[i];
    if (!(hold >= 0.0)) throw std::invalid_argument("hold times must be non-negative");
    DetuningSchedule schedule(rc_ramp(timing.parking_delta, 0.0, timing.fast_tau));
    schedule.append(Hold{0.0, hold});
    schedule.append(rc_ramp(0.0, timing.parking_delta, timing.fast_tau));
    const SweepPropagator sweep(setup.xi, schedule, setup.space, setup.step, setup.basis);
    const StateVector physical = sweep.evolve(sweep.prepare(initial));
    const StateVector labels = sweep.readout(physical);
    const ModeExcitation e = excitation_probabilities(labels, physical, setup.space);
    result.truncation_leak = result.truncation_leak || e.guard >= kLeakThreshold;
    result.rows[i].t = hold;
    result.rows[i].p_radial = e.radial;
    result.rows[i].p_axial = e.axial;
  }

  std::vector<double> t(result.rows.size());
  std::vector<double> axial(result.rows.size());
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    t[i] = result.rows[i].t;
    axial[i] = result.rows[i].p_axial;
  }
  const SinusoidFit ideal = fit_sinusoid(t, axial);

  if (setup.coherence_time) {
    // Contrast decays about the time-averaged population.
    double mean_axial = ideal.offset;
    double mean_radial = 0.0;
    if (!ideal.converged) {
      mean_axial = 0.0;
      for (const auto& r : result.rows) mean_axial += r.p_axial;
      mean_axial /= static_cast<double>(result.rows.size());
    }
    std::vector<double> radial(result.rows.size());
    for (std::size_t i = 0; i < result.rows.size(); ++i) radial[i] = result.rows[i].p_radial;
    const SinusoidFit radial_fit = fit_sinusoid(t, radial);
    if (radial_fit.converged) {
      mean_radial = radial_fit.offset;
    } else {
      for (double r : radial) mean_radial += r;
      mean_radial /= static_cast<double>(radial.size());
    }
    for (auto& row : result.rows) {
      const double env = decoherence_envelope(row.t, *setup.coherence_time);
      row.p_axial = mean_axial + (row.p_axial - mean_axial) * env;
      row.p_radial = mean_radial + (row.p_radial - mean_radial) * env;
    }
    for (std::size_t i = 0; i < result.rows.size(); ++i) axial[i] = result.rows[i].p_axial;
    result.fit = fit_sinusoid(t, axial, *setup.coherence_time);
  } else {
    result.fit = ideal;
  }
  result.frequency_hz = constants::hertz(result.fit.angular_frequency);

  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    auto& row = result.rows[i];
    row.p_radial_sampled = measurement_channel(row.p_radial, setup.model, 2 * i).p1_sampled;
    row.p_axial_sampled = measurement_channel(row.p_axial, setup.model, 2 * i + 1).p1_sampled;
    result.max_transfer = std::max(result.max_transfer, row.p_axial);
  }
  return result;
}

// ---------------------------------------------------------------------------

std::vector<double> linspace(double first, double last, int count) {
  if (count < 2) throw std::invalid_argument("linspace needs at least 2 points");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = first + (last - first) * i / (count - 1);
  v.back() = last;
  return v;
}

SpectrumBranch avoided_crossing_spectrum(std::span<const double> deltas, double xi, SpectrumCache* cache) {
  if (deltas.empty()) throw std::invalid_argument("empty detuning range");
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  if (!(*lo <= 0.0 && *hi >= 0.0)) throw std::invalid_argument("detuning range must span 0");

  // Smallest space containing the complete K = 2 sector {|2,0>, |0,1>}.
  const TwoModeSpace space(3, 2);
  const BlockDecomposition blocks(space);
  const Sector& k2 = blocks.sector(2);
  SpectrumBranch out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (double delta : deltas) {
    const SectorSpectrum spec = cache ? cache->get(k2, delta) : sector_spectrum(xi, delta, space, k2);
    out.deltas.push_back(cache ? SpectrumCache::snap(delta) : delta);
    out.lower.push_back(spec.energies[0]);
    out.upper.push_back(spec.energies[1]);
    const double gap = spec.energies[1] - spec.energies[0];
    if (gap < out.min_gap) {
      out.min_gap = gap;
      out.delta_at_min = out.deltas.back();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ParityProtocol::ParityProtocol(double xi, const RampSchedule& ramp, const TwoModeSpace& space,
                               const StepPolicy& step, ParkingBasis basis)
    : sweep_(xi, DetuningSchedule(ramp), space, step, basis) {}

AdiabaticParity adiabatic_parity(const StateVector& radial_state, const ParityProtocol& protocol,
                                 const MeasurementModel& model, std::uint64_t stream) {
  const TwoModeSpace& space = protocol.space();
  if (radial_state.size() != space.radial().levels()) {
    throw std::invalid_argument("radial state does not match the protocol truncation");
  }
  AdiabaticParity out;
  out.axial_distribution = Eigen::VectorXd::Zero(space.axial().levels());
  out.guard_population = radial_state.guard_population(space.radial());
  double p_phonon = 0.0;
  for (int n = 0; n < space.radial().levels(); ++n) {
    const double weight = std::norm(radial_state[n]);
    // Weights this small cannot move any reported quantity.
    if (weight < 1e-24) continue;
    const RadialOutcome o = protocol.sweep().radial_outcome(n);
    p_phonon += weight * o.p_radial_excited;
    out.axial_distribution += weight * o.axial_distribution;
    out.guard_population += weight * o.guard_population;
    if (weight >= kRelevantSectorWeight) {
      out.min_ground_fidelity = std::min(out.min_ground_fidelity, o.ground_fidelity);
    }
  }
  out.adiabaticity_violation = out.min_ground_fidelity < kAdiabaticFidelity;
  out.truncation_leak = out.guard_population >= kLeakThreshold;
  out.parity = parity_from_phonon_probability(std::clamp(p_phonon, 0.0, 1.0), model, stream);
  return out;
}

std::string flag_string(unsigned flags) {
  if (flags == kFlagNone) return "ok";
  std::string s;
  if (flags & kFlagLeak) s += "leak";
  if (flags & kFlagNonAdiabatic) s += s.empty() ? "nonadiabatic" : ";nonadiabatic";
  return s;
}

std::vector<cplx> square_grid(double extent, int points) {
  const std::vector<double> axis = linspace(-extent, extent, points);
  std::vector<cplx> grid;
  grid.reserve(axis.size() * axis.size());
  for (double im : axis) {
    for (double re : axis) grid.emplace_back(re, im);
  }
  return grid;
}

WignerScan wigner_scan(const StateVector& radial_state, std::span<const cplx> grid, const ParityProtocol& protocol,
                       const MeasurementModel& model, int threads) {
  model.validate();
  const FockDim dim = protocol.space().radial();
  if (radial_state.size() != dim.levels()) {
    throw std::invalid_argument("radial state does not match the protocol truncation");
  }
  const DisplacementKernel kernel(dim);
  WignerScan scan;
  scan.space = protocol.space();
  scan.points.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const StateVector shifted = StateVector::normalized(kernel.apply(-grid[i], radial_state.amplitudes()));
    const AdiabaticParity ap = adiabatic_parity(shifted, protocol, model, i);
    WignerPoint& p = scan.points[i];
    p.alpha = grid[i];
    p.parity = ap.parity;
    p.wigner = 2.0 / std::numbers::pi * ap.parity.parity;
    p.wigner_exact = 2.0 / std::numbers::pi * ap.parity.parity_exact;
    p.stderr_wigner = 2.0 / std::numbers::pi * ap.parity.stderr_parity;
    if (ap.truncation_leak) p.flags |= kFlagLeak;
    if (ap.adiabaticity_violation) p.flags |= kFlagNonAdiabatic;
  });
  for (const auto& p : scan.points) scan.flags |= p.flags;
  return scan;
}

RadialCut radial_cut(const StateVector& radial_state, std::span<const double> radii, int phases,
                     const ParityProtocol& protocol, const MeasurementModel& model, int threads) {
  if (phases < 1) throw std::invalid_argument("need at least one phase");
  std::vector<cplx> points;
  points.reserve(radii.size() * static_cast<std::size_t>(phases));
  for (double r : radii) {
    for (int k = 0; k < phases; ++k) points.push_back(std::polar(r, 2.0 * std::numbers::pi * k / phases));
  }
  const WignerScan scan = wigner_scan(radial_state, points, protocol, model, threads);
  RadialCut cut;
  cut.radii.assign(radii.begin(), radii.end());
  cut.flags = scan.flags;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double w = 0.0;
    double w_exact = 0.0;
    for (int k = 0; k < phases; ++k) {
      const WignerPoint& p = scan.points[i * static_cast<std::size_t>(phases) + static_cast<std::size_t>(k)];
      w += p.wigner;
      w_exact += p.wigner_exact;
    }
    cut.wigner.push_back(w / phases);
    cut.wigner_exact.push_back(w_exact / phases);
  }
  return cut;
}

double displacement_calibration(double duration_us) {
  if (!(duration_us >= 0.0)) throw std::invalid_argument("drive duration must be non-negative");
  return std::sqrt(3.0e-4) * duration_us;
}

}  // namespace paramosc
