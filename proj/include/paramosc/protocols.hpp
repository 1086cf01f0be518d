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

#ifndef PARAMOSC_PROTOCOLS_HPP
#define PARAMOSC_PROTOCOLS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paramosc/constants.hpp"
#include "paramosc/fit.hpp"
#include "paramosc/fock.hpp"
#include "paramosc/measurement.hpp"
#include "paramosc/propagate.hpp"

namespace paramosc {

/// Parking detuning and RC ramp constants of the experimental sequences.
struct ProtocolTiming {
  double parking_delta = constants::angular(35e3);  // rad/s
  double slow_tau = 2e-3;                            // s, adiabatic sweep
  double fast_tau = 20e-6;                           // s, diabatic switching
};

/// Slow sweep from +parking to -parking lasting 5 slow time constants.
RampSchedule adiabatic_sweep(const ProtocolTiming& timing);
/// Fast switch +parking -> -parking, used as the diabatic check.
RampSchedule diabatic_sweep(const ProtocolTiming& timing);

// ---------------------------------------------------------------------------
// Radial states by name.

/// "vacuum", "fock:N", "coherent:RE[:IM]", "cat:ALPHA:PHI:plus|minus".
/// PHI accepts radians or "pi", "pi/2", "-pi/2", ... .
struct StateDescriptor {
  enum class Kind { fock, coherent, cat };

  Kind kind = Kind::fock;
  int n = 0;
  cplx alpha{0.0, 0.0};
  double phi = 0.0;
  CatSign sign = CatSign::plus;

  static StateDescriptor parse(const std::string& text);
  std::string canonical() const;
  StateVector build(const FockDim& dim) const;
  /// Largest coherent amplitude present (0 for Fock states).
  double amplitude() const;
};

/// Smallest radial truncation (multiple of 10, at least `minimum`) whose guard
/// band stays below kLeakThreshold for the state displaced by every grid
/// boundary point.
int safe_radial_levels(const StateDescriptor& state, std::span<const cplx> grid, int minimum = 40);

// ---------------------------------------------------------------------------
// Conversion oscillation.

struct OscillationSetup {
  double xi = 0.0;
  int n_initial = 2;
  std::vector<double> hold_times;  // s
  MeasurementModel model{1.0, std::nullopt, 1, 0.0};
  std::optional<double> coherence_time;  // s; phenomenological envelope
  TwoModeSpace space{40, 20};
  ProtocolTiming timing;
  StepPolicy step;
  ParkingBasis basis = ParkingBasis::dressed;
};

struct OscillationRow {
  double t = 0.0;
  double p_radial = 0.0;  // P(n_r >= 1)
  double p_axial = 0.0;   // P(n_c >= 1)
  double p_radial_sampled = 0.0;  // bright fraction through the channel
  double p_axial_sampled = 0.0;
};

struct OscillationResult {
  std::vector<OscillationRow> rows;
  SinusoidFit fit;            // on p_axial
  double frequency_hz = 0.0;  // fit.angular_frequency / 2 pi
  double max_transfer = 0.0;  // max p_axial over hold times
  bool truncation_leak = false;
};

/// Fast ramp to resonance, hold, fast ramp back to parking, read out both
/// modes.
OscillationResult oscillation_experiment(const OscillationSetup& setup);

/// exp(-t / tau_c).
double decoherence_envelope(double t, double tau_c);

// ---------------------------------------------------------------------------
// Avoided crossing.

struct SpectrumBranch {
  std::vector<double> deltas;  // rad/s
  std::vector<double> lower;   // rad/s, K = 2 eigenvalues
  std::vector<double> upper;
  double min_gap = 0.0;
  double delta_at_min = 0.0;
};

/// K = 2 sector eigenvalues over a detuning range that must contain 0. With a
/// cache, detunings are snapped to its 1 mHz grid.
SpectrumBranch avoided_crossing_spectrum(std::span<const double> deltas, double xi,
                                         SpectrumCache* cache = nullptr);

std::vector<double> linspace(double first, double last, int count);

// ---------------------------------------------------------------------------
// Adiabatic parity and Wigner tomography.

/// Minimum sector weight considered when flagging adiabaticity violations.
inline constexpr double kRelevantSectorWeight = 1e-4;
/// Instantaneous-eigenstate fidelity below which a sector is non-adiabatic.
inline constexpr double kAdiabaticFidelity = 0.99;

/// A fixed sweep that maps radial parity onto radial occupancy.
class ParityProtocol {
 public:
  ParityProtocol(double xi, const RampSchedule& ramp, const TwoModeSpace& space,
                 const StepPolicy& step = {}, ParkingBasis basis = ParkingBasis::dressed);

  const SweepPropagator& sweep() const { return sweep_; }
  const TwoModeSpace& space() const { return sweep_.space(); }

 private:
  SweepPropagator sweep_;
};

struct AdiabaticParity {
  ParityResult parity;
  Eigen::VectorXd axial_distribution;
  double min_ground_fidelity = 1.0;  // over sectors with weight >= kRelevantSectorWeight
  bool adiabaticity_violation = false;
  double guard_population = 0.0;
  bool truncation_leak = false;
};

/// Embed as radial (x) |0>_axial, sweep, read out P(n_r >= 1), pass through
/// the mapping channel.
AdiabaticParity adiabatic_parity(const StateVector& radial_state, const ParityProtocol& protocol,
                                 const MeasurementModel& model, std::uint64_t stream = 0);

enum WignerFlag : unsigned {
  kFlagNone = 0,
  kFlagLeak = 1u << 0,
  kFlagNonAdiabatic = 1u << 1,
};

std::string flag_string(unsigned flags);

struct WignerPoint {
  cplx alpha;
  ParityResult parity;
  double wigner = 0.0;        // (2/pi) parity, from sampled counts
  double wigner_exact = 0.0;  // (2/pi) parity, infinite shots
  double stderr_wigner = 0.0;
  unsigned flags = kFlagNone;
};

struct WignerScan {
  std::string state;
  TwoModeSpace space{40, 20};
  std::vector<WignerPoint> points;
  unsigned flags = kFlagNone;  // union over points
};

/// n x n grid over [-extent, extent]^2, row-major in Im(alpha) then Re(alpha).
std::vector<cplx> square_grid(double extent, int points);

/// Per point: displace the radial state by -alpha, run adiabatic_parity, map
/// to W. Points use independent RNG streams keyed by index, so the result does
/// not depend on `threads` (0 = hardware concurrency).
WignerScan wigner_scan(const StateVector& radial_state, std::span<const cplx> grid,
                       const ParityProtocol& protocol, const MeasurementModel& model,
                       int threads = 0);

struct RadialCut {
  std::vector<double> radii;
  std::vector<double> wigner;        // phase-averaged, sampled
  std::vector<double> wigner_exact;  // phase-averaged, infinite shots
  unsigned flags = kFlagNone;
};

/// W averaged over `phases` equally spaced phases of alpha at each radius.
RadialCut radial_cut(const StateVector& radial_state, std::span<const double> radii, int phases,
                     const ParityProtocol& protocol, const MeasurementModel& model, int threads = 0);

/// |alpha| = sqrt(3.0e-4) t for a drive of t microseconds.
double displacement_calibration(double duration_us);

}  // namespace paramosc

#endif  // PARAMOSC_PROTOCOLS_HPP
