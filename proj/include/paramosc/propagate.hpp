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

#ifndef PARAMOSC_PROPAGATE_HPP
#define PARAMOSC_PROPAGATE_HPP

#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "paramosc/hamiltonian.hpp"
#include "paramosc/schedule.hpp"

namespace paramosc {

enum class PropagationMethod { blocks, dense };
enum class TimeDirection { forward, backward };

/// Step control for piecewise-constant propagation of a schedule.
///
/// A ramp step may not exceed tau_rc / 50 nor one eightieth of the period of
/// the smallest avoided-crossing gap, 2 sqrt(2) xi (the K = 2 sector).
struct StepPolicy {
  static constexpr double kRampFraction = 50.0;
  static constexpr double kGapFraction = 80.0;

  double max_step = 0.0;  // s; 0 selects the largest admissible step
  int record_stride = 0;  // record every N ramp steps; 0 records segment ends only
};

/// Largest admissible ramp step for this coupling and schedule (infinity when
/// nothing constrains it).
double admissible_step(double xi, const DetuningSchedule& schedule);
/// Step actually used; throws StepPolicyError when policy.max_step is too large.
double resolve_step(const StepPolicy& policy, double xi, const DetuningSchedule& schedule);

/// One frozen-Hamiltonian interval of a schedule.
struct PlannedStep {
  double delta;  // detuning at the interval midpoint
  double dt;
  double t_end;
  bool segment_end;
};

std::vector<PlannedStep> plan_steps(const DetuningSchedule& schedule, double step);

using TrackedState = std::pair<int, int>;  // (n_radial, n_axial)

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<TrackedState> tracked;
  std::vector<std::vector<double>> populations;  // [sample][tracked]
  std::vector<double> norms;
  std::vector<double> excitation_means;  // <K>
  double max_guard_population = 0.0;
  bool truncation_leak = false;

  const StateVector& final_state() const { return states.back(); }
};

/// Constant detuning: exact exponential of each sector block at every
/// requested time.
Trajectory propagate(const StateVector& state, const RotatingFrameHamiltonian& hamiltonian,
                     std::span<const double> times, std::span<const TrackedState> tracked = {},
                     PropagationMethod method = PropagationMethod::blocks);

/// Time-dependent detuning: piecewise-constant Hamiltonian with the exact
/// exponential of the frozen Hamiltonian per step. TimeDirection::backward
/// applies the inverse step sequence (reversed order, conjugated phases),
/// undoing a forward run.
Trajectory propagate(const StateVector& state, double xi, const DetuningSchedule& schedule,
                     const TwoModeSpace& space, const StepPolicy& policy = {},
                     std::span<const TrackedState> tracked = {},
                     PropagationMethod method = PropagationMethod::blocks,
                     TimeDirection direction = TimeDirection::forward);

/// How states are prepared and read out at the parking detuning.
enum class ParkingBasis {
  /// Eigenbasis of each sector at the parking detuning, labelled by adiabatic
  /// continuation to the bare states: the modes are exactly decoupled at
  /// parking.
  dressed,
  /// Bare product states |n_a, n_c>.
  bare,
};

/// Result of sweeping |n>_r |0>_a through a schedule.
struct RadialOutcome {
  int n = 0;
  double p_radial_excited = 0.0;         // P(n_r >= 1) after readout
  Eigen::VectorXd axial_distribution;    // P(n_c = j) after readout
  double ground_fidelity = 1.0;          // |<g_end| U |g_start>|^2 in this sector
  double guard_population = 0.0;
};

/// A fixed (xi, schedule, truncation, step) sweep with per-sector caching.
///
/// Sectors never mix, and |n>_r|0>_a lies in sector K = n alone, so the
/// outcome of any radial input follows from one propagation per sector.
/// Outcomes are computed lazily and cached; concurrent callers get identical
/// results.
class SweepPropagator {
 public:
  SweepPropagator(double xi, DetuningSchedule schedule, const TwoModeSpace& space,
                  const StepPolicy& policy = {}, ParkingBasis basis = ParkingBasis::dressed);

  double xi() const { return xi_; }
  const DetuningSchedule& schedule() const { return schedule_; }
  const TwoModeSpace& space() const { return space_; }
  const BlockDecomposition& blocks() const { return blocks_; }
  ParkingBasis basis() const { return basis_; }
  double step() const { return step_; }

  /// Parking-basis labels -> physical state at the start of the schedule.
  StateVector prepare(const StateVector& labels) const;
  /// Physical state at the start -> physical state at the end.
  StateVector evolve(const StateVector& physical) const;
  /// Physical state at the end -> parking-basis labels.
  StateVector readout(const StateVector& physical) const;
  StateVector run(const StateVector& labels) const { return readout(evolve(prepare(labels))); }

  RadialOutcome radial_outcome(int n) const;

 private:
  Eigen::MatrixXd basis_at(const Sector& sector, double delta) const;
  void evolve_sector(const Sector& sector, Eigen::Ref<Matrix> columns) const;

  double xi_;
  DetuningSchedule schedule_;
  TwoModeSpace space_;
  BlockDecomposition blocks_;
  ParkingBasis basis_;
  double step_;
  std::vector<PlannedStep> plan_;

  mutable std::mutex mutex_;
  mutable std::vector<std::optional<RadialOutcome>> outcomes_;
};

/// Exact exp(-i H dt) on the sector blocks of `amplitudes` that carry weight.
void apply_sector_exponential(double xi, double delta, double dt, const BlockDecomposition& blocks,
                              Vector& amplitudes);

}  // namespace paramosc

#endif  // PARAMOSC_PROPAGATE_HPP
