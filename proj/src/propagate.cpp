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

#include "paramosc/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace paramosc {

double admissible_step(double xi, const DetuningSchedule& schedule) {
  double limit = std::numeric_limits<double>::infinity();
  if (double tau = schedule.min_time_constant(); tau > 0.0) {
    limit = std::min(limit, tau / StepPolicy::kRampFraction);
  }
  if (xi != 0.0) {
    const double gap = 2.0 * std::numbers::sqrt2 * std::abs(xi);
    limit = std::min(limit, 2.0 * std::numbers::pi / gap / StepPolicy::kGapFraction);
  }
  return limit;
}

double resolve_step(const StepPolicy& policy, double xi, const DetuningSchedule& schedule) {
  const double limit = admissible_step(xi, schedule);
  if (policy.max_step < 0.0) throw StepPolicyError("step must be positive");
  if (policy.max_step == 0.0) {
    if (!std::isfinite(limit)) return schedule.duration() > 0.0 ? schedule.duration() : 1.0;
    return limit;
  }
  if (policy.max_step > limit * (1.0 + 1e-12)) {
    throw StepPolicyError("step " + std::to_string(policy.max_step) + " s exceeds the admissible " +
                          std::to_string(limit) + " s");
  }
  return policy.max_step;
}

std::vector<PlannedStep> plan_steps(const DetuningSchedule& schedule, double step) {
  if (!(step > 0.0)) throw StepPolicyError("step must be positive");
  std::vector<PlannedStep> plan;
  double t0 = 0.0;
  for (const auto& segment : schedule.segments()) {
    if (const auto* ramp = std::get_if<RampSchedule>(&segment)) {
      const auto n = static_cast<long>(std::max(1.0, std::ceil(ramp->duration() / step - 1e-9)));
      const double dt = ramp->duration() / static_cast<double>(n);
      for (long i = 0; i < n; ++i) {
        plan.push_back({ramp->delta_at((static_cast<double>(i) + 0.5) * dt), dt,
                        t0 + static_cast<double>(i + 1) * dt, i + 1 == n});
      }
      t0 += ramp->duration();
    } else {
      const Hold& hold = std::get<Hold>(segment);
      if (hold.duration > 0.0) plan.push_back({hold.delta, hold.duration, t0 + hold.duration, true});
      t0 += hold.duration;
    }
  }
  return plan;
}

namespace {

// exp(-i sign H dt) for a real symmetric block applied to complex columns.
void exponentiate_block(const SectorSpectrum& spec, double dt, double sign, Eigen::Ref<Matrix> columns) {
  Matrix coeffs = spec.vectors.transpose().cast<cplx>() * columns;
  for (Eigen::Index k = 0; k < coeffs.rows(); ++k) {
    coeffs.row(k) *= std::polar(1.0, -sign * spec.energies[k] * dt);
  }
  columns = spec.vectors.cast<cplx>() * coeffs;
}

void sector_step(double xi, double delta, double dt, double sign, const BlockDecomposition& blocks,
                 Vector& amplitudes) {
  const TwoModeSpace& space = blocks.space();
  for (const Sector& sector : blocks.sectors()) {
    Vector local(sector.size());
    bool occupied = false;
    for (Eigen::Index l = 0; l < sector.size(); ++l) {
      local[l] = amplitudes[sector.indices[static_cast<std::size_t>(l)]];
      occupied = occupied || local[l] != cplx(0.0, 0.0);
    }
    if (!occupied) continue;
    exponentiate_block(sector_spectrum(xi, delta, space, sector), dt, sign, local);
    for (Eigen::Index l = 0; l < sector.size(); ++l) {
      amplitudes[sector.indices[static_cast<std::size_t>(l)]] = local[l];
    }
  }
}

void dense_step(double xi, double delta, double dt, double sign, const TwoModeSpace& space, Vector& amplitudes) {
  const Operator h = RotatingFrameHamiltonian(xi, delta, space).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw ContractError("dense eigendecomposition failed");
  Vector coeffs = solver.eigenvectors().adjoint() * amplitudes;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::polar(1.0, -sign * solver.eigenvalues()[k] * dt);
  }
  amplitudes = solver.eigenvectors() * coeffs;
}

class Recorder {
 public:
  Recorder(const TwoModeSpace& space, std::span<const TrackedState> tracked) : space_(space) {
    trajectory_.tracked.assign(tracked.begin(), tracked.end());
    for (const auto& [na, nc] : trajectory_.tracked) tracked_index_.push_back(space.index(na, nc));
  }

  void record(double t, const Vector& amplitudes) {
    StateVector state(amplitudes);  // throws when unitarity is lost
    std::vector<double> pops;
    pops.reserve(tracked_index_.size());
    for (Eigen::Index idx : tracked_index_) pops.push_back(std::norm(amplitudes[idx]));
    double k_mean = 0.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
      k_mean += space_.excitation_of(i) * std::norm(amplitudes[i]);
    }
    const double guard = state.guard_population(space_);
    trajectory_.max_guard_population = std::max(trajectory_.max_guard_population, guard);
    trajectory_.truncation_leak = trajectory_.truncation_leak || guard >= kLeakThreshold;
    trajectory_.times.push_back(t);
    trajectory_.norms.push_back(amplitudes.norm());
    trajectory_.excitation_means.push_back(k_mean);
    trajectory_.populations.push_back(std::move(pops));
    trajectory_.states.push_back(std::move(state));
  }

  Trajectory take() { return std::move(trajectory_); }

 private:
  TwoModeSpace space_;
  std::vector<Eigen::Index> tracked_index_;
  Trajectory trajectory_;
};

void check_state_space(const StateVector& state, const TwoModeSpace& space) {
  if (state.size() != space.dimension()) {
    throw std::invalid_argument("state does not live in the Hamiltonian's space");
  }
}

}  // namespace

void apply_sector_exponential(double xi, double delta, double dt, const BlockDecomposition& blocks,
                              Vector& amplitudes) {
  sector_step(xi, delta, dt, 1.0, blocks, amplitudes);
}

Trajectory propagate(const StateVector& state, const RotatingFrameHamiltonian& hamiltonian,
                     std::span<const double> times, std::span<const TrackedState> tracked,
                     PropagationMethod method) {
  const TwoModeSpace& space = hamiltonian.space();
  check_state_space(state, space);
  Recorder recorder(space, tracked);
  const BlockDecomposition blocks(space);
  for (double t : times) {
    Vector amplitudes = state.amplitudes();
    if (method == PropagationMethod::blocks) {
      sector_step(hamiltonian.xi(), hamiltonian.delta(), t, 1.0, blocks, amplitudes);
    } else {
      dense_step(hamiltonian.xi(), hamiltonian.delta(), t, 1.0, space, amplitudes);
    }
    recorder.record(t, amplitudes);
  }
  return recorder.take();
}

Trajectory propagate(const StateVector& state, double xi, const DetuningSchedule& schedule,
                     const TwoModeSpace& space, const StepPolicy& policy,
                     std::span<const TrackedState> tracked, PropagationMethod method,
                     TimeDirection direction) {
  check_state_space(state, space);
  const double step = resolve_step(policy, xi, schedule);
  std::vector<PlannedStep> plan = plan_steps(schedule, step);
  const bool backward = direction == TimeDirection::backward;
  const double sign = backward ? -1.0 : 1.0;
  if (backward) std::reverse(plan.begin(), plan.end());

  const BlockDecomposition blocks(space);
  Recorder recorder(space, tracked);
  Vector amplitudes = state.amplitudes();
  double t = backward ? schedule.duration() : 0.0;
  recorder.record(t, amplitudes);
  int since_record = 0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlannedStep& s = plan[i];
    if (method == PropagationMethod::blocks) {
      sector_step(xi, s.delta, s.dt, sign, blocks, amplitudes);
    } else {
      dense_step(xi, s.delta, s.dt, sign, space, amplitudes);
    }
    t = backward ? s.t_end - s.dt : s.t_end;
    ++since_record;
    // Segment boundaries in the backward pass sit just before the reversed
    // segment_end markers.
    const bool boundary = backward ? (i + 1 == plan.size() || plan[i + 1].segment_end) : s.segment_end;
    if (boundary || (policy.record_stride > 0 && since_record >= policy.record_stride)) {
      recorder.record(t, amplitudes);
      since_record = 0;
    }
  }
  return recorder.take();
}

SweepPropagator::SweepPropagator(double xi, DetuningSchedule schedule, const TwoModeSpace& space,
                                 const StepPolicy& policy, ParkingBasis basis)
    : xi_(xi),
      schedule_(std::move(schedule)),
      space_(space),
      blocks_(space),
      basis_(basis),
      step_(resolve_step(policy, xi, schedule_)),
      plan_(plan_steps(schedule_, step_)),
      outcomes_(static_cast<std::size_t>(space.radial().levels())) {
  if (basis_ == ParkingBasis::dressed &&
      (schedule_.delta_start() == 0.0 || schedule_.delta_end() == 0.0)) {
    throw std::invalid_argument("dressed parking basis needs nonzero detuning at both ends");
  }
}

Eigen::MatrixXd SweepPropagator::basis_at(const Sector& sector, double delta) const {
  if (basis_ == ParkingBasis::bare) return Eigen::MatrixXd::Identity(sector.size(), sector.size());
  return parking_eigenbasis(xi_, delta, space_, sector);
}

void SweepPropagator::evolve_sector(const Sector& sector, Eigen::Ref<Matrix> columns) const {
  for (const PlannedStep& s : plan_) {
    exponentiate_block(sector_spectrum(xi_, s.delta, space_, sector), s.dt, 1.0, columns);
  }
}

namespace {

template <typename Fn>
Vector per_sector(const BlockDecomposition& blocks, const Vector& in, Fn&& fn) {
  Vector out = Vector::Zero(in.size());
  for (const Sector& sector : blocks.sectors()) {
    Vector local(sector.size());
    bool occupied = false;
    for (Eigen::Index l = 0; l < sector.size(); ++l) {
      local[l] = in[sector.indices[static_cast<std::size_t>(l)]];
      occupied = occupied || local[l] != cplx(0.0, 0.0);
    }
    if (!occupied) continue;
    fn(sector, local);
    for (Eigen::Index l = 0; l < sector.size(); ++l) out[sector.indices[static_cast<std::size_t>(l)]] = local[l];
  }
  return out;
}

}  // namespace

StateVector SweepPropagator::prepare(const StateVector& labels) const {
  check_state_space(labels, space_);
  const double delta = schedule_.delta_start();
  return StateVector(per_sector(blocks_, labels.amplitudes(), [&](const Sector& sector, Vector& v) {
    v = basis_at(sector, delta).cast<cplx>() * v;
  }));
}

StateVector SweepPropagator::evolve(const StateVector& physical) const {
  check_state_space(physical, space_);
  return StateVector(per_sector(blocks_, physical.amplitudes(), [&](const Sector& sector, Vector& v) {
    evolve_sector(sector, v);
  }));
}

StateVector SweepPropagator::readout(const StateVector& physical) const {
  check_state_space(physical, space_);
  const double delta = schedule_.delta_end();
  return StateVector(per_sector(blocks_, physical.amplitudes(), [&](const Sector& sector, Vector& v) {
    v = basis_at(sector, delta).transpose().cast<cplx>() * v;
  }));
}

RadialOutcome SweepPropagator::radial_outcome(int n) const {
  if (n < 0 || n >= space_.radial().levels()) {
    throw std::out_of_range("radial Fock number " + std::to_string(n) + " outside the truncation");
  }
  {
    std::lock_guard lock(mutex_);
    if (const auto& cached = outcomes_[static_cast<std::size_t>(n)]) return *cached;
  }

  const Sector& sector = blocks_.sector(n);
  const double d0 = schedule_.delta_start();
  const double d1 = schedule_.delta_end();
  // (n, 0) is local coordinate 0 of sector K = n.
  const Eigen::MatrixXd start_basis = basis_at(sector, d0);
  const SectorSpectrum start_spec = sector_spectrum(xi_, d0, space_, sector);
  const SectorSpectrum end_spec = sector_spectrum(xi_, d1, space_, sector);

  // Column 0: the prepared input. Column 1: the instantaneous ground state,
  // tracked for the adiabaticity diagnostic unless it coincides with column 0.
  const bool ground_is_input = basis_ == ParkingBasis::dressed && d0 > 0.0;
  Matrix columns(sector.size(), ground_is_input ? 1 : 2);
  columns.col(0) = start_basis.col(0).cast<cplx>();
  if (!ground_is_input) columns.col(1) = start_spec.vectors.col(0).cast<cplx>();
  evolve_sector(sector, columns);

  RadialOutcome out;
  out.n = n;
  out.axial_distribution = Eigen::VectorXd::Zero(space_.axial().levels());
  const Vector physical = columns.col(0);
  const Vector labels = basis_at(sector, d1).transpose().cast<cplx>() * physical;
  for (Eigen::Index l = 0; l < sector.size(); ++l) {
    const Eigen::Index idx = sector.indices[static_cast<std::size_t>(l)];
    const double p = std::norm(labels[l]);
    if (space_.radial_of(idx) >= 1) out.p_radial_excited += p;
    out.axial_distribution[space_.axial_of(idx)] += p;
    if (space_.radial_of(idx) >= space_.radial().guard_start() ||
        space_.axial_of(idx) >= space_.axial().guard_start()) {
      out.guard_population += std::norm(physical[l]);
    }
  }
  const Vector ground_evolved = columns.col(ground_is_input ? 0 : 1);
  out.ground_fidelity = std::norm(end_spec.vectors.col(0).cast<cplx>().dot(ground_evolved));

  std::lock_guard lock(mutex_);
  outcomes_[static_cast<std::size_t>(n)] = out;
  return out;
}

}  // namespace paramosc
