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

#ifndef PARAMOSC_SCHEDULE_HPP
#define PARAMOSC_SCHEDULE_HPP

#include <variant>
#include <vector>

namespace paramosc {

/// RC low-pass relaxation of the detuning between two parking values:
///   delta(t) = delta_end + (delta_start - delta_end) exp(-t / tau_rc).
class RampSchedule {
 public:
  /// Ramps shorter than this many time constants are rejected (<1% residual).
  static constexpr double kMinDurationInTimeConstants = 5.0;

  RampSchedule(double delta_start, double delta_end, double tau_rc, double duration);

  double delta_start() const { return delta_start_; }
  double delta_end() const { return delta_end_; }
  double tau_rc() const { return tau_rc_; }
  double duration() const { return duration_; }
  /// +1 for increasing detuning, -1 for decreasing, 0 for a flat ramp.
  int direction() const;

  double delta_at(double t) const;

 private:
  double delta_start_;
  double delta_end_;
  double tau_rc_;
  double duration_;
};

/// Throws std::invalid_argument when duration < 5 tau_rc.
RampSchedule rc_ramp(double delta_start, double delta_end, double tau_rc, double duration);
/// rc_ramp with the minimal duration of 5 tau_rc.
RampSchedule rc_ramp(double delta_start, double delta_end, double tau_rc);

struct Hold {
  double delta;
  double duration;
};

using ScheduleSegment = std::variant<RampSchedule, Hold>;

/// Consecutive ramps and holds. Segment boundaries are step boundaries in
/// propagation.
class DetuningSchedule {
 public:
  DetuningSchedule() = default;
  DetuningSchedule(RampSchedule ramp) { append(ramp); }  // NOLINT(google-explicit-constructor)

  DetuningSchedule& append(const ScheduleSegment& segment);

  const std::vector<ScheduleSegment>& segments() const { return segments_; }
  double duration() const;
  double delta_at(double t) const;
  double delta_start() const;
  double delta_end() const;
  /// Smallest RC time constant among ramp segments; 0 when there are none.
  double min_time_constant() const;

 private:
  std::vector<ScheduleSegment> segments_;
};

}  // namespace paramosc

#endif  // PARAMOSC_SCHEDULE_HPP
