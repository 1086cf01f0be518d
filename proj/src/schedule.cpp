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

#include "paramosc/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace paramosc {

RampSchedule::RampSchedule(double delta_start, double delta_end, double tau_rc, double duration)
    : delta_start_(delta_start), delta_end_(delta_end), tau_rc_(tau_rc), duration_(duration) {
  if (!(tau_rc > 0.0)) throw std::invalid_argument("RC time constant must be positive");
  // Tiny slack so that 5 * tau computed elsewhere in floating point passes.
  if (!(duration >= kMinDurationInTimeConstants * tau_rc * (1.0 - 1e-12))) {
    throw std::invalid_argument("ramp duration " + std::to_string(duration) +
                                " s is shorter than 5 RC time constants");
  }
}

int RampSchedule::direction() const {
  if (delta_end_ > delta_start_) return 1;
  if (delta_end_ < delta_start_) return -1;
  return 0;
}

double RampSchedule::delta_at(double t) const {
  return delta_end_ + (delta_start_ - delta_end_) * std::exp(-t / tau_rc_);
}

RampSchedule rc_ramp(double delta_start, double delta_end, double tau_rc, double duration) {
  return {delta_start, delta_end, tau_rc, duration};
}

RampSchedule rc_ramp(double delta_start, double delta_end, double tau_rc) {
  return {delta_start, delta_end, tau_rc, RampSchedule::kMinDurationInTimeConstants * tau_rc};
}

DetuningSchedule& DetuningSchedule::append(const ScheduleSegment& segment) {
  if (const auto* hold = std::get_if<Hold>(&segment)) {
    if (!(hold->duration >= 0.0)) throw std::invalid_argument("hold duration must be non-negative");
  }
  segments_.push_back(segment);
  return *this;
}

namespace {

double duration_of(const ScheduleSegment& s) {
  if (const auto* r = std::get_if<RampSchedule>(&s)) return r->duration();
  return std::get<Hold>(s).duration;
}

double delta_within(const ScheduleSegment& s, double t) {
  if (const auto* r = std::get_if<RampSchedule>(&s)) return r->delta_at(t);
  return std::get<Hold>(s).delta;
}

}  // namespace

double DetuningSchedule::duration() const {
  double total = 0.0;
  for (const auto& s : segments_) total += duration_of(s);
  return total;
}

double DetuningSchedule::delta_at(double t) const {
  if (segments_.empty()) throw std::logic_error("empty detuning schedule");
  double start = 0.0;
  for (const auto& s : segments_) {
    double d = duration_of(s);
    if (t <= start + d) return delta_within(s, t - start);
    start += d;
  }
  return delta_within(segments_.back(), duration_of(segments_.back()));
}

double DetuningSchedule::delta_start() const { return delta_at(0.0); }

double DetuningSchedule::delta_end() const { return delta_at(duration()); }

double DetuningSchedule::min_time_constant() const {
  double tau = 0.0;
  for (const auto& s : segments_) {
    if (const auto* r = std::get_if<RampSchedule>(&s)) {
      if (tau == 0.0 || r->tau_rc() < tau) tau = r->tau_rc();
    }
  }
  return tau;
}

}  // namespace paramosc
