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

#ifndef PARAMOSC_FIT_HPP
#define PARAMOSC_FIT_HPP

#include <span>

namespace paramosc {

struct SinusoidFit {
  double angular_frequency = 0.0;  // rad/s
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double rms_residual = 0.0;
  bool converged = false;
};

/// Least-squares fit of y = A + exp(-t/tau) (B cos wt + C sin wt).
///
/// For each trial w the model is linear in (A, B, C); w is located by a grid
/// scan up to the Nyquist frequency of the samples, then refined by golden
/// section. `decay_time` <= 0 means no envelope. A fit whose amplitude is
/// negligible, or whose optimum sits on the scan boundary, is not converged.
SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> y, double decay_time = 0.0);

}  // namespace paramosc

#endif  // PARAMOSC_FIT_HPP
