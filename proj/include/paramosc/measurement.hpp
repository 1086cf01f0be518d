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

#ifndef PARAMOSC_MEASUREMENT_HPP
#define PARAMOSC_MEASUREMENT_HPP

#include <cstdint>
#include <optional>
#include <string_view>

namespace paramosc {

/// Name of the sampling scheme, written into provenance headers.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/splitmix64-stream/bernoulli-sum";

/// Phonon-to-spin mapping with finite shots.
///
/// A red-sideband pi pulse flips the ion to the bright state with probability
/// eta when the radial mode holds at least one phonon. `shots` empty means
/// infinite shots (exact probabilities).
struct MeasurementModel {
  double eta = 0.86;
  std::optional<long> shots;
  std::uint64_t seed = 1;
  double dark_error = 0.0;  // bright counts with no phonon; off by default

  void validate() const;
  bool exact() const { return !shots.has_value(); }
};

struct ChannelOutcome {
  double p1_exact;
  double p1_sampled;  // equals p1_exact in exact mode
  double stderr_p1;   // binomial, from p1_exact; 0 in exact mode
};

/// Independent per-item seed: splitmix64 over (master seed, stream index).
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream);

/// Number of successes in `trials` Bernoulli(p) draws from a seeded
/// mt19937_64, each using a 53-bit uniform. Platform independent.
long sample_binomial(long trials, double p, std::uint64_t seed);

ChannelOutcome measurement_channel(double p_phonon, const MeasurementModel& model, std::uint64_t stream = 0);

/// <P> = 1 - 2 p1 / eta, unclamped.
double parity_estimate(double p1, double eta);

struct ParityResult {
  double p_phonon = 0.0;
  double p1_exact = 0.0;
  double p1_sampled = 0.0;
  double parity_exact = 0.0;
  double parity = 0.0;  // from p1_sampled
  std::optional<long> shots;
  double stderr_parity = 0.0;
};

ParityResult parity_from_phonon_probability(double p_phonon, const MeasurementModel& model,
                                            std::uint64_t stream = 0);

}  // namespace paramosc

#endif  // PARAMOSC_MEASUREMENT_HPP
