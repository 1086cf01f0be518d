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

#include "paramosc/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace paramosc {

void MeasurementModel::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (shots && *shots <= 0) throw std::invalid_argument("shots must be positive");
  if (!(dark_error >= 0.0 && dark_error < 1.0)) throw std::invalid_argument("dark_error must lie in [0, 1)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream) {
  std::uint64_t state = master_seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (stream * 0xD1B54A32D192ED03ULL);
  return splitmix64(state);
}

long sample_binomial(long trials, double p, std::uint64_t seed) {
  if (trials < 0) throw std::invalid_argument("trials must be non-negative");
  if (p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::mt19937_64 engine(seed);
  long hits = 0;
  for (long i = 0; i < trials; ++i) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    if (u < p) ++hits;
  }
  return hits;
}

ChannelOutcome measurement_channel(double p_phonon, const MeasurementModel& model, std::uint64_t stream) {
  model.validate();
  if (!(p_phonon >= -1e-12 && p_phonon <= 1.0 + 1e-12)) {
    throw std::invalid_argument("phonon probability outside [0, 1]");
  }
  const double p = std::clamp(p_phonon, 0.0, 1.0);
  const double p1 = model.eta * p + model.dark_error * (1.0 - p);
  if (model.exact()) return {p1, p1, 0.0};
  const long n = *model.shots;
  const long hits = sample_binomial(n, p1, stream_seed(model.seed, stream));
  return {p1, static_cast<double>(hits) / static_cast<double>(n),
          std::sqrt(p1 * (1.0 - p1) / static_cast<double>(n))};
}

double parity_estimate(double p1, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  return 1.0 - 2.0 * p1 / eta;
}

ParityResult parity_from_phonon_probability(double p_phonon, const MeasurementModel& model, std::uint64_t stream) {
  const ChannelOutcome c = measurement_channel(p_phonon, model, stream);
  ParityResult r;
  r.p_phonon = p_phonon;
  r.p1_exact = c.p1_exact;
  r.p1_sampled = c.p1_sampled;
  r.parity_exact = parity_estimate(c.p1_exact, model.eta);
  r.parity = parity_estimate(c.p1_sampled, model.eta);
  r.shots = model.shots;
  r.stderr_parity = 2.0 * c.stderr_p1 / model.eta;
  return r;
}

}  // namespace paramosc
