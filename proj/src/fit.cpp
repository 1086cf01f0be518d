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

#include "paramosc/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace paramosc {

namespace {

struct LinearSolution {
  Eigen::Vector3d coeffs;
  double sse;
};

LinearSolution solve_linear(std::span<const double> t, std::span<const double> y, double omega, double tau) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double env = tau > 0.0 ? std::exp(-t[static_cast<std::size_t>(i)] / tau) : 1.0;
    const double phase = omega * t[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = env * std::cos(phase);
    design(i, 2) = env * std::sin(phase);
    rhs[i] = y[static_cast<std::size_t>(i)];
  }
  Eigen::Vector3d c = design.colPivHouseholderQr().solve(rhs);
  return {c, (design * c - rhs).squaredNorm()};
}

}  // namespace

SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> y, double decay_time) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_sinusoid: size mismatch");
  if (t.size() < 5) throw std::invalid_argument("fit_sinusoid: need at least 5 samples");
  const auto [tmin, tmax] = std::minmax_element(t.begin(), t.end());
  const double span = *tmax - *tmin;
  if (!(span > 0.0)) throw std::invalid_argument("fit_sinusoid: samples must span a time interval");

  // Frequencies from half a cycle over the record up to Nyquist for the
  // average spacing.
  const double lo = std::numbers::pi / span;
  const double hi = std::numbers::pi * static_cast<double>(t.size() - 1) / span;
  constexpr int kGrid = 4000;
  double best_w = lo;
  double best_sse = solve_linear(t, y, lo, decay_time).sse;
  int best_i = 0;
  for (int i = 1; i <= kGrid; ++i) {
    const double w = lo + (hi - lo) * i / kGrid;
    const double sse = solve_linear(t, y, w, decay_time).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_w = w;
      best_i = i;
    }
  }

  // Golden-section refinement on the bracketing grid cell pair.
  const double cell = (hi - lo) / kGrid;
  double a = std::max(lo, best_w - cell);
  double b = std::min(hi, best_w + cell);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = solve_linear(t, y, x1, decay_time).sse;
  double f2 = solve_linear(t, y, x2, decay_time).sse;
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::abs(best_w); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = solve_linear(t, y, x1, decay_time).sse;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = solve_linear(t, y, x2, decay_time).sse;
    }
  }
  const double w = 0.5 * (a + b);
  const LinearSolution sol = solve_linear(t, y, w, decay_time);

  SinusoidFit fit;
  fit.angular_frequency = w;
  fit.offset = sol.coeffs[0];
  fit.amplitude = std::hypot(sol.coeffs[1], sol.coeffs[2]);
  fit.phase = std::atan2(-sol.coeffs[2], sol.coeffs[1]);
  fit.rms_residual = std::sqrt(sol.sse / static_cast<double>(t.size()));
  const double y_scale = std::max(1e-12, *std::max_element(y.begin(), y.end()) -
                                              *std::min_element(y.begin(), y.end()));
  fit.converged = best_i > 0 && best_i < kGrid && fit.amplitude > 1e-6 &&
                  fit.rms_residual < 0.5 * y_scale;
  return fit;
}

}  // namespace paramosc
