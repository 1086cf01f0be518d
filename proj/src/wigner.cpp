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

#include "paramosc/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace paramosc {

double wigner_oracle(const StateVector& state, PhaseSpacePoint point, const DisplacementKernel& kernel) {
  // D(-alpha) rho D(alpha) = |phi><phi| with phi = D(-alpha) psi.
  const Vector phi = kernel.apply(-point.alpha, state.amplitudes());
  Vector parity_phi = phi;
  for (Eigen::Index n = 1; n < parity_phi.size(); n += 2) parity_phi[n] = -parity_phi[n];
  const cplx trace = phi.dot(parity_phi);
  if (std::abs(trace.imag()) >= kImaginaryResidueTolerance) {
    throw ContractError("Wigner trace has imaginary residue " + std::to_string(trace.imag()));
  }
  return 2.0 / std::numbers::pi * trace.real();
}

double wigner_oracle(const StateVector& state, PhaseSpacePoint point) {
  return wigner_oracle(state, point, DisplacementKernel(FockDim(static_cast<int>(state.size()))));
}

double fock_wigner_closed_form(int n, double r) {
  if (n < 0) throw std::invalid_argument("Fock number must be non-negative");
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double x = 4.0 * r * r;
  return 2.0 * sign * std::exp(-0.5 * x) * std::laguerre(static_cast<unsigned>(n), x) / std::numbers::pi;
}

}  // namespace paramosc
