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

#ifndef PARAMOSC_WIGNER_HPP
#define PARAMOSC_WIGNER_HPP

#include "paramosc/fock.hpp"

namespace paramosc {

/// Largest imaginary residue tolerated before a trace is declared real.
inline constexpr double kImaginaryResidueTolerance = 1e-8;

/// W(alpha) = (2/pi) Tr[D(-alpha) rho D(alpha) P] for a pure radial state,
/// evaluated with truncated operators. Throws ContractError when the trace has
/// an imaginary part above kImaginaryResidueTolerance.
double wigner_oracle(const StateVector& state, PhaseSpacePoint point);
double wigner_oracle(const StateVector& state, PhaseSpacePoint point,
                     const DisplacementKernel& kernel);

/// 2 (-1)^n exp(-2 r^2) L_n(4 r^2) / pi.
double fock_wigner_closed_form(int n, double r);

}  // namespace paramosc

#endif  // PARAMOSC_WIGNER_HPP
