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

#ifndef PARAMOSC_CONSTANTS_HPP
#define PARAMOSC_CONSTANTS_HPP

#include <numbers>

namespace paramosc::constants {

// CODATA 2018.
inline constexpr double elementary_charge = 1.602176634e-19;     // C (exact)
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double reduced_planck = 1.054571817e-34;        // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;    // kg

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Hz (cycles per second) to rad/s and back.
constexpr double angular(double hz) { return two_pi * hz; }
constexpr double hertz(double rad_per_s) { return rad_per_s / two_pi; }

}  // namespace paramosc::constants

#endif  // PARAMOSC_CONSTANTS_HPP
