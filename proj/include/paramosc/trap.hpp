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

#ifndef PARAMOSC_TRAP_HPP
#define PARAMOSC_TRAP_HPP

#include <string>

namespace paramosc {

struct IonSpecies {
  std::string name;
  double mass;    // kg
  double charge;  // C

  static IonSpecies ytterbium171();
};

/// Single-ion secular frequencies in rad/s.
///
/// Construction enforces axial crystallization: omega_z below both radial
/// frequencies, which also makes omega_x^2 - omega_z^2 positive.
class TrapConfig {
 public:
  TrapConfig(double omega_x, double omega_y, double omega_z);
  /// Frequencies given as f = omega / 2 pi in Hz.
  static TrapConfig from_hertz(double fx, double fy, double fz);
  /// (0.99, 0.90, 0.75) MHz.
  static TrapConfig reference();

  double omega_x() const { return omega_x_; }
  double omega_y() const { return omega_y_; }
  double omega_z() const { return omega_z_; }

 private:
  double omega_x_;
  double omega_y_;
  double omega_z_;
};

enum class CouplingEvaluation {
  resonance,  // omega_r := omega_s / 2
  bare,       // omega_r = sqrt(omega_x^2 - omega_z^2)
};

struct OutOfPhaseModes {
  double omega_s;  // axial stretch
  double omega_r;  // radial rocking
};

struct Coupling {
  double xi;        // rad/s
  double splitting; // 2 sqrt(2) xi, two-phonon exchange frequency in rad/s
};

struct ModeParams {
  double omega_s;
  double omega_r;
  double z0;
  double xi;
  double delta;
};

/// z0 = (e^2 / (16 pi eps0 m omega_z^2))^(1/3): minimizer of the axial
/// relative-coordinate potential m omega_z^2 z^2 + e^2 / (8 pi eps0 z).
double equilibrium_half_separation(const IonSpecies& ion, const TrapConfig& trap);

/// The axial relative-coordinate potential itself, in joules.
double axial_potential(const IonSpecies& ion, const TrapConfig& trap, double z);

OutOfPhaseModes out_of_phase_modes(const TrapConfig& trap);

/// xi = (1 / 8 z0) sqrt(hbar omega_s^3 / (m omega_r^2)).
Coupling coupling_strength(const IonSpecies& ion, const TrapConfig& trap,
                           CouplingEvaluation evaluation = CouplingEvaluation::resonance);

inline double detuning(double omega_s, double omega_r) { return omega_s - 2.0 * omega_r; }

/// Everything above in one record; delta uses the bare omega_r.
ModeParams mode_params(const IonSpecies& ion, const TrapConfig& trap,
                       CouplingEvaluation evaluation = CouplingEvaluation::resonance);

}  // namespace paramosc

#endif  // PARAMOSC_TRAP_HPP
