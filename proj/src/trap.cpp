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

#include "paramosc/trap.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "paramosc/constants.hpp"

namespace paramosc {

IonSpecies IonSpecies::ytterbium171() {
  return {"171Yb+", 171.0 * constants::atomic_mass_unit, constants::elementary_charge};
}

TrapConfig::TrapConfig(double omega_x, double omega_y, double omega_z)
    : omega_x_(omega_x), omega_y_(omega_y), omega_z_(omega_z) {
  if (!(omega_x > 0.0 && omega_y > 0.0 && omega_z > 0.0)) {
    throw std::invalid_argument("trap frequencies must be positive");
  }
  if (!(omega_z < omega_x && omega_z < omega_y)) {
    throw std::invalid_argument(
        "omega_z must lie below omega_x and omega_y for an axial two-ion crystal");
  }
}

TrapConfig TrapConfig::from_hertz(double fx, double fy, double fz) {
  return {constants::angular(fx), constants::angular(fy), constants::angular(fz)};
}

TrapConfig TrapConfig::reference() { return from_hertz(0.99e6, 0.90e6, 0.75e6); }

namespace {

void check_ion(const IonSpecies& ion) {
  if (!(ion.mass > 0.0 && ion.charge > 0.0)) {
    throw std::invalid_argument("ion mass and charge must be positive");
  }
}

}  // namespace

double axial_potential(const IonSpecies& ion, const TrapConfig& trap, double z) {
  const double coulomb = ion.charge * ion.charge / (8.0 * std::numbers::pi * constants::vacuum_permittivity);
  return ion.mass * trap.omega_z() * trap.omega_z() * z * z + coulomb / z;
}

double equilibrium_half_separation(const IonSpecies& ion, const TrapConfig& trap) {
  check_ion(ion);
  const double w2 = trap.omega_z() * trap.omega_z();
  return std::cbrt(ion.charge * ion.charge /
                   (16.0 * std::numbers::pi * constants::vacuum_permittivity * ion.mass * w2));
}

OutOfPhaseModes out_of_phase_modes(const TrapConfig& trap) {
  const double wx2 = trap.omega_x() * trap.omega_x();
  const double wz2 = trap.omega_z() * trap.omega_z();
  if (!(wx2 > wz2)) throw std::domain_error("omega_r is imaginary: omega_x must exceed omega_z");
  return {std::sqrt(3.0) * trap.omega_z(), std::sqrt(wx2 - wz2)};
}

Coupling coupling_strength(const IonSpecies& ion, const TrapConfig& trap, CouplingEvaluation evaluation) {
  const OutOfPhaseModes modes = out_of_phase_modes(trap);
  const double omega_r = evaluation == CouplingEvaluation::resonance ? modes.omega_s / 2.0 : modes.omega_r;
  const double z0 = equilibrium_half_separation(ion, trap);
  const double ws3 = modes.omega_s * modes.omega_s * modes.omega_s;
  const double xi =
      std::sqrt(constants::reduced_planck * ws3 / (ion.mass * omega_r * omega_r)) / (8.0 * z0);
  return {xi, 2.0 * std::numbers::sqrt2 * xi};
}

ModeParams mode_params(const IonSpecies& ion, const TrapConfig& trap, CouplingEvaluation evaluation) {
  const OutOfPhaseModes modes = out_of_phase_modes(trap);
  return {modes.omega_s, modes.omega_r, equilibrium_half_separation(ion, trap),
          coupling_strength(ion, trap, evaluation).xi, detuning(modes.omega_s, modes.omega_r)};
}

}  // namespace paramosc
