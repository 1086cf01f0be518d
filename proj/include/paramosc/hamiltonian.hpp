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

#ifndef PARAMOSC_HAMILTONIAN_HPP
#define PARAMOSC_HAMILTONIAN_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "paramosc/fock.hpp"

namespace paramosc {

/// Basis states sharing one value of K = n_a + 2 n_c.
///
/// `indices` are ordered by ascending n_c; the local position of a state in
/// this list is its sector coordinate. Within a sector the Hamiltonian is a
/// real symmetric tridiagonal matrix in these coordinates.
struct Sector {
  int excitation = 0;
  std::vector<Eigen::Index> indices;

  Eigen::Index size() const { return static_cast<Eigen::Index>(indices.size()); }
};

class BlockDecomposition {
 public:
  explicit BlockDecomposition(const TwoModeSpace& space);

  const TwoModeSpace& space() const { return space_; }
  const std::vector<Sector>& sectors() const { return sectors_; }
  /// Sector with the given K; throws std::out_of_range when absent.
  const Sector& sector(int excitation) const;
  /// (sector position in sectors(), local coordinate) of a basis index.
  std::pair<std::size_t, Eigen::Index> locate(Eigen::Index index) const;

 private:
  TwoModeSpace space_;
  std::vector<Sector> sectors_;
  std::vector<std::size_t> sector_of_excitation_;
  std::vector<std::pair<std::size_t, Eigen::Index>> location_;
};

/// H / hbar = delta c^dag c + xi (a^dag^2 c + a^2 c^dag).
///
/// This is the trilinear Hamiltonian in the frame rotating at omega_r for the
/// radial mode and 2 omega_r for the axial mode. Only the detuning
/// delta = omega_s - 2 omega_r survives on the axial number operator, and the
/// coupling is unchanged because its two rotation phases cancel. Populations
/// and energy differences are frame independent.
class RotatingFrameHamiltonian {
 public:
  RotatingFrameHamiltonian(double xi, double delta, const TwoModeSpace& space);

  double xi() const { return xi_; }
  double delta() const { return delta_; }
  const TwoModeSpace& space() const { return space_; }

  /// Dense matrix over the full space, tagged hermitian.
  Operator matrix() const;

 private:
  double xi_;
  double delta_;
  TwoModeSpace space_;
};

/// Diagonal and off-diagonal of the sector block in local coordinates.
struct Tridiagonal {
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;

  Eigen::MatrixXd dense() const;
};

Tridiagonal sector_hamiltonian(double xi, double delta, const TwoModeSpace& space, const Sector& sector);

struct SectorSpectrum {
  Eigen::VectorXd energies;  // ascending, rad/s
  Eigen::MatrixXd vectors;   // columns, local coordinates
};

SectorSpectrum sector_spectrum(double xi, double delta, const TwoModeSpace& space, const Sector& sector);

/// Eigenbasis of a sector at a nonzero parking detuning, labelled by the bare
/// state each eigenvector continues to as xi -> 0.
///
/// A tridiagonal block with nonzero couplings has a simple spectrum, so the
/// energy ordering never changes along the continuation. For delta > 0 the
/// bare energies delta n_c ascend with n_c; for delta < 0 they descend. Column
/// l is the eigenvector labelled by local bare state l, phased so that its
/// component on that state is real and positive.
Eigen::MatrixXd parking_eigenbasis(double xi, double delta, const TwoModeSpace& space,
                                   const Sector& sector);

/// Sector spectra keyed by (K, delta snapped to a 1 mHz grid).
///
/// The detuning is snapped before decomposition, so a hit and a miss return
/// identical data and results do not depend on evaluation order. Safe for
/// concurrent use.
class SpectrumCache {
 public:
  static constexpr double kResolutionHz = 1e-3;

  explicit SpectrumCache(double xi, TwoModeSpace space) : xi_(xi), space_(space) {}

  SectorSpectrum get(const Sector& sector, double delta);
  static double snap(double delta);
  std::size_t size() const;
  std::size_t hits() const;

 private:
  double xi_;
  TwoModeSpace space_;
  mutable std::mutex mutex_;
  std::map<std::pair<int, std::int64_t>, SectorSpectrum> entries_;
  std::size_t hits_ = 0;
};

}  // namespace paramosc

#endif  // PARAMOSC_HAMILTONIAN_HPP
