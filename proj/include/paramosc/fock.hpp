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

#ifndef PARAMOSC_FOCK_HPP
#define PARAMOSC_FOCK_HPP

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "paramosc/errors.hpp"

namespace paramosc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Number of top Fock levels per mode watched for truncation leakage.
inline constexpr int kGuardBand = 2;
/// Guard-band population at or above which a state counts as leaking.
inline constexpr double kLeakThreshold = 1e-6;

/// Truncated Fock space |0>..|levels-1> of a single oscillator.
class FockDim {
 public:
  explicit FockDim(int levels);

  int levels() const { return levels_; }
  /// First level of the guard band.
  int guard_start() const { return levels_ - kGuardBand; }

  friend bool operator==(const FockDim&, const FockDim&) = default;

 private:
  int levels_;
};

enum class Mode { radial, axial };

/// Radial mode a (rocking) times axial mode c (stretch).
///
/// Basis ordering is radial-major: index = n_a * axial.levels() + n_c. Every
/// index map in the library and every test depends on this convention.
class TwoModeSpace {
 public:
  TwoModeSpace(FockDim radial, FockDim axial) : radial_(radial), axial_(axial) {}
  TwoModeSpace(int radial_levels, int axial_levels)
      : radial_(radial_levels), axial_(axial_levels) {}

  const FockDim& radial() const { return radial_; }
  const FockDim& axial() const { return axial_; }
  Eigen::Index dimension() const {
    return static_cast<Eigen::Index>(radial_.levels()) * axial_.levels();
  }

  Eigen::Index index(int n_radial, int n_axial) const;
  int radial_of(Eigen::Index index) const { return static_cast<int>(index / axial_.levels()); }
  int axial_of(Eigen::Index index) const { return static_cast<int>(index % axial_.levels()); }
  /// K = n_a + 2 n_c, conserved by the trilinear coupling.
  int excitation_of(Eigen::Index index) const { return radial_of(index) + 2 * axial_of(index); }
  int max_excitation() const { return (radial_.levels() - 1) + 2 * (axial_.levels() - 1); }

  friend bool operator==(const TwoModeSpace&, const TwoModeSpace&) = default;

 private:
  FockDim radial_;
  FockDim axial_;
};

enum class OperatorTag { general, hermitian, unitary };

/// Dense square matrix with a verified structural tag.
class Operator {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kUnitaryTolerance = 1e-9;

  /// Throws ContractError when the matrix does not satisfy `tag`.
  Operator(Matrix matrix, OperatorTag tag);
  static Operator general(Matrix matrix) { return {std::move(matrix), OperatorTag::general}; }

  const Matrix& matrix() const { return matrix_; }
  OperatorTag tag() const { return tag_; }
  Eigen::Index size() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
  OperatorTag tag_;
};

/// Normalized pure state over a truncated basis.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-9;

  /// Throws ContractError unless `amplitudes` has unit norm within kNormTolerance.
  explicit StateVector(Vector amplitudes);
  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(Vector amplitudes);

  const Vector& amplitudes() const { return amplitudes_; }
  Eigen::Index size() const { return amplitudes_.size(); }
  cplx operator[](Eigen::Index i) const { return amplitudes_[i]; }

  /// Population in the top kGuardBand levels of a single-mode state.
  double guard_population(const FockDim& dim) const;
  /// Population in the guard band of either mode of a two-mode state.
  double guard_population(const TwoModeSpace& space) const;

 private:
  Vector amplitudes_;
};

struct PhaseSpacePoint {
  cplx alpha;
};

enum class ModeOperatorKind { annihilate, create, number, parity };

Operator mode_operator(const FockDim& dim, ModeOperatorKind kind);

/// op (x) I for Mode::radial, I (x) op for Mode::axial, radial-major.
Operator embed(const Operator& op, const TwoModeSpace& space, Mode which);

/// Spectral factorization of the displacement generator for one truncation.
///
/// With alpha = r e^{i theta}, alpha a^dag - alpha^* a = R (r (a^dag - a)) R^dag
/// where R = exp(i theta n) is diagonal, so a single eigendecomposition of the
/// Hermitian matrix i (a^dag - a) yields D(alpha) for every alpha. The identity
/// holds exactly for truncated matrices. Immutable after construction.
class DisplacementKernel {
 public:
  explicit DisplacementKernel(const FockDim& dim);

  const FockDim& dim() const { return dim_; }
  Matrix matrix(cplx alpha) const;
  /// D(alpha) applied to a single-mode amplitude vector, O(levels^2).
  Vector apply(cplx alpha, const Vector& amplitudes) const;

 private:
  FockDim dim_;
  Eigen::VectorXd eigenvalues_;  // of i (a^dag - a)
  Matrix eigenvectors_;
};

/// exp(alpha a^dag - alpha^* a) on the truncated space, tagged unitary.
Operator displacement_operator(PhaseSpacePoint point, const FockDim& dim);

/// D(alpha) psi without forming the matrix.
StateVector displace(const StateVector& state, PhaseSpacePoint point);
StateVector displace(const StateVector& state, PhaseSpacePoint point,
                     const DisplacementKernel& kernel);

/// Guard-band population of D(alpha)|0>; >= kLeakThreshold means the
/// truncation is too small for this displacement.
double displacement_leak(PhaseSpacePoint point, const FockDim& dim);

StateVector fock_state(const FockDim& dim, int n);
/// Truncated coherent-state series, renormalized. Throws TruncationError when
/// the guard band carries more than kLeakThreshold before renormalization.
StateVector coherent_state(const FockDim& dim, cplx alpha);

enum class CatSign { plus, minus };

/// N (|alpha> + s |alpha e^{i phi}>) with the exact overlap normalization
/// N = [2 (1 + s Re<alpha|alpha e^{i phi}>)]^{-1/2}.
StateVector cat_state(const FockDim& dim, cplx alpha, double phi, CatSign sign);

/// |n_radial>|n_axial>.
StateVector product_state(const TwoModeSpace& space, int n_radial, int n_axial);

/// radial_state (x) |0>_axial.
StateVector with_axial_vacuum(const StateVector& radial_state, const TwoModeSpace& space);

/// <a|b> for two coherent states (untruncated closed form).
cplx coherent_overlap(cplx a, cplx b);

}  // namespace paramosc

#endif  // PARAMOSC_FOCK_HPP
