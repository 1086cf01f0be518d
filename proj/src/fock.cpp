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

#include "paramosc/fock.hpp"

#include <cmath>
#include <string>

namespace paramosc {

FockDim::FockDim(int levels) : levels_(levels) {
  if (levels < 2) {
    throw std::invalid_argument("FockDim needs at least 2 levels, got " + std::to_string(levels));
  }
}

Eigen::Index TwoModeSpace::index(int n_radial, int n_axial) const {
  if (n_radial < 0 || n_radial >= radial_.levels() || n_axial < 0 || n_axial >= axial_.levels()) {
    throw std::out_of_range("basis state (" + std::to_string(n_radial) + ", " +
                            std::to_string(n_axial) + ") outside truncated space");
  }
  return static_cast<Eigen::Index>(n_radial) * axial_.levels() + n_axial;
}

Operator::Operator(Matrix matrix, OperatorTag tag) : matrix_(std::move(matrix)), tag_(tag) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ContractError("operator matrix must be square");
  }
  switch (tag_) {
    case OperatorTag::general:
      break;
    case OperatorTag::hermitian: {
      double dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
      if (dev >= kHermitianTolerance) {
        throw ContractError("operator tagged hermitian deviates by " + std::to_string(dev));
      }
      break;
    }
    case OperatorTag::unitary: {
      Matrix id = Matrix::Identity(matrix_.rows(), matrix_.cols());
      double dev = (matrix_.adjoint() * matrix_ - id).cwiseAbs().maxCoeff();
      if (dev >= kUnitaryTolerance) {
        throw ContractError("operator tagged unitary deviates by " + std::to_string(dev));
      }
      break;
    }
  }
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) < kNormTolerance)) {
    throw ContractError("state norm " + std::to_string(norm) + " is not 1");
  }
}

StateVector StateVector::normalized(Vector amplitudes) {
  double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ContractError("cannot normalize a zero or non-finite vector");
  }
  return StateVector(amplitudes / norm);
}

double StateVector::guard_population(const FockDim& dim) const {
  if (amplitudes_.size() != dim.levels()) {
    throw std::invalid_argument("state size does not match FockDim");
  }
  return amplitudes_.tail(kGuardBand).squaredNorm();
}

double StateVector::guard_population(const TwoModeSpace& space) const {
  if (amplitudes_.size() != space.dimension()) {
    throw std::invalid_argument("state size does not match TwoModeSpace");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    if (space.radial_of(i) >= space.radial().guard_start() ||
        space.axial_of(i) >= space.axial().guard_start()) {
      total += std::norm(amplitudes_[i]);
    }
  }
  return total;
}

Operator mode_operator(const FockDim& dim, ModeOperatorKind kind) {
  const int n = dim.levels();
  Matrix m = Matrix::Zero(n, n);
  switch (kind) {
    case ModeOperatorKind::annihilate:
      for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
      return Operator::general(std::move(m));
    case ModeOperatorKind::create:
      for (int k = 1; k < n; ++k) m(k, k - 1) = std::sqrt(static_cast<double>(k));
      return Operator::general(std::move(m));
    case ModeOperatorKind::number:
      for (int k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
      return {std::move(m), OperatorTag::hermitian};
    case ModeOperatorKind::parity:
      for (int k = 0; k < n; ++k) m(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
      return {std::move(m), OperatorTag::hermitian};
  }
  throw std::invalid_argument("unknown mode operator kind");
}

Operator embed(const Operator& op, const TwoModeSpace& space, Mode which) {
  const FockDim& target = which == Mode::radial ? space.radial() : space.axial();
  if (op.size() != target.levels()) {
    throw std::invalid_argument("operator dimension " + std::to_string(op.size()) +
                                " does not match mode with " + std::to_string(target.levels()) +
                                " levels");
  }
  const Eigen::Index dim = space.dimension();
  Matrix m = Matrix::Zero(dim, dim);
  const Matrix& a = op.matrix();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (which == Mode::radial) {
        if (space.axial_of(i) == space.axial_of(j)) m(i, j) = a(space.radial_of(i), space.radial_of(j));
      } else {
        if (space.radial_of(i) == space.radial_of(j)) m(i, j) = a(space.axial_of(i), space.axial_of(j));
      }
    }
  }
  // Tensoring with the identity preserves hermiticity and unitarity exactly.
  return {std::move(m), op.tag()};
}

DisplacementKernel::DisplacementKernel(const FockDim& dim) : dim_(dim) {
  const Matrix a = mode_operator(dim, ModeOperatorKind::annihilate).matrix();
  const Matrix generator = cplx(0.0, 1.0) * (a.adjoint() - a);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(generator);
  if (solver.info() != Eigen::Success) {
    throw ContractError("eigendecomposition of the displacement generator failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

namespace {

Vector rotation_phases(int levels, double theta) {
  Vector phases(levels);
  for (int k = 0; k < levels; ++k) phases[k] = std::polar(1.0, theta * k);
  return phases;
}

}  // namespace

Matrix DisplacementKernel::matrix(cplx alpha) const {
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  Vector spectral(eigenvalues_.size());
  for (Eigen::Index k = 0; k < spectral.size(); ++k) spectral[k] = std::polar(1.0, -r * eigenvalues_[k]);
  Matrix core = eigenvectors_ * spectral.asDiagonal() * eigenvectors_.adjoint();
  Vector rot = rotation_phases(dim_.levels(), theta);
  return rot.asDiagonal() * core * rot.conjugate().asDiagonal();
}

Vector DisplacementKernel::apply(cplx alpha, const Vector& amplitudes) const {
  if (amplitudes.size() != dim_.levels()) {
    throw std::invalid_argument("state size does not match displacement kernel");
  }
  const double r = std::abs(alpha);
  const Vector rot = rotation_phases(dim_.levels(), std::arg(alpha));
  Vector work = eigenvectors_.adjoint() * rot.conjugate().cwiseProduct(amplitudes);
  for (Eigen::Index k = 0; k < work.size(); ++k) work[k] *= std::polar(1.0, -r * eigenvalues_[k]);
  return rot.cwiseProduct(eigenvectors_ * work);
}

Operator displacement_operator(PhaseSpacePoint point, const FockDim& dim) {
  return {DisplacementKernel(dim).matrix(point.alpha), OperatorTag::unitary};
}

StateVector displace(const StateVector& state, PhaseSpacePoint point, const DisplacementKernel& kernel) {
  return StateVector::normalized(kernel.apply(point.alpha, state.amplitudes()));
}

StateVector displace(const StateVector& state, PhaseSpacePoint point) {
  return displace(state, point, DisplacementKernel(FockDim(static_cast<int>(state.size()))));
}

double displacement_leak(PhaseSpacePoint point, const FockDim& dim) {
  return displace(fock_state(dim, 0), point).guard_population(dim);
}

namespace {

void check_occupation(const FockDim& dim, int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + " occupation must be non-negative");
  if (n >= dim.guard_start()) {
    throw TruncationError(std::string(what) + " occupation " + std::to_string(n) +
                          " reaches the guard band of a " + std::to_string(dim.levels()) +
                          "-level mode");
  }
}

// Raw truncated series e^{-|a|^2/2} a^n / sqrt(n!), not renormalized.
Vector coherent_series(int levels, cplx alpha) {
  Vector c(levels);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < levels; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

void check_series_leak(const Vector& raw, const FockDim& dim, const char* what) {
  double guard = raw.tail(kGuardBand).squaredNorm() / raw.squaredNorm();
  if (guard >= kLeakThreshold) {
    throw TruncationError(std::string(what) + " leaks " + std::to_string(guard) +
                          " into the guard band of a " + std::to_string(dim.levels()) +
                          "-level mode");
  }
}

}  // namespace

StateVector fock_state(const FockDim& dim, int n) {
  check_occupation(dim, n, "Fock state");
  Vector v = Vector::Zero(dim.levels());
  v[n] = 1.0;
  return StateVector(std::move(v));
}

StateVector coherent_state(const FockDim& dim, cplx alpha) {
  Vector raw = coherent_series(dim.levels(), alpha);
  check_series_leak(raw, dim, "coherent state");
  return StateVector::normalized(std::move(raw));
}

cplx coherent_overlap(cplx a, cplx b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

StateVector cat_state(const FockDim& dim, cplx alpha, double phi, CatSign sign) {
  const double s = sign == CatSign::plus ? 1.0 : -1.0;
  const cplx beta = alpha * std::polar(1.0, phi);
  const double denom = 2.0 * (1.0 + s * coherent_overlap(alpha, beta).real());
  if (!(denom > 1e-12)) {
    throw std::invalid_argument("cat state components cancel; choose a different alpha or phi");
  }
  Vector raw = (coherent_series(dim.levels(), alpha) + s * coherent_series(dim.levels(), beta)) /
               std::sqrt(denom);
  check_series_leak(raw, dim, "cat state");
  // The analytic normalization is exact up to the truncated tail, which the
  // leak check bounds far below the StateVector tolerance.
  return StateVector::normalized(std::move(raw));
}

StateVector product_state(const TwoModeSpace& space, int n_radial, int n_axial) {
  check_occupation(space.radial(), n_radial, "radial");
  check_occupation(space.axial(), n_axial, "axial");
  Vector v = Vector::Zero(space.dimension());
  v[space.index(n_radial, n_axial)] = 1.0;
  return StateVector(std::move(v));
}

StateVector with_axial_vacuum(const StateVector& radial_state, const TwoModeSpace& space) {
  if (radial_state.size() != space.radial().levels()) {
    throw std::invalid_argument("radial state size does not match the space");
  }
  Vector v = Vector::Zero(space.dimension());
  for (int n = 0; n < space.radial().levels(); ++n) v[space.index(n, 0)] = radial_state[n];
  return StateVector(std::move(v));
}

}  // namespace paramosc
