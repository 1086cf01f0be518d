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

#include "paramosc/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "paramosc/constants.hpp"

namespace paramosc {

BlockDecomposition::BlockDecomposition(const TwoModeSpace& space)
    : space_(space),
      sector_of_excitation_(static_cast<std::size_t>(space.max_excitation()) + 1, SIZE_MAX),
      location_(static_cast<std::size_t>(space.dimension())) {
  for (int k = 0; k <= space.max_excitation(); ++k) {
    Sector sector{k, {}};
    for (int nc = 0; nc < space.axial().levels() && 2 * nc <= k; ++nc) {
      int na = k - 2 * nc;
      if (na < space.radial().levels()) sector.indices.push_back(space.index(na, nc));
    }
    if (sector.indices.empty()) continue;
    sector_of_excitation_[static_cast<std::size_t>(k)] = sectors_.size();
    for (Eigen::Index l = 0; l < sector.size(); ++l) {
      location_[static_cast<std::size_t>(sector.indices[static_cast<std::size_t>(l)])] = {sectors_.size(), l};
    }
    sectors_.push_back(std::move(sector));
  }
}

const Sector& BlockDecomposition::sector(int excitation) const {
  if (excitation < 0 || excitation > space_.max_excitation() ||
      sector_of_excitation_[static_cast<std::size_t>(excitation)] == SIZE_MAX) {
    throw std::out_of_range("no sector with K = " + std::to_string(excitation));
  }
  return sectors_[sector_of_excitation_[static_cast<std::size_t>(excitation)]];
}

std::pair<std::size_t, Eigen::Index> BlockDecomposition::locate(Eigen::Index index) const {
  return location_.at(static_cast<std::size_t>(index));
}

RotatingFrameHamiltonian::RotatingFrameHamiltonian(double xi, double delta, const TwoModeSpace& space)
    : xi_(xi), delta_(delta), space_(space) {
  if (!std::isfinite(xi) || !std::isfinite(delta)) {
    throw std::invalid_argument("Hamiltonian parameters must be finite");
  }
}

Operator RotatingFrameHamiltonian::matrix() const {
  const Eigen::Index dim = space_.dimension();
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int na = space_.radial_of(i);
    const int nc = space_.axial_of(i);
    h(i, i) = delta_ * nc;
    // a^2 c^dag |na, nc> = sqrt(na (na-1)) sqrt(nc+1) |na-2, nc+1>
    if (na >= 2 && nc + 1 < space_.axial().levels()) {
      const Eigen::Index j = space_.index(na - 2, nc + 1);
      const double element = xi_ * std::sqrt(static_cast<double>(na) * (na - 1)) * std::sqrt(nc + 1.0);
      h(j, i) = element;
      h(i, j) = element;
    }
  }
  return {std::move(h), OperatorTag::hermitian};
}

Eigen::MatrixXd Tridiagonal::dense() const {
  const Eigen::Index n = diagonal.size();
  Eigen::MatrixXd m = diagonal.asDiagonal();
  for (Eigen::Index l = 0; l + 1 < n; ++l) {
    m(l, l + 1) = off_diagonal[l];
    m(l + 1, l) = off_diagonal[l];
  }
  return m;
}

Tridiagonal sector_hamiltonian(double xi, double delta, const TwoModeSpace& space, const Sector& sector) {
  const Eigen::Index n = sector.size();
  Tridiagonal t{Eigen::VectorXd(n), Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0)};
  for (Eigen::Index l = 0; l < n; ++l) {
    const Eigen::Index idx = sector.indices[static_cast<std::size_t>(l)];
    const int na = space.radial_of(idx);
    const int nc = space.axial_of(idx);
    t.diagonal[l] = delta * nc;
    if (l + 1 < n) {
      t.off_diagonal[l] = xi * std::sqrt(static_cast<double>(na) * (na - 1)) * std::sqrt(nc + 1.0);
    }
  }
  return t;
}

SectorSpectrum sector_spectrum(double xi, double delta, const TwoModeSpace& space, const Sector& sector) {
  const Tridiagonal t = sector_hamiltonian(xi, delta, space, sector);
  if (t.diagonal.size() == 1) {
    return {t.diagonal, Eigen::MatrixXd::Identity(1, 1)};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(t.diagonal, t.off_diagonal, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ContractError("sector eigendecomposition failed for K = " + std::to_string(sector.excitation));
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXd parking_eigenbasis(double xi, double delta, const TwoModeSpace& space, const Sector& sector) {
  if (delta == 0.0) {
    throw std::invalid_argument("parking eigenbasis needs a nonzero detuning");
  }
  const SectorSpectrum spec = sector_spectrum(xi, delta, space, sector);
  const Eigen::Index n = sector.size();
  Eigen::MatrixXd basis(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index label = delta > 0.0 ? i : n - 1 - i;
    Eigen::VectorXd v = spec.vectors.col(i);
    Eigen::Index anchor = label;
    if (std::abs(v[anchor]) < 1e-12) v.cwiseAbs().maxCoeff(&anchor);
    if (v[anchor] < 0.0) v = -v;
    basis.col(label) = v;
  }
  return basis;
}

double SpectrumCache::snap(double delta) {
  const double step = constants::angular(kResolutionHz);
  return std::round(delta / step) * step;
}

SectorSpectrum SpectrumCache::get(const Sector& sector, double delta) {
  const double snapped = snap(delta);
  const auto key = std::make_pair(
      sector.excitation, static_cast<std::int64_t>(std::llround(delta / constants::angular(kResolutionHz))));
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  SectorSpectrum spec = sector_spectrum(xi_, snapped, space_, sector);
  std::lock_guard lock(mutex_);
  entries_.emplace(key, spec);
  return spec;
}

std::size_t SpectrumCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t SpectrumCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

}  // namespace paramosc
