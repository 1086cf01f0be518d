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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "paramosc/fock.hpp"
#include "paramosc/wigner.hpp"

namespace paramosc {
namespace {

constexpr double kPi = std::numbers::pi;

// exp(alpha a^dag - alpha^* a) by Eigen's Pade scaling-and-squaring, as an
// independent route to the displacement.
Matrix pade_displacement(int levels, cplx alpha) {
  Matrix a = Matrix::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

double gaussian_wigner(cplx alpha, cplx center) { return 2.0 / kPi * std::exp(-2.0 * std::norm(alpha - center)); }

// Wigner function of |a><b| for coherent a, b.
cplx cross_wigner(cplx alpha, cplx a, cplx b) {
  return 2.0 / kPi * coherent_overlap(b, a) * std::exp(-2.0 * (alpha - a) * std::conj(alpha - b));
}

TEST(FockDim, RejectsTooFewLevels) {
  EXPECT_THROW(FockDim(1), std::invalid_argument);
  EXPECT_EQ(FockDim(10).guard_start(), 8);
}

TEST(TwoModeSpace, RadialMajorIndexing) {
  const TwoModeSpace space(5, 3);
  EXPECT_EQ(space.dimension(), 15);
  EXPECT_EQ(space.index(0, 0), 0);
  EXPECT_EQ(space.index(0, 2), 2);
  EXPECT_EQ(space.index(1, 0), 3);
  for (Eigen::Index i = 0; i < space.dimension(); ++i) {
    EXPECT_EQ(space.index(space.radial_of(i), space.axial_of(i)), i);
    EXPECT_EQ(space.excitation_of(i), space.radial_of(i) + 2 * space.axial_of(i));
  }
  EXPECT_THROW(space.index(5, 0), std::out_of_range);
  EXPECT_EQ(space.max_excitation(), 4 + 4);
}

TEST(ModeOperators, CanonicalCommutatorBelowTruncation) {
  const FockDim dim(12);
  const Matrix a = mode_operator(dim, ModeOperatorKind::annihilate).matrix();
  const Matrix ad = mode_operator(dim, ModeOperatorKind::create).matrix();
  const Matrix comm = a * ad - ad * a;
  for (int k = 0; k < 11; ++k) EXPECT_NEAR(comm(k, k).real(), 1.0, 1e-14);
  EXPECT_NEAR((ad * a - mode_operator(dim, ModeOperatorKind::number).matrix()).norm(), 0.0, 1e-13);
  const Matrix p = mode_operator(dim, ModeOperatorKind::parity).matrix();
  EXPECT_EQ(p(3, 3), cplx(-1.0));
}

TEST(Operator, TagsAreVerified) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(Operator(m, OperatorTag::hermitian), ContractError);
  EXPECT_THROW(Operator(m, OperatorTag::unitary), ContractError);
  EXPECT_NO_THROW(Operator::general(m));
  EXPECT_THROW(Operator::general(Matrix::Zero(2, 3)), ContractError);
}

TEST(Embed, ActsOnOneMode) {
  const TwoModeSpace space(4, 3);
  const Operator n_r = embed(mode_operator(space.radial(), ModeOperatorKind::number), space, Mode::radial);
  const Operator n_c = embed(mode_operator(space.axial(), ModeOperatorKind::number), space, Mode::axial);
  EXPECT_EQ(n_r.tag(), OperatorTag::hermitian);
  for (Eigen::Index i = 0; i < space.dimension(); ++i) {
    EXPECT_DOUBLE_EQ(n_r.matrix()(i, i).real(), space.radial_of(i));
    EXPECT_DOUBLE_EQ(n_c.matrix()(i, i).real(), space.axial_of(i));
  }
  EXPECT_THROW(embed(mode_operator(FockDim(5), ModeOperatorKind::number), space, Mode::axial), std::invalid_argument);
}

TEST(StateVector, NormContract) {
  Vector v = Vector::Zero(3);
  v[0] = 1.0;
  v[1] = 1e-3;
  EXPECT_THROW(StateVector{v}, ContractError);
  EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(Vector::Zero(3)), ContractError);
}

TEST(FockState, GuardBandIsRejected) {
  const FockDim dim(10);
  EXPECT_NO_THROW(fock_state(dim, 7));
  EXPECT_THROW(fock_state(dim, 8), TruncationError);
  EXPECT_THROW(fock_state(dim, -1), std::invalid_argument);
}

TEST(Displacement, MatchesPadeExponential) {
  const int levels = 30;
  const DisplacementKernel kernel{FockDim(levels)};
  for (cplx alpha : {cplx(0.3, 0.0), cplx(-0.8, 1.1), cplx(0.0, -2.0), cplx(1.73, 1.73)}) {
    const Matrix expected = pade_displacement(levels, alpha);
    EXPECT_LT((kernel.matrix(alpha) - expected).cwiseAbs().maxCoeff(), 1e-10) << alpha;
  }
}

TEST(Displacement, IsUnitaryAndComposes) {
  const FockDim dim(40);
  const Operator d = displacement_operator({cplx(1.2, -0.4)}, dim);
  EXPECT_EQ(d.tag(), OperatorTag::unitary);
  // D(-alpha) D(alpha) = 1 on the truncated space.
  const DisplacementKernel kernel(dim);
  const Matrix prod = kernel.matrix(cplx(-1.2, 0.4)) * kernel.matrix(cplx(1.2, -0.4));
  EXPECT_LT((prod - Matrix::Identity(40, 40)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CoherentState, SeriesMatchesDisplacedVacuum) {
  const FockDim dim(60);
  for (cplx alpha : {cplx(0.87, 0.0), cplx(1.73, 0.0), cplx(-1.0, 1.5)}) {
    const Vector series = coherent_state(dim, alpha).amplitudes();
    const Vector displaced = pade_displacement(60, alpha).col(0);
    EXPECT_LT((series - displaced).cwiseAbs().maxCoeff(), 1e-10) << alpha;
  }
  EXPECT_LT(displacement_leak({cplx(1.0, 0.0)}, dim), kLeakThreshold);
  EXPECT_GT(displacement_leak({cplx(6.0, 0.0)}, FockDim(20)), kLeakThreshold);
}

TEST(CoherentState, LeakRaisesTruncationError) {
  EXPECT_THROW(coherent_state(FockDim(10), cplx(3.0, 0.0)), TruncationError);
}

TEST(CoherentOverlap, MatchesInnerProduct) {
  const FockDim dim(60);
  const cplx a(0.7, -0.2);
  const cplx b(-0.4, 1.1);
  const cplx numeric = coherent_state(dim, a).amplitudes().dot(coherent_state(dim, b).amplitudes());
  EXPECT_NEAR(std::abs(numeric - coherent_overlap(a, b)), 0.0, 1e-12);
}

TEST(CatState, ParityAndNormalization) {
  const FockDim dim(40);
  const StateVector odd = cat_state(dim, cplx(1.73, 0.0), kPi, CatSign::minus);
  const StateVector even = cat_state(dim, cplx(1.73, 0.0), kPi, CatSign::plus);
  for (int n = 0; n < 40; n += 2) EXPECT_NEAR(std::abs(odd[n]), 0.0, 1e-14);
  for (int n = 1; n < 40; n += 2) EXPECT_NEAR(std::abs(even[n]), 0.0, 1e-14);
  // The analytic normalization already gives unit norm.
  const cplx alpha(1.73, 0.0);
  const double denom = 2.0 * (1.0 - coherent_overlap(alpha, -alpha).real());
  const Vector raw = (coherent_state(dim, alpha).amplitudes() - coherent_state(dim, -alpha).amplitudes()) /
                     std::sqrt(denom);
  EXPECT_NEAR(raw.norm(), 1.0, 1e-12);
  EXPECT_THROW(cat_state(dim, cplx(0.0, 0.0), kPi, CatSign::minus), std::invalid_argument);
}

TEST(ProductState, Embedding) {
  const TwoModeSpace space(6, 4);
  const StateVector s = product_state(space, 2, 1);
  EXPECT_EQ(s[space.index(2, 1)], cplx(1.0));
  const StateVector w = with_axial_vacuum(fock_state(space.radial(), 3), space);
  EXPECT_EQ(w[space.index(3, 0)], cplx(1.0));
}

TEST(WignerOracle, Vacuum) {
  const StateVector vac = fock_state(FockDim(40), 0);
  for (cplx alpha : {cplx(0.0, 0.0), cplx(0.5, -0.3), cplx(-1.2, 2.0)}) {
    EXPECT_NEAR(wigner_oracle(vac, {alpha}), gaussian_wigner(alpha, 0.0), 1e-12);
  }
}

TEST(WignerOracle, CoherentGaussian) {
  const cplx beta(1.73, 0.0);
  const StateVector s = coherent_state(FockDim(60), beta);
  for (cplx alpha : {cplx(1.73, 0.0), cplx(0.0, 0.0), cplx(2.5, 1.0), cplx(-1.0, -1.0)}) {
    EXPECT_NEAR(wigner_oracle(s, {alpha}), gaussian_wigner(alpha, beta), 1e-10);
  }
}

TEST(WignerOracle, CatThreeGaussians) {
  const FockDim dim(60);
  const cplx a(1.73, 0.0);
  const cplx b = a * std::polar(1.0, kPi);
  for (CatSign sign : {CatSign::plus, CatSign::minus}) {
    const double s = sign == CatSign::plus ? 1.0 : -1.0;
    const StateVector cat = cat_state(dim, a, kPi, sign);
    const double norm2 = 1.0 / (2.0 * (1.0 + s * coherent_overlap(a, b).real()));
    for (cplx alpha : {cplx(0.0, 0.0), cplx(0.0, 0.4), cplx(1.5, -0.5), cplx(-0.3, 0.9)}) {
      const double expected =
          norm2 * (gaussian_wigner(alpha, a) + gaussian_wigner(alpha, b) + 2.0 * s * cross_wigner(alpha, a, b).real());
      EXPECT_NEAR(wigner_oracle(cat, {alpha}), expected, 1e-10);
    }
  }
  // Odd cat is maximally negative at the origin.
  EXPECT_NEAR(wigner_oracle(cat_state(dim, a, kPi, CatSign::minus), {cplx(0.0, 0.0)}), -2.0 / kPi, 1e-10);
}

TEST(WignerOracle, FockClosedForm) {
  const FockDim dim(60);
  for (int n : {0, 1, 2, 5}) {
    const StateVector f = fock_state(dim, n);
    for (double r : {0.0, 0.3, 0.9, 1.7}) {
      EXPECT_NEAR(wigner_oracle(f, {std::polar(r, 0.7)}), fock_wigner_closed_form(n, r), 1e-10) << n << " " << r;
    }
  }
  EXPECT_NEAR(fock_wigner_closed_form(1, 0.0), -2.0 / kPi, 1e-15);
}

TEST(WignerOracle, NormalizationIntegral) {
  // Displacements reach |alpha| = 5 sqrt2, so the cutoff must sit well above 50.
  const FockDim dim(120);
  const DisplacementKernel kernel(dim);
  for (const StateVector& s : {fock_state(dim, 2), cat_state(dim, cplx(1.73, 0.0), kPi, CatSign::minus),
                               coherent_state(dim, cplx(0.87, 0.0))}) {
    const double h = 0.1;
    double total = 0.0;
    for (double x = -5.0; x <= 5.0 + 1e-9; x += h) {
      for (double y = -5.0; y <= 5.0 + 1e-9; y += h) total += wigner_oracle(s, {cplx(x, y)}, kernel);
    }
    EXPECT_NEAR(total * h * h, 1.0, 1e-3);
  }
}

}  // namespace
}  // namespace paramosc
