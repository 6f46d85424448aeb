// Copyright 2026 The kerrsqueeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/metrics.hpp"
#include "oracles.hpp"

namespace kerrsqueeze {
namespace {

TEST(LadderOperators, SmallestBasis) {
  const CMatrix a = annihilation(2);
  EXPECT_EQ(a(0, 0), cplx(0.0));
  EXPECT_EQ(a(0, 1), cplx(1.0));
  EXPECT_EQ(a(1, 0), cplx(0.0));
  EXPECT_EQ(a(1, 1), cplx(0.0));
}

TEST(LadderOperators, NumberOperatorDiagonal) {
  const CMatrix n = number_operator(5);
  for (int k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(n(k, k).real(), k);
}

TEST(LadderOperators, TruncatedCommutator) {
  const auto [a, ad] = ladder_operators(4);
  const CMatrix c = a.elements * ad.elements - ad.elements * a.elements;
  EXPECT_NEAR(c(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(c(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(c(2, 2).real(), 1.0, 1e-15);
  EXPECT_NEAR(c(3, 3).real(), -3.0, 1e-15);
}

TEST(LadderOperators, RejectsEmptyBasis) {
  EXPECT_THROW(annihilation(0), InvalidDimension);
}

TEST(NormalOrdered, MatchesDenseProducts) {
  const Eigen::Index dim = 12;
  const CMatrix a = oracle::lowering(dim);
  const CMatrix ad = a.adjoint();
  const CMatrix expected = ad * ad * a * a * a;
  EXPECT_LT((normal_ordered(2, 3, dim) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Displacement, ZeroIsIdentity) {
  const auto d = displacement_operator(0.0, 8);
  EXPECT_LT((d.elements - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Displacement, CoherentPhotonNumber) {
  const auto d = displacement_operator(2.0, 40);
  const QuantumState psi(d.elements.col(0));
  EXPECT_NEAR(psi.mean_photon_number(), 4.0, 1e-6);
}

TEST(Displacement, VacuumOverlap) {
  const auto d = displacement_operator(1.0, 30);
  EXPECT_NEAR(d.elements(0, 0).real(), std::exp(-0.5), 1e-10);
}

TEST(Displacement, MatchesMatrixExponentialInPaddedBasis) {
  const cplx beta(1.3, -0.7);
  const Eigen::Index dim = 30;
  const CMatrix reference = oracle::displacement(beta, dim + 40).topLeftCorner(dim, dim);
  // columns near the cutoff feel the truncation; compare the well-resolved block
  const auto d = displacement_operator(beta, dim);
  EXPECT_LT((d.elements - reference).topLeftCorner(15, 15).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Displacement, IsUnitary) {
  const auto d = displacement_operator(cplx(3.0, 1.0), 80);
  const CMatrix e = d.elements.adjoint() * d.elements - CMatrix::Identity(80, 80);
  EXPECT_LT(e.cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Displacement, WarnsNearCutoff) {
  EXPECT_TRUE(displacement_operator(3.0, 20).truncation_warning.has_value());
  EXPECT_FALSE(displacement_operator(1.0, 20).truncation_warning.has_value());
}

TEST(Squeeze, ZeroIsIdentity) {
  const auto s = squeeze_operator(0.0, 10);
  EXPECT_LT((s.elements - CMatrix::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Squeeze, QuadratureVariance) {
  const auto s = squeeze_operator(0.5, 60);
  const QuantumState psi(s.elements.col(0));
  const auto m = quadrature_moments(psi);
  EXPECT_NEAR(m.covariance(0, 0), std::exp(-1.0) / 4.0, 1e-5);
}

TEST(Squeeze, LevelInDecibels) {
  EXPECT_NEAR(squeezing_level_db(1.0), 8.686, 1e-3);
}

TEST(Squeeze, TruncationFaultOnTinyBasis) {
  EXPECT_THROW(squeeze_operator(1.5, 10), TruncationFault);
}

TEST(MakeState, Fock) {
  const auto psi = make_state(FockSpec{3}, 10);
  for (int n = 0; n < 10; ++n) EXPECT_NEAR(std::abs(psi[n]), n == 3 ? 1.0 : 0.0, 1e-15);
}

TEST(MakeState, CoherentPoisson) {
  const auto psi = make_state(CoherentSpec{1.0}, 30);
  EXPECT_NEAR(std::norm(psi[1]), std::exp(-1.0), 1e-12);
}

TEST(MakeState, SqueezedFockWithZeroXiIsFock) {
  const auto a = make_state(SqueezedFockSpec{0.0, 2}, 12);
  const auto b = make_state(FockSpec{2}, 12);
  EXPECT_NEAR(fidelity(a, b), 1.0, 1e-14);
}

TEST(MakeState, SqueezedFockMatchesExponentialOracle) {
  const cplx xi = std::polar(0.6, 0.3);
  const Eigen::Index dim = 50;
  const auto psi = make_state(SqueezedFockSpec{xi, 2}, dim);
  const CMatrix s = oracle::squeeze(xi, dim + 60);
  const CVector ref = s.col(2).head(dim);
  EXPECT_NEAR(oracle::overlap_fidelity(ref, psi.amplitudes()), 1.0, 1e-9);
}

TEST(MakeState, LeakageBeyondBudgetThrows) {
  EXPECT_THROW(make_state(CoherentSpec{4.0}, 10), TruncationFault);
}

TEST(SqueezedCoherent, MatchesOperatorProduct) {
  const cplx xi = std::polar(0.4, 1.1);
  const cplx alpha(0.8, -0.5);
  const Eigen::Index dim = 40;
  const CVector ref = (oracle::displacement(alpha, dim + 40) * oracle::squeeze(xi, dim + 40))
                          .col(0)
                          .head(dim);
  const auto psi = squeezed_coherent_state(xi, alpha, dim);
  EXPECT_NEAR(oracle::overlap_fidelity(ref, psi.amplitudes()), 1.0, 1e-10);
}

TEST(Fidelity, Basics) {
  const auto vac = make_state(FockSpec{0}, 30);
  EXPECT_NEAR(fidelity(vac, vac), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(vac, make_state(FockSpec{1}, 30)), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(vac, make_state(CoherentSpec{1.0}, 30)), std::exp(-1.0), 1e-10);
}

TEST(Fidelity, MixedAgreesWithPure) {
  const auto a = make_state(CoherentSpec{cplx(0.5, 0.2)}, 20);
  const auto b = make_state(SqueezedFockSpec{0.3, 0}, 20);
  const auto ra = DensityMatrix::from_state(a);
  const auto rb = DensityMatrix::from_state(b);
  EXPECT_NEAR(fidelity(ra, rb), fidelity(a, b), 1e-7);
  EXPECT_NEAR(fidelity(a, rb), fidelity(a, b), 1e-12);
}

TEST(Fidelity, DimensionMismatchThrows) {
  EXPECT_THROW(fidelity(make_state(FockSpec{0}, 5), make_state(FockSpec{0}, 6)), DimensionMismatch);
}

TEST(DensityMatrix, RejectsNonPhysical) {
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1.5;
  rho(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{rho}, InvalidParameter);
  CMatrix half = CMatrix::Identity(2, 2) * 0.25;
  EXPECT_THROW(DensityMatrix{half}, InvalidParameter);
}

TEST(QuantumState, RejectsZeroVector) {
  EXPECT_THROW(QuantumState(CVector::Zero(4)), InvalidParameter);
}

TEST(Rotate, CoherentAmplitudePhase) {
  const auto psi = make_state(CoherentSpec{1.0}, 30);
  const auto r = rotate(psi, 0.7);
  const auto ref = make_state(CoherentSpec{std::polar(1.0, 0.7)}, 30);
  EXPECT_NEAR(fidelity(r, ref), 1.0, 1e-12);
}

}  // namespace
}  // namespace kerrsqueeze
