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

#include "kerrsqueeze/wigner.hpp"
#include "oracles.hpp"

namespace kerrsqueeze {
namespace {

constexpr double kTwoOverPi = 2.0 / kPi;

// Displaced parity: W(alpha) = (2/pi) <psi| D(alpha) P D(alpha)^dagger |psi>,
// evaluated with matrix-exponential displacements in a padded basis.
double parity_oracle(const QuantumState& psi, cplx alpha) {
  const Eigen::Index dim = psi.dim(), big = dim + 60;
  CVector v = CVector::Zero(big);
  v.head(dim) = psi.amplitudes();
  const CVector shifted = oracle::displacement(-alpha, big) * v;
  double w = 0.0;
  for (Eigen::Index n = 0; n < big; ++n) w += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(shifted[n]);
  return kTwoOverPi * w;
}

TEST(Wigner, VacuumPeak) {
  EXPECT_NEAR(wigner_point(make_state(FockSpec{0}, 10), 0.0), kTwoOverPi, 1e-14);
}

TEST(Wigner, FockOrigin) {
  for (int n = 0; n < 6; ++n) {
    EXPECT_NEAR(wigner_point(make_state(FockSpec{n}, 12), 0.0), kTwoOverPi * (n % 2 ? -1.0 : 1.0), 1e-12);
  }
}

TEST(Wigner, MatchesDisplacedParity) {
  const auto psi = make_state(SqueezedFockSpec{std::polar(0.4, 0.8), 1}, 40);
  for (cplx alpha : {cplx(0.3, -0.2), cplx(-1.1, 0.4), cplx(0.0, 1.3)}) {
    EXPECT_NEAR(wigner_point(psi, alpha), parity_oracle(psi, alpha), 1e-9);
  }
}

TEST(Wigner, SqueezedFockMatchesClosedForm) {
  const cplx xi = 0.4;
  const auto psi = make_state(SqueezedFockSpec{xi, 1}, 60);
  GridSpec spec;
  spec.nx = spec.np = 41;
  const auto grid = wigner(psi, spec);
  double worst = 0.0;
  for (int i = 0; i < 41; ++i) {
    for (int j = 0; j < 41; ++j) {
      const cplx alpha(grid.x_values[i], grid.p_values[j]);
      worst = std::max(worst, std::abs(grid.values(i, j) - analytic_squeezed_fock_wigner(xi, 1, alpha)));
    }
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Wigner, ClosedFormBasics) {
  EXPECT_NEAR(analytic_squeezed_fock_wigner(0.0, 0, 0.0), kTwoOverPi, 1e-15);
  const cplx xi = std::polar(0.7, 1.2);
  EXPECT_NEAR(analytic_squeezed_fock_wigner(xi, 3, cplx(0.3, 0.4)),
              analytic_squeezed_fock_wigner(xi, 3, cplx(-0.3, -0.4)), 1e-14);
  EXPECT_NEAR(analytic_squeezed_fock_wigner(0.5, 0, 0.3), 0.39029, 1e-4);
  EXPECT_NEAR(analytic_squeezed_fock_wigner(0.5, 0, 0.3), kTwoOverPi * std::exp(-2.0 * std::exp(1.0) * 0.09),
              1e-12);
}

TEST(Wigner, NormalizedAndBounded) {
  const auto psi = make_state(SqueezedFockSpec{std::polar(0.5, 0.6), 2}, 60);
  const auto grid = wigner(psi, covering_grid(psi, 101));
  EXPECT_NEAR(grid.integral(), 1.0, 0.01);
  EXPECT_FALSE(grid.coverage_warning.has_value());
  EXPECT_LE(grid.values.cwiseAbs().maxCoeff(), kTwoOverPi + 1e-9);
}

TEST(Wigner, DensityMatrixAgreesWithPureState) {
  const auto psi = make_state(CoherentSpec{cplx(0.5, -0.3)}, 25);
  const auto rho = DensityMatrix::from_state(psi);
  GridSpec spec;
  spec.nx = spec.np = 11;
  const auto a = wigner(psi, spec);
  const auto b = wigner(rho, spec, 3);
  EXPECT_LT((a.values - b.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Wigner, CoverageWarningOnNarrowGrid) {
  GridSpec spec;
  spec.x_min = spec.p_min = -0.2;
  spec.x_max = spec.p_max = 0.2;
  spec.nx = spec.np = 11;
  EXPECT_TRUE(wigner(make_state(FockSpec{0}, 5), spec).coverage_warning.has_value());
}

TEST(Wigner, RejectsDegenerateGrid) {
  GridSpec spec;
  spec.nx = 1;
  EXPECT_THROW(wigner(make_state(FockSpec{0}, 5), spec), InvalidParameter);
}

TEST(Wigner, CoveringGridCentresOnMean) {
  const auto psi = make_state(CoherentSpec{cplx(1.0, -2.0)}, 40);
  const auto spec = covering_grid(psi);
  EXPECT_NEAR(0.5 * (spec.x_min + spec.x_max), 1.0, 1e-9);
  EXPECT_NEAR(0.5 * (spec.p_min + spec.p_max), -2.0, 1e-9);
}

}  // namespace
}  // namespace kerrsqueeze
