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

#include "kerrsqueeze/metrics.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace kerrsqueeze {
namespace {

WignerGrid grid_for(const QuantumState& psi, double half, int points) {
  GridSpec spec;
  spec.x_min = spec.p_min = -half;
  spec.x_max = spec.p_max = half;
  spec.nx = spec.np = points;
  return wigner(psi, spec);
}

TEST(LevelDb, Definition) {
  EXPECT_DOUBLE_EQ(squeezing_level_db(0.0), 0.0);
  EXPECT_NEAR(squeezing_level_db(1.0), 8.686, 1e-3);
  EXPECT_NEAR(squeezing_level_db(1.681), 14.6, 0.01);
  EXPECT_THROW(squeezing_level_db(-0.1), InvalidParameter);
}

TEST(Moments, CoherentState) {
  const auto m = quadrature_moments(make_state(CoherentSpec{cplx(1.0, -0.5)}, 30));
  EXPECT_NEAR(m.mean_x, 1.0, 1e-10);
  EXPECT_NEAR(m.mean_p, -0.5, 1e-10);
  EXPECT_NEAR(m.covariance(0, 0), 0.25, 1e-10);
  EXPECT_NEAR(m.covariance(1, 1), 0.25, 1e-10);
  EXPECT_NEAR(m.covariance(0, 1), 0.0, 1e-10);
}

TEST(VarianceSqueezing, IdealStateParameters) {
  const double r = 0.7, phi = 1.1;
  const auto vs = variance_squeezing(make_state(SqueezedFockSpec{std::polar(r, phi), 0}, 80));
  EXPECT_NEAR(vs.xi_abs, r, 1e-8);
  EXPECT_NEAR(vs.phi, phi, 1e-8);
  EXPECT_NEAR(vs.var_min, std::exp(-2.0 * r) / 4.0, 1e-9);
}

TEST(Fisher, VacuumAndSqueezedVacua) {
  EXPECT_NEAR(fisher_information(grid_for(make_state(FockSpec{0}, 10), 4.0, 161)), 4.0, 0.02 * 4.0);
  for (double r : {0.5, 1.0, 1.5}) {
    const auto psi = make_state(SqueezedFockSpec{r, 0}, 150);
    const double expected = 4.0 * std::exp(2.0 * r);
    GridSpec spec = covering_grid(psi, 201, 7.0, false);
    const double fi = fisher_information(wigner(psi, spec));
    EXPECT_NEAR(fi, expected, 0.03 * expected) << "r=" << r;
  }
}

TEST(Fisher, GridRefinementIsConverged) {
  const auto psi = make_state(SqueezedFockSpec{0.5, 0}, 60);
  GridSpec coarse = covering_grid(psi, 101, 7.0, false);
  GridSpec fine = coarse;
  fine.nx = fine.np = 201;
  const double a = fisher_information(wigner(psi, coarse));
  const double b = fisher_information(wigner(psi, fine));
  EXPECT_LT(std::abs(a - b) / b, 0.01);
}

TEST(LogNegativity, GaussianStatesVanish) {
  EXPECT_NEAR(wigner_log_negativity(grid_for(make_state(FockSpec{0}, 10), 4.0, 121)), 0.0, 0.02);
  const auto coh = make_state(CoherentSpec{cplx(0.5, 0.5)}, 30);
  EXPECT_NEAR(wigner_log_negativity(wigner(coh, covering_grid(coh, 121))), 0.0, 0.02);
  const auto sq = make_state(SqueezedFockSpec{0.8, 0}, 80);
  EXPECT_NEAR(wigner_log_negativity(wigner(sq, covering_grid(sq, 121))), 0.0, 0.02);
}

TEST(LogNegativity, SinglePhotonClosedForm) {
  // |W_1| integrates radially to 2 (0.10653 + e^{-1/2}) = 1.4261
  const double closed = std::log2(4.0 * std::exp(-0.5) - 1.0);
  const double delta = wigner_log_negativity(grid_for(make_state(FockSpec{1}, 10), 4.0, 161));
  EXPECT_NEAR(delta, 0.512, 0.01);
  EXPECT_NEAR(closed, std::log2(1.4261), 1e-3);
}

}  // namespace
}  // namespace kerrsqueeze
