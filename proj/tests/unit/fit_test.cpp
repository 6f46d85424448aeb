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

#include "kerrsqueeze/fit.hpp"
#include "kerrsqueeze/metrics.hpp"
#include "kerrsqueeze/protocol.hpp"

namespace kerrsqueeze {
namespace {

Cut cut_of(const QuantumState& psi, bool along_x, int n = 61, double half = 3.0) {
  Cut c;
  c.coord = Eigen::VectorXd::LinSpaced(n, -half, half);
  c.values.resize(n);
  for (int i = 0; i < n; ++i) {
    const cplx alpha = along_x ? cplx(c.coord[i], 0.0) : cplx(0.0, c.coord[i]);
    c.values[i] = wigner_point(psi, alpha);
  }
  return c;
}

TEST(Fit1d, SqueezedVacuumRoundTrip) {
  const auto psi = make_state(SqueezedFockSpec{0.5, 0}, 60);
  const auto fit = fit_1d_cuts(cut_of(psi, true), cut_of(psi, false));
  EXPECT_NEAR(fit.xi_abs, 0.5, 1e-3);
  EXPECT_NEAR(fit.phi, 0.0, 1e-12);
  EXPECT_NEAR(fit.amplitude, 2.0 / kPi, 1e-3);
  EXPECT_GT(fit.ci95.xi_abs, 0.0);
  EXPECT_LT(fit.ci95.xi_abs, 0.01);
}

TEST(Fit1d, VacuumGivesZero) {
  const auto psi = make_state(FockSpec{0}, 10);
  EXPECT_NEAR(fit_1d_cuts(cut_of(psi, true), cut_of(psi, false)).xi_abs, 0.0, 1e-6);
}

TEST(Fit1d, SwappedCutsFlipPhase) {
  const auto psi = make_state(SqueezedFockSpec{0.5, 0}, 60);
  const auto fit = fit_1d_cuts(cut_of(psi, false), cut_of(psi, true));
  EXPECT_NEAR(fit.xi_abs, 0.5, 1e-3);
  EXPECT_NEAR(fit.phi, kPi, 1e-12);
}

TEST(Fit1d, RejectsMismatchedCuts) {
  Cut a = cut_of(make_state(FockSpec{0}, 5), true, 11);
  Cut b = a;
  b.values.conservativeResize(5);
  EXPECT_THROW(fit_1d_cuts(a, b), InvalidParameter);
}

TEST(Fit2d, SqueezedFockRoundTrip) {
  const cplx xi = std::polar(0.6, 0.3);
  const auto psi = make_state(SqueezedFockSpec{xi, 2}, 80);
  GridSpec spec;
  spec.x_min = spec.p_min = -4.0;
  spec.x_max = spec.p_max = 4.0;
  spec.nx = spec.np = 61;
  const auto fit = fit_2d_wigner(wigner(psi, spec), 2);
  EXPECT_NEAR(fit.xi_abs, 0.6, 0.005);
  EXPECT_NEAR(fit.phi, 0.3, 0.01);
  EXPECT_EQ(fit.n_fock, 2);
  EXPECT_NEAR(fit.amplitude, 1.0, 1e-3);
}

TEST(Fit2d, VacuumGivesZero) {
  GridSpec spec;
  spec.nx = spec.np = 41;
  EXPECT_LT(fit_2d_wigner(wigner(make_state(FockSpec{0}, 10), spec), 0).xi_abs, 1e-4);
}

TEST(Fit2d, SelectsFockNumber) {
  const auto psi = make_state(SqueezedFockSpec{std::polar(0.4, 1.0), 1}, 60);
  GridSpec spec;
  spec.nx = spec.np = 41;
  Fit2dOptions opts;
  opts.select_n = true;
  EXPECT_EQ(fit_2d_wigner(wigner(psi, spec), 2, opts).n_fock, 1);
}

TEST(Fit2d, AlignedPipelineOnDisplacedState) {
  const auto psi = squeezed_coherent_state(std::polar(0.8, 2.0), cplx(1.0, -0.5), 80);
  const auto fit = fit_state_aligned(psi, 0);
  EXPECT_NEAR(fit.xi_abs, 0.8, 0.005);
}

TEST(Fit2d, CyclicPipelineRecoversFockNumber) {
  DriveParams drive;
  drive.delta_d = 0.056;
  drive.omega_d = 2.01;
  const OscillatorParams osc;
  const double period = 2.157;
  const auto vac_run = run_cyclic_squeeze(osc, drive, 2.0, 2, period, make_state(FockSpec{0}, 140));
  const double own = best_fit_squeezed(vac_run.final_state).xi_abs;
  const auto run = run_cyclic_squeeze(osc, drive, 2.0, 2, period, make_state(FockSpec{1}, 140));
  Fit2dOptions opts;
  opts.select_n = true;
  const auto fit = fit_state_aligned(run.final_state, 1, 81, 5.0, opts);
  EXPECT_EQ(fit.n_fock, 1);
  EXPECT_NEAR(fit.xi_abs, own, 0.1 * own);
}

TEST(BestFit, RecoversIdealState) {
  const cplx xi = std::polar(0.7, 1.3);
  const cplx alpha(0.4, 0.2);
  const auto bf = best_fit_squeezed(squeezed_coherent_state(xi, alpha, 60));
  EXPECT_NEAR(bf.xi_abs, 0.7, 1e-4);
  EXPECT_NEAR(bf.phi, 1.3, 1e-3);
  EXPECT_NEAR(std::abs(bf.alpha - alpha), 0.0, 1e-4);
  EXPECT_GT(bf.fidelity, 1.0 - 1e-8);
}

TEST(BestFit, WithoutDisplacementIgnoresMean) {
  const auto bf = best_fit_squeezed(make_state(SqueezedFockSpec{0.5, 0}, 40), false);
  EXPECT_NEAR(bf.xi_abs, 0.5, 1e-4);
  EXPECT_EQ(bf.alpha, cplx(0.0));
}

}  // namespace
}  // namespace kerrsqueeze
