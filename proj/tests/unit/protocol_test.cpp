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

#include "kerrsqueeze/evolve.hpp"
#include "kerrsqueeze/metrics.hpp"
#include "kerrsqueeze/protocol.hpp"
#include "oracles.hpp"

namespace kerrsqueeze {
namespace {

TEST(VirtualRotation, IdentityCases) {
  const auto psi = make_state(SqueezedFockSpec{std::polar(0.4, 0.3), 1}, 40);
  EXPECT_LT((apply_virtual_rotation(psi, 0.0).amplitudes() - psi.amplitudes()).norm(), 1e-15);
  EXPECT_LT((apply_virtual_rotation(psi, kTwoPi).amplitudes() - psi.amplitudes()).norm(), 1e-12);
}

TEST(VirtualRotation, CoherentAmplitudeConvention) {
  const auto psi = make_state(CoherentSpec{1.0}, 30);
  const auto out = apply_virtual_rotation(psi, kPi / 2.0);
  const CVector ref = oracle::coherent(std::polar(1.0, -kPi / 2.0), 30);
  EXPECT_NEAR(oracle::overlap_fidelity(ref, out.amplitudes()), 1.0, 1e-12);
}

TEST(CalibratePhase, AlignedSqueezedVacuum) {
  const auto psi = make_state(SqueezedFockSpec{0.6, 0}, 60);
  EXPECT_NEAR(calibrate_phase(psi), 0.0, kTwoPi / 72);
}

TEST(CalibratePhase, RecoversPreRotation) {
  const double theta0 = 0.37;
  const auto psi = make_state(SqueezedFockSpec{0.6, 0}, 60);
  const auto rotated = rotate(psi, theta0);
  const double theta = calibrate_phase(rotated);
  EXPECT_NEAR(theta, theta0, kTwoPi / 72);
  // and the returned rotation undoes it
  const auto aligned = apply_virtual_rotation(rotated, theta);
  EXPECT_NEAR(variance_squeezing(aligned).long_axis, kPi / 2.0, 0.05);
}

TEST(CalibratePhase, FockStateIsDegenerate) {
  EXPECT_THROW(calibrate_phase(make_state(FockSpec{2}, 20)), DegeneratePhase);
}

TEST(Schedule, FrameLogAndClosure) {
  ProtocolSchedule s;
  s.displace(2.0).evolve("h", 1.0).displace(-2.0).rotate(0.3);
  const auto log = s.frame_log();
  ASSERT_EQ(log.size(), 4u);
  EXPECT_EQ(log[1], cplx(2.0));
  EXPECT_TRUE(s.closes());
  ProtocolSchedule open;
  open.displace(1.0);
  EXPECT_FALSE(open.closes());
}

TEST(Schedule, RunMatchesDirectProduct) {
  const Eigen::Index dim = 40;
  OscillatorParams osc;
  DriveParams drive;
  drive.delta_d = 0.056;
  drive.omega_d = 2.01;
  const CMatrix h = build_driven_kerr(osc, drive, dim).elements;
  ProtocolSchedule s;
  s.displace(1.0).evolve("hd", 0.3).displace(-1.0);
  const auto vac = make_state(FockSpec{0}, dim);
  const auto out = s.run({{"hd", h}}, vac);
  const CVector ref = oracle::displacement(-1.0, dim) * oracle::propagator(h, 0.3) *
                      oracle::displacement(1.0, dim) * vac.amplitudes();
  EXPECT_NEAR(oracle::overlap_fidelity(ref, out.amplitudes()), 1.0, 1e-8);
  EXPECT_THROW(s.run({}, vac), InvalidParameter);
}

TEST(CyclicSqueeze, ZeroCyclesIsIdentity) {
  const auto vac = make_state(FockSpec{0}, 30);
  const auto res = run_cyclic_squeeze(OscillatorParams{}, DriveParams{}, 2.0, 0, 2.25, vac);
  EXPECT_NEAR(fidelity(vac, res.final_state), 1.0, 1e-15);
  EXPECT_TRUE(res.snapshots.empty());
}

TEST(CyclicSqueeze, OneCycleSqueezesVacuum) {
  DriveParams drive;
  drive.delta_d = 0.056;
  drive.omega_d = 2.01;
  const auto res = run_cyclic_squeeze(OscillatorParams{}, drive, 2.0, 1, 2.157,
                                      make_state(FockSpec{0}, 120));
  ASSERT_EQ(res.snapshots.size(), 1u);
  const auto vs = variance_squeezing(res.final_state);
  EXPECT_GT(vs.xi_abs, 0.15);
  EXPECT_TRUE(res.schedule.closes());
  EXPECT_GT(res.peak_photon_number, 4.0);
}

TEST(Trotter, ZeroStepsIsIdentity) {
  TrotterConfig cfg;
  cfg.beta = 4.0;
  const auto vac = make_state(FockSpec{0}, 30);
  EXPECT_NEAR(fidelity(run_trotter_squeeze(OscillatorParams{}, cfg, vac).final_state, vac), 1.0, 1e-15);
}

TEST(Trotter, OppositeFramesCancelWithoutKerr) {
  OscillatorParams osc;
  osc.K = 0.0;
  TrotterConfig cfg;
  cfg.beta = 2.0;
  cfg.steps = 5;
  cfg.delta_d = 0.0;
  const auto psi = make_state(SqueezedFockSpec{0.3, 1}, 40);
  EXPECT_NEAR(fidelity(run_trotter_squeeze(osc, cfg, psi).final_state, psi), 1.0, 1e-10);
}

TEST(Trotter, MatchesLabFrameSchedule) {
  // one first-order step equals D(b) U(dt/2) D(-2b) U(dt/2) D(b) in the lab
  const Eigen::Index dim = 50;
  OscillatorParams osc;
  TrotterConfig cfg;
  cfg.beta = cplx(1.5, 0.5);
  cfg.steps = 2;
  cfg.delta_t = 0.2;
  cfg.delta_d = 0.05;
  DriveParams drive;
  drive.delta_d = cfg.delta_d;
  const CMatrix h = build_driven_kerr(osc, drive, dim + 60).elements;
  const CMatrix u = oracle::propagator(h, cfg.delta_t / 2.0);
  const CMatrix d_in = oracle::displacement(cfg.beta, dim + 60);
  const CMatrix d_flip = oracle::displacement(-2.0 * cfg.beta, dim + 60);
  CVector psi = CVector::Unit(dim + 60, 0);
  for (int m = 0; m < 2; ++m) psi = d_in * u * d_flip * u * d_in * psi;
  const auto res = run_trotter_squeeze(osc, cfg, make_state(FockSpec{0}, dim));
  EXPECT_NEAR(oracle::overlap_fidelity(psi.head(dim), res.final_state.amplitudes()), 1.0, 1e-8);
  EXPECT_EQ(res.snapshot_steps, (std::vector<int>{1, 2}));
}

TEST(Trotter, SecondOrderNeedsEvenSteps) {
  TrotterConfig cfg;
  cfg.beta = 1.0;
  cfg.steps = 3;
  cfg.order = 2;
  EXPECT_THROW(run_trotter_squeeze(OscillatorParams{}, cfg, make_state(FockSpec{0}, 20)), InvalidParameter);
}

TEST(Trotter, ApproachesKpoForSmallSteps) {
  OscillatorParams osc;
  TrotterConfig cfg;
  cfg.beta = 4.0;
  cfg.delta_d = 0.2;
  cfg.steps = 64;
  cfg.delta_t = 0.96 / 64;
  const auto vac = make_state(FockSpec{0}, 80);
  const auto res = run_trotter_squeeze(osc, cfg, vac);
  const auto ref = kpo_reference(osc, 4.0, 0.2, 0.96, vac);
  EXPECT_GT(fidelity(res.final_state, ref), 0.999);
}

TEST(Trotter, FinitePulseReducesToInstantaneousAsDurationVanishes) {
  OscillatorParams osc;
  TrotterConfig cfg;
  cfg.beta = 2.0;
  cfg.steps = 4;
  cfg.delta_t = 0.08;
  const auto vac = make_state(FockSpec{0}, 60);
  const auto a = run_trotter_squeeze(osc, cfg, vac).final_state;
  cfg.displacement_duration = 1e-6;
  const auto b = run_trotter_squeeze(osc, cfg, vac).final_state;
  EXPECT_GT(fidelity(a, b), 1.0 - 1e-9);
  cfg.displacement_duration = 0.01;
  EXPECT_LT(fidelity(a, run_trotter_squeeze(osc, cfg, vac).final_state), 1.0 - 1e-9);
}

}  // namespace
}  // namespace kerrsqueeze
