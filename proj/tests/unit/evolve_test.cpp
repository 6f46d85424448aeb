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
#include "kerrsqueeze/hamiltonian.hpp"
#include "oracles.hpp"

namespace kerrsqueeze {
namespace {

OscillatorParams kerr(double k) {
  OscillatorParams osc;
  osc.K = k;
  return osc;
}

DriveParams drive_at(double delta, double omega) {
  DriveParams d;
  d.delta_d = delta;
  d.omega_d = omega;
  return d;
}

TEST(EvolveUnitary, ZeroTimeIsIdentity) {
  const auto psi = make_state(CoherentSpec{cplx(1.0, 0.5)}, 30);
  const auto out = evolve_unitary(build_driven_kerr(kerr(0.00583), drive_at(0.1, 1.0), 30), 0.0, psi);
  EXPECT_NEAR(fidelity(psi, out), 1.0, 1e-14);
}

TEST(EvolveUnitary, KerrRevival) {
  const double k = 0.00583;
  const auto psi = make_state(CoherentSpec{2.0}, 40);
  const auto out = evolve_unitary(build_driven_kerr(kerr(k), drive_at(0.0, 0.0), 40), 1.0 / k, psi);
  EXPECT_GT(fidelity(psi, out), 1.0 - 1e-6);
}

TEST(EvolveUnitary, FreeRotation) {
  const double delta = 0.3, t = 0.7;
  const auto psi = make_state(CoherentSpec{1.5}, 40);
  const auto out = evolve_unitary(build_driven_kerr(kerr(0.0), drive_at(delta, 0.0), 40), t, psi);
  const cplx a0 = psi.expect_complex(annihilation(40));
  const cplx a1 = out.expect_complex(annihilation(40));
  EXPECT_NEAR(std::arg(a0) - std::arg(a1), kTwoPi * delta * t, 1e-8);
  EXPECT_NEAR(std::abs(a1), std::abs(a0), 1e-8);
}

TEST(EvolveUnitary, MatchesMatrixExponentialAndConservesEnergy) {
  const CMatrix h = build_driven_kerr(kerr(0.00583), drive_at(0.056, 2.01), 60).elements;
  const auto psi = make_state(CoherentSpec{1.0}, 60);
  const auto out = evolve_unitary(h, 0.4, psi);
  const CVector ref = oracle::propagator(h, 0.4) * psi.amplitudes();
  EXPECT_NEAR(oracle::overlap_fidelity(ref, out.amplitudes()), 1.0, 1e-10);
  EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-10);
  const double e0 = psi.expect(h), e1 = out.expect(h);
  EXPECT_LT(std::abs(e1 - e0) / std::abs(e0), 1e-9);
}

TEST(EvolveUnitary, DimensionMismatchThrows) {
  const CMatrix h = build_driven_kerr(kerr(0.0), drive_at(0.1, 0.0), 5).elements;
  EXPECT_THROW(evolve_unitary(h, 1.0, make_state(FockSpec{0}, 6)), DimensionMismatch);
}

TEST(Lindblad, ClosedLimitMatchesUnitary) {
  const Eigen::Index dim = 25;
  const CMatrix h = build_driven_kerr(kerr(0.00583), drive_at(0.05, 0.5), dim).elements;
  const auto psi = make_state(CoherentSpec{1.0}, dim);
  const auto rho = evolve_lindblad(h, {}, 0.5, DensityMatrix::from_state(psi));
  EXPECT_NEAR(fidelity(evolve_unitary(h, 0.5, psi), rho), 1.0, 1e-7);
}

TEST(Lindblad, CoherentStateDecay) {
  const Eigen::Index dim = 30;
  const double kappa = 0.4, t = 0.8;
  const CMatrix h = CMatrix::Zero(dim, dim);
  const auto rho0 = DensityMatrix::from_state(make_state(CoherentSpec{2.0}, dim));
  const auto rho = evolve_lindblad(h, {{annihilation(dim), kappa}}, t, rho0);
  const double n = rho.expect(number_operator(dim));
  const double expected = 4.0 * std::exp(-kTwoPi * kappa * t);
  EXPECT_LT(std::abs(n - expected) / expected, 1e-4);
}

TEST(Lindblad, SinglePhotonRateEquation) {
  const Eigen::Index dim = 4;
  const double kappa = 0.25, t = 0.5;
  const auto rho0 = DensityMatrix::from_state(make_state(FockSpec{1}, dim));
  const auto rho = evolve_lindblad(CMatrix::Zero(dim, dim), {{annihilation(dim), kappa}}, t, rho0);
  const double p1 = std::exp(-kTwoPi * kappa * t);
  EXPECT_NEAR(rho.elements()(1, 1).real(), p1, 1e-7);
  EXPECT_NEAR(rho.elements()(0, 0).real(), 1.0 - p1, 1e-7);
}

TEST(Lindblad, RejectsNegativeRates) {
  const auto rho0 = DensityMatrix::from_state(make_state(FockSpec{0}, 3));
  EXPECT_THROW(evolve_lindblad(CMatrix::Zero(3, 3), {{annihilation(3), -1.0}}, 1.0, rho0),
               InvalidParameter);
}

// Co-moving evolution checked against the lab-frame master equation in a
// larger basis: the lab state is D(alpha) rho D(alpha)^dagger.
TEST(ComovingLindblad, AgreesWithLabFrame) {
  OscillatorParams osc = kerr(0.00583);
  osc.kappa_c = 0.05;
  const DriveParams drive = drive_at(0.056, 2.01);
  const Eigen::Index small = 24, big = 48;
  const double t = 0.3;
  CMatrix rho0 = CMatrix::Zero(small, small);
  rho0(0, 0) = 1.0;
  cplx alpha;
  const CMatrix rho_c =
      evolve_comoving_lindblad(osc, drive, rho0, 2.0, t, {}, nullptr, &alpha);
  CMatrix padded = CMatrix::Zero(big, big);
  padded.topLeftCorner(small, small) = rho_c;
  const CMatrix d = oracle::displacement(alpha, big);
  const DensityMatrix lab_from_comoving(d * padded * d.adjoint(), false);

  const CMatrix hd = build_driven_kerr(osc, drive, big).elements;
  const auto lab0 = DensityMatrix::from_state(make_state(CoherentSpec{2.0}, big));
  LindbladOptions opts;
  opts.dt_max = 0.001;
  const auto lab = evolve_lindblad(hd, {{annihilation(big), osc.kappa_c}}, t, lab0, opts);
  EXPECT_GT(fidelity(lab, lab_from_comoving), 1.0 - 1e-6);
}

TEST(ComovingLindblad, RejectsHigherOrderKerr) {
  OscillatorParams osc = kerr(0.00583);
  osc.K2 = 1e-5;
  CMatrix rho0 = CMatrix::Zero(10, 10);
  rho0(0, 0) = 1.0;
  EXPECT_THROW(evolve_comoving_lindblad(osc, drive_at(0.0, 0.0), rho0, 1.0, 0.1, {}, nullptr),
               InvalidParameter);
}

TEST(Trajectory, VacuumUnderUndrivenHamiltonianStaysCentred) {
  const Eigen::Index dim = 20;
  const CMatrix h = build_driven_kerr(kerr(0.00583), drive_at(0.2, 0.0), dim).elements;
  const auto res = trajectory({{h, 1.0}}, make_state(FockSpec{0}, dim), 0.1);
  ASSERT_EQ(res.samples.size(), 11u);
  for (const auto& s : res.samples) EXPECT_LT(std::abs(s.alpha), 1e-12);
}

TEST(Trajectory, DetuningConservesPhotonNumber) {
  const Eigen::Index dim = 40;
  const CMatrix h = build_driven_kerr(kerr(0.0), drive_at(0.3, 0.0), dim).elements;
  const auto res = trajectory({{h, 0.5}, {h, 0.5}}, make_state(CoherentSpec{1.5}, dim), 0.05,
                              {{"n", number_operator(dim)}});
  for (const auto& s : res.samples) {
    EXPECT_NEAR(s.n, 2.25, 1e-9);
    ASSERT_EQ(s.values.size(), 1u);
    EXPECT_NEAR(s.values[0], s.n, 1e-12);
  }
  EXPECT_FALSE(res.leakage_flagged);
}

TEST(Trajectory, RejectsNonHermitianObservable) {
  CMatrix bad = annihilation(5);
  EXPECT_THROW(trajectory({}, make_state(FockSpec{0}, 5), 0.1, {{"a", bad}}), InvalidParameter);
}

}  // namespace
}  // namespace kerrsqueeze
