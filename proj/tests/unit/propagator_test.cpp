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

#include <thread>
#include <vector>

#include "kerrsqueeze/hamiltonian.hpp"
#include "kerrsqueeze/propagator.hpp"
#include "oracles.hpp"

namespace kerrsqueeze {
namespace {

CMatrix sample_hamiltonian(Eigen::Index dim) {
  OscillatorParams osc;
  DriveParams drive;
  drive.delta_d = 0.056;
  drive.omega_d = 2.01;
  return build_driven_kerr(osc, drive, dim).elements;
}

TEST(Propagator, MatchesMatrixExponential) {
  const CMatrix h = sample_hamiltonian(40);
  const CMatrix u = diagonalize(h).unitary(0.37);
  EXPECT_LT((u - oracle::propagator(h, 0.37)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Propagator, UnitaryAtLargeDimension) {
  const CMatrix u = diagonalize(sample_hamiltonian(300)).unitary(2.25);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(300, 300)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Propagator, RejectsNonHermitian) {
  CMatrix h = sample_hamiltonian(5);
  h(0, 1) += 1e-3;
  EXPECT_THROW(diagonalize(h), InvalidParameter);
}

TEST(PropagatorCache, ReusesEigensystems) {
  PropagatorCache cache;
  const CMatrix h = sample_hamiltonian(20);
  const auto a = cache.get(h);
  const auto b = cache.get(h);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(cache.size(), 1u);
  CMatrix h2 = h;
  h2(0, 0) += 1.0;
  EXPECT_NE(cache.get(h2).get(), a.get());
  EXPECT_EQ(cache.size(), 2u);
}

TEST(PropagatorCache, ConcurrentReadersSeeOneEntry) {
  PropagatorCache cache;
  const CMatrix h = sample_hamiltonian(30);
  std::vector<std::thread> pool;
  std::vector<const Eigensystem*> seen(4);
  for (int i = 0; i < 4; ++i) {
    pool.emplace_back([&, i] { seen[static_cast<std::size_t>(i)] = cache.get(h).get(); });
  }
  for (auto& t : pool) t.join();
  const CVector psi = CVector::Unit(30, 0);
  const auto sys = cache.get(h);
  for (const auto* s : seen) EXPECT_LT((s->apply(psi, 0.1) - sys->apply(psi, 0.1)).norm(), 1e-14);
}

TEST(ContentHash, DistinguishesMatrices) {
  const CMatrix a = sample_hamiltonian(10);
  CMatrix b = a;
  b(3, 3) += 1e-12;
  EXPECT_EQ(content_hash(a), content_hash(CMatrix(a)));
  EXPECT_NE(content_hash(a), content_hash(b));
}

}  // namespace
}  // namespace kerrsqueeze
