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


#include <benchmark/benchmark.h>

#include "kerrsqueeze/fit.hpp"
#include "kerrsqueeze/hamiltonian.hpp"
#include "kerrsqueeze/propagator.hpp"
#include "kerrsqueeze/protocol.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace ks = kerrsqueeze;

namespace {

ks::CMatrix operating_point_hamiltonian(Eigen::Index dim) {
  ks::OscillatorParams osc;
  ks::DriveParams drive;
  drive.delta_d = 0.056;
  drive.omega_d = 2.01;
  return ks::build_driven_kerr(osc, drive, dim).elements;
}

void BM_Diagonalize(benchmark::State& state) {
  const ks::CMatrix h = operating_point_hamiltonian(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ks::diagonalize(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Diagonalize)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond)->Complexity();

void BM_CachedPropagate(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  const auto sys = ks::PropagatorCache::global().get(operating_point_hamiltonian(dim));
  const ks::CVector psi = ks::make_state(ks::CoherentSpec{2.0}, dim).amplitudes();
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(sys->apply(psi, t));
  }
}
BENCHMARK(BM_CachedPropagate)->Arg(120)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_WignerGrid(benchmark::State& state) {
  const auto psi = ks::make_state(ks::SqueezedFockSpec{0.8, 1}, 80);
  ks::GridSpec spec;
  spec.nx = spec.np = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ks::wigner(psi, spec));
  state.SetItemsProcessed(state.iterations() * spec.nx * spec.np);
}
BENCHMARK(BM_WignerGrid)->Arg(41)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_TrotterRun(benchmark::State& state) {
  ks::OscillatorParams osc;
  ks::TrotterConfig cfg;
  cfg.beta = 4.0;
  cfg.delta_d = 0.1;
  cfg.steps = 6;
  const auto psi = ks::make_state(ks::FockSpec{0}, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ks::run_trotter_squeeze(osc, cfg, psi));
}
BENCHMARK(BM_TrotterRun)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_FitAligned(benchmark::State& state) {
  const auto psi = ks::make_state(ks::SqueezedFockSpec{0.6, 0}, 60);
  for (auto _ : state) benchmark::DoNotOptimize(ks::fit_state_aligned(psi, 0, 41));
}
BENCHMARK(BM_FitAligned)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
