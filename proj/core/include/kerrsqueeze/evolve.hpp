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

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/hamiltonian.hpp"

namespace kerrsqueeze {

/// Raised when the Lindblad step-halving loop cannot reach its tolerance.
class IntegratorError : public Error {
 public:
  IntegratorError(const std::string& what, double last_step, double last_change)
      : Error(what), last_step_(last_step), last_change_(last_change) {}
  double last_step() const { return last_step_; }
  double last_change() const { return last_change_; }

 private:
  double last_step_;
  double last_change_;
};

/// e^{-iHt} psi through the (cached) eigendecomposition of H. H must be
/// Hermitian within 1e-10 and t >= 0.
QuantumState evolve_unitary(const CMatrix& h, double t, const QuantumState& psi);
QuantumState evolve_unitary(const OperatorMatrix& h, double t, const QuantumState& psi);

struct Collapse {
  CMatrix op;
  double rate = 0.0;  // MHz; the dissipator is scaled by 2pi * rate
};

struct LindbladOptions {
  double dt_max = 0.002;       // us
  double tolerance = 1e-7;     // allowed fidelity change between step sizes
  int max_halvings = 10;
  /// Skip step-size control and integrate once at dt_max.
  bool fixed_step = false;
};

/// RK4 integration of d rho/dt = -i[H, rho] + sum 2pi k D[c] rho. The step is
/// halved until two successive resolutions agree to options.tolerance; the
/// agreement measure is the pure-state fidelity proxy ||rho_1 - rho_2||_F^2 / 2.
DensityMatrix evolve_lindblad(const CMatrix& h, const std::vector<Collapse>& collapse, double t,
                              const DensityMatrix& rho, const LindbladOptions& options = {});

struct Segment {
  CMatrix h;
  double duration = 0.0;  // us
};

struct Observable {
  std::string name;
  CMatrix op;  // Hermitian
};

struct Sample {
  double t = 0.0;
  cplx alpha{0.0, 0.0};  // <a>
  double n = 0.0;        // <a+ a>
  double leakage = 0.0;  // tail population
  std::vector<double> values;  // one per requested observable
};

struct EvolutionResult {
  StateLike final_state;
  std::vector<Sample> samples;
  std::vector<std::string> observable_names;
  double leakage_max = 0.0;
  bool leakage_flagged = false;
};

/// Unitary evolution through a piecewise-constant Hamiltonian sequence with
/// samples at t = 0, sample_dt, 2 sample_dt, ... up to the total duration.
EvolutionResult trajectory(const std::vector<Segment>& sequence, const QuantumState& psi0,
                           double sample_dt, const std::vector<Observable>& observables = {},
                           double leakage_tol = kDefaultLeakageTolerance);

/// Master equation in a frame co-moving with the classical field alpha(t).
/// The frame absorbs every linear term, which keeps the state compact in the
/// Fock basis while the lab-frame field is large. K2 = K3 = 0 is required.
struct ComovingOptions {
  double step = 0.0005;        // RK4 step, us
  int sample_every = 20;       // callback cadence in steps
};

/// Callback receives (t, frame state, alpha). The lab state is D(alpha) rho D(alpha)^dagger.
using ComovingObserver = std::function<void(double, const CMatrix&, cplx)>;

/// Returns the final frame state; the final alpha is written to alpha_out when set.
CMatrix evolve_comoving_lindblad(const OscillatorParams& osc, const DriveParams& drive,
                                 const CMatrix& rho0, cplx alpha0, double t_total,
                                 const ComovingOptions& options, const ComovingObserver& observer,
                                 cplx* alpha_out = nullptr);

}  // namespace kerrsqueeze
