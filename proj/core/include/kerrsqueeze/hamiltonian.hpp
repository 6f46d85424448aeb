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

#include <optional>

#include "kerrsqueeze/fock.hpp"

namespace kerrsqueeze {

// All user-facing frequencies are ordinary frequencies in MHz; builders return
// angular Hamiltonians in rad/us. Times are in us.

struct OscillatorParams {
  double K = 0.00583;   // first-order Kerr
  double K2 = 0.0;      // second-order Kerr
  double K3 = 0.0;      // third-order Kerr
  double kappa_c = 0.0; // single-photon loss rate

  void validate() const;
};

struct DriveParams {
  double delta_d = 0.0;  // cavity minus drive frequency
  double omega_d = 0.0;  // drive amplitude
  double phase = 0.0;    // radians, normalized to [0, 2pi) by validate()

  void validate();
};

struct FrameParams {
  cplx beta{0.0, 0.0};
};

struct JcParams {
  double cavity_freq = 0.0;
  double qubit_freq = 0.0;
  double eta_q = 0.0;
  double g_qc = 0.0;
  int qubit_levels = 3;

  void validate() const;
};

/// Displaced-frame Hamiltonian plus its photon-blockade parameter r.
struct DisplacedHamiltonian {
  OperatorMatrix h;
  /// Empty when beta = 0 and the drive is on (r undefined).
  std::optional<double> blockade_r;
};

/// 2pi [Delta n - K/2 a+^2 a^2 - K2/6 a+^3 a^3 - K3/24 a+^4 a^4
///      + Omega (e^{i phase} a + e^{-i phase} a+)]
OperatorMatrix build_driven_kerr(const OscillatorParams& osc, const DriveParams& drive,
                                 Eigen::Index dim);

/// D(-beta) H_d D(beta) with the scalar offset dropped. Built term by term from
/// the normal-ordered binomial expansion, so it is exact in the truncated basis.
DisplacedHamiltonian build_displaced_kerr(const OscillatorParams& osc,
                                          const DriveParams& drive,
                                          const FrameParams& frame, Eigen::Index dim);

/// 2pi [Delta' n - K/2 a+^2 a^2 - K/2 (beta^2 a+^2 + beta^*2 a^2)].
OperatorMatrix build_kpo(const OscillatorParams& osc, const FrameParams& frame,
                         double delta_prime, Eigen::Index dim);

/// Two-mode Jaynes-Cummings Hamiltonian on cavity (x) qubit, angular units.
/// Index layout: cavity index * qubit_levels + qubit index.
OperatorMatrix build_jc(const JcParams& jc, Eigen::Index cavity_dim);

inline constexpr Eigen::Index kMaxJcDim = 2000;

}  // namespace kerrsqueeze
