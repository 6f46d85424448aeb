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

#include "kerrsqueeze/hamiltonian.hpp"

#include <array>
#include <cmath>
#include <string>

namespace kerrsqueeze {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be finite");
}

double binomial(int k, int i) {
  double c = 1.0;
  for (int j = 1; j <= i; ++j) c = c * (k - i + j) / j;
  return c;
}

// Coefficients of the Kerr series sum_k c_k a+^k a^k, k = 1..4.
std::array<double, 5> kerr_series(const OscillatorParams& osc, double delta) {
  return {0.0, delta, -osc.K / 2.0, -osc.K2 / 6.0, -osc.K3 / 24.0};
}

void symmetrize(CMatrix& h) { h = 0.5 * (h + h.adjoint()).eval(); }

}  // namespace

void OscillatorParams::validate() const {
  require_finite(K, "K");
  require_finite(K2, "K2");
  require_finite(K3, "K3");
  require_finite(kappa_c, "kappa_c");
  if (K2 < 0.0 || K3 < 0.0 || kappa_c < 0.0) {
    throw InvalidParameter("K2, K3 and kappa_c must be non-negative");
  }
}

void DriveParams::validate() {
  require_finite(delta_d, "delta_d");
  require_finite(omega_d, "omega_d");
  require_finite(phase, "phase");
  phase = std::fmod(phase, kTwoPi);
  if (phase < 0.0) phase += kTwoPi;
}

void JcParams::validate() const {
  require_finite(cavity_freq, "cavity_freq");
  require_finite(qubit_freq, "qubit_freq");
  require_finite(eta_q, "eta_q");
  require_finite(g_qc, "g_qc");
  if (qubit_levels < 2) throw InvalidParameter("qubit_levels must be >= 2");
  if (g_qc < 0.0) throw InvalidParameter("g_qc must be non-negative");
}

OperatorMatrix build_driven_kerr(const OscillatorParams& osc, const DriveParams& drive,
                                 Eigen::Index dim) {
  osc.validate();
  DriveParams d = drive;
  d.validate();
  const auto c = kerr_series(osc, d.delta_d);
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int k = 1; k <= 4; ++k) {
    if (c[k] != 0.0) h += c[k] * normal_ordered(k, k, dim);
  }
  if (d.omega_d != 0.0) {
    const CMatrix a = annihilation(dim);
    h += d.omega_d * (std::polar(1.0, d.phase) * a + std::polar(1.0, -d.phase) * a.adjoint());
  }
  h *= kTwoPi;
  symmetrize(h);
  return OperatorMatrix{std::move(h), true, std::nullopt};
}

DisplacedHamiltonian build_displaced_kerr(const OscillatorParams& osc,
                                          const DriveParams& drive,
                                          const FrameParams& frame, Eigen::Index dim) {
  osc.validate();
  DriveParams d = drive;
  d.validate();
  const cplx beta = frame.beta;
  const cplx beta_c = std::conj(beta);
  const auto c = kerr_series(osc, d.delta_d);

  // (a+ + beta^*)^k (a + beta)^k = sum_ij C(k,i) C(k,j) beta^*^{k-i} beta^{k-j} a+^i a^j
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int k = 1; k <= 4; ++k) {
    if (c[k] == 0.0) continue;
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) {
        if (i == 0 && j == 0) continue;  // scalar offset dropped
        const cplx coeff = c[k] * binomial(k, i) * binomial(k, j) *
                           std::pow(beta_c, k - i) * std::pow(beta, k - j);
        if (coeff == cplx(0.0, 0.0)) continue;
        h += coeff * normal_ordered(i, j, dim);
      }
    }
  }
  if (d.omega_d != 0.0) {
    // the drive is linear, so displacement only adds a scalar
    const CMatrix a = annihilation(dim);
    h += d.omega_d * (std::polar(1.0, d.phase) * a + std::polar(1.0, -d.phase) * a.adjoint());
  }
  h *= kTwoPi;
  symmetrize(h);

  DisplacedHamiltonian out{OperatorMatrix{std::move(h), true, std::nullopt}, std::nullopt};
  if (beta != cplx(0.0, 0.0) && osc.K != 0.0) {
    const double r = (d.delta_d / osc.K + (d.omega_d * std::polar(1.0, -d.phase) / (osc.K * beta)).real() -
                      std::norm(beta));
    out.blockade_r = r;
  } else if (d.omega_d == 0.0 && osc.K != 0.0) {
    out.blockade_r = d.delta_d / osc.K;
  }
  return out;
}

OperatorMatrix build_kpo(const OscillatorParams& osc, const FrameParams& frame,
                         double delta_prime, Eigen::Index dim) {
  osc.validate();
  const cplx beta = frame.beta;
  CMatrix h = delta_prime * normal_ordered(1, 1, dim) - (osc.K / 2.0) * normal_ordered(2, 2, dim);
  h -= (osc.K / 2.0) * (beta * beta * normal_ordered(2, 0, dim) +
                        std::conj(beta * beta) * normal_ordered(0, 2, dim));
  h *= kTwoPi;
  symmetrize(h);
  return OperatorMatrix{std::move(h), true, std::nullopt};
}

OperatorMatrix build_jc(const JcParams& jc, Eigen::Index cavity_dim) {
  jc.validate();
  if (cavity_dim < 2) throw InvalidDimension("cavity_dim must be >= 2");
  const Eigen::Index q = jc.qubit_levels;
  const Eigen::Index total = cavity_dim * q;
  if (total > kMaxJcDim) {
    throw InvalidDimension("two-mode dimension " + std::to_string(total) + " exceeds " +
                           std::to_string(kMaxJcDim));
  }
  const CMatrix a = annihilation(cavity_dim);
  const CMatrix b = annihilation(q);
  const CMatrix ic = CMatrix::Identity(cavity_dim, cavity_dim);
  const CMatrix iq = CMatrix::Identity(q, q);
  const auto kron = [](const CMatrix& x, const CMatrix& y) {
    CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
      }
    }
    return out;
  };
  const CMatrix A = kron(a, iq);
  const CMatrix B = kron(ic, b);
  const CMatrix bd2b2 = kron(ic, normal_ordered(2, 2, q));
  CMatrix h = jc.cavity_freq * A.adjoint() * A + jc.qubit_freq * B.adjoint() * B -
              (jc.eta_q / 2.0) * bd2b2 + jc.g_qc * (A.adjoint() * B + A * B.adjoint());
  h *= kTwoPi;
  symmetrize(h);
  return OperatorMatrix{std::move(h), true, std::nullopt};
}

}  // namespace kerrsqueeze
