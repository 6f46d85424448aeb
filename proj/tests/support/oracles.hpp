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

// Reference implementations used only by tests. They take deliberately
// different routes from the library: matrix exponentials through Eigen's
// MatrixFunctions module, padded bases for truncation-free operator products,
// and closed forms where they exist.

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

#include "kerrsqueeze/fock.hpp"

namespace kerrsqueeze::oracle {

inline CMatrix lowering(Eigen::Index dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// exp(beta a+ - beta* a) via the scaling-and-squaring Pade exponential.
inline CMatrix displacement(cplx beta, Eigen::Index dim) {
  const CMatrix a = lowering(dim);
  const CMatrix g = beta * a.adjoint() - std::conj(beta) * a;
  return g.exp();
}

/// exp((xi* a^2 - xi a+^2) / 2).
inline CMatrix squeeze(cplx xi, Eigen::Index dim) {
  const CMatrix a = lowering(dim);
  const CMatrix g = 0.5 * (std::conj(xi) * a * a - xi * a.adjoint() * a.adjoint());
  return g.exp();
}

/// e^{-iHt} via the matrix exponential.
inline CMatrix propagator(const CMatrix& h, double t) {
  const CMatrix g = cplx(0.0, -t) * h;
  return g.exp();
}

/// Driven Kerr Hamiltonian written out term by term from dense matrix powers.
inline CMatrix driven_kerr(double delta, double omega, double phase, double k, double k2, double k3,
                           Eigen::Index dim) {
  const CMatrix a = lowering(dim);
  const CMatrix ad = a.adjoint();
  const CMatrix n = ad * a;
  const CMatrix kerr = ad * ad * a * a;
  const CMatrix kerr2 = ad * ad * ad * a * a * a;
  const CMatrix kerr3 = ad * ad * ad * ad * a * a * a * a;
  const cplx e = std::polar(1.0, phase);
  const CMatrix h = delta * n - (k / 2.0) * kerr - (k2 / 6.0) * kerr2 - (k3 / 24.0) * kerr3 +
                    omega * (e * a + std::conj(e) * ad);
  return kTwoPi * h;
}

/// Coherent-state amplitudes from the Poisson closed form.
inline CVector coherent(cplx beta, Eigen::Index dim) {
  CVector c(dim);
  c[0] = std::exp(-0.5 * std::norm(beta));
  for (Eigen::Index n = 1; n < dim; ++n) c[n] = c[n - 1] * beta / std::sqrt(static_cast<double>(n));
  return c;
}

inline double overlap_fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace kerrsqueeze::oracle
