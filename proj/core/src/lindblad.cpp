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

#include <cmath>

#include "kerrsqueeze/evolve.hpp"

namespace kerrsqueeze {

namespace {

// Pentadiagonal Hermitian operator: diagonal d0, first and second
// superdiagonals u1 (H_{n,n+1}) and u2 (H_{n,n+2}).
struct Banded {
  Eigen::VectorXd d0;
  CVector u1;
  CVector u2;

  CMatrix apply(const CMatrix& rho) const {
    const Eigen::Index n = rho.rows();
    CMatrix out = d0.asDiagonal() * rho;
    out.topRows(n - 1).noalias() += u1.asDiagonal() * rho.bottomRows(n - 1);
    out.bottomRows(n - 1).noalias() += u1.conjugate().asDiagonal() * rho.topRows(n - 1);
    out.topRows(n - 2).noalias() += u2.asDiagonal() * rho.bottomRows(n - 2);
    out.bottomRows(n - 2).noalias() += u2.conjugate().asDiagonal() * rho.topRows(n - 2);
    return out;
  }
};

class ComovingModel {
 public:
  ComovingModel(const OscillatorParams& osc, const DriveParams& drive, Eigen::Index dim)
      : osc_(osc), drive_(drive), dim_(dim) {
    nvec_ = Eigen::VectorXd::LinSpaced(dim, 0.0, static_cast<double>(dim - 1));
    sq1_ = CVector(dim - 1);
    sq2_ = CVector(dim - 2);
    cub_ = CVector(dim - 1);
    for (Eigen::Index n = 0; n + 1 < dim; ++n) {
      sq1_[n] = std::sqrt(static_cast<double>(n + 1));
      cub_[n] = static_cast<double>(n) * std::sqrt(static_cast<double>(n + 1));
    }
    for (Eigen::Index n = 0; n + 2 < dim; ++n) {
      sq2_[n] = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
    }
    gamma_ = kTwoPi * osc.kappa_c;
  }

  Banded hamiltonian(cplx alpha) const {
    const double K = osc_.K;
    const double a2 = std::norm(alpha);
    Banded b;
    b.d0 = kTwoPi * ((drive_.delta_d - 2.0 * K * a2) * nvec_ -
                     (K / 2.0) * nvec_.cwiseProduct((nvec_.array() - 1.0).matrix()));
    // -K alpha a+^2 a + h.c.: H_{n,n+1} = conj(-K alpha) n sqrt(n+1)
    b.u1 = kTwoPi * std::conj(-K * alpha) * cub_;
    // -K/2 alpha^2 a+^2 + h.c.: H_{n,n+2} = conj(-K/2 alpha^2) sqrt((n+1)(n+2))
    b.u2 = kTwoPi * std::conj(-K / 2.0 * alpha * alpha) * sq2_;
    return b;
  }

  cplx alpha_dot(cplx alpha) const {
    const cplx drive = drive_.omega_d * std::polar(1.0, -drive_.phase);
    return cplx(0.0, -kTwoPi) *
               (drive_.delta_d * alpha - osc_.K * std::norm(alpha) * alpha + drive) -
           0.5 * gamma_ * alpha;
  }

  CMatrix rhs(const CMatrix& rho, cplx alpha) const {
    const CMatrix hr = hamiltonian(alpha).apply(rho);
    CMatrix out = cplx(0.0, -1.0) * (hr - hr.adjoint());
    if (gamma_ > 0.0) {
      const Eigen::Index n = dim_;
      // a rho a+ has elements sqrt(m+1) sqrt(k+1) rho_{m+1,k+1}
      out.topLeftCorner(n - 1, n - 1).noalias() +=
          gamma_ * (sq1_.asDiagonal() * rho.bottomRightCorner(n - 1, n - 1) *
                    sq1_.asDiagonal());
      out -= 0.5 * gamma_ * (nvec_.asDiagonal() * rho + rho * nvec_.asDiagonal());
    }
    return out;
  }

 private:
  OscillatorParams osc_;
  DriveParams drive_;
  Eigen::Index dim_;
  Eigen::VectorXd nvec_;
  CVector sq1_, sq2_, cub_;
  double gamma_ = 0.0;
};

}  // namespace

CMatrix evolve_comoving_lindblad(const OscillatorParams& osc, const DriveParams& drive,
                                 const CMatrix& rho0, cplx alpha0, double t_total,
                                 const ComovingOptions& options, const ComovingObserver& observer,
                                 cplx* alpha_out) {
  osc.validate();
  DriveParams d = drive;
  d.validate();
  if (osc.K2 != 0.0 || osc.K3 != 0.0) {
    throw InvalidParameter("co-moving master equation supports first-order Kerr only");
  }
  if (rho0.rows() < 3 || rho0.rows() != rho0.cols()) {
    throw InvalidDimension("co-moving master equation needs a square state with dim >= 3");
  }
  if (!(options.step > 0.0) || options.sample_every < 1 || t_total < 0.0) {
    throw InvalidParameter("invalid co-moving integration options");
  }
  const ComovingModel model(osc, d, rho0.rows());
  const long steps = static_cast<long>(std::llround(t_total / options.step));
  const double h = steps > 0 ? t_total / static_cast<double>(steps) : 0.0;
  CMatrix rho = rho0;
  cplx alpha = alpha0;
  if (observer) observer(0.0, rho, alpha);
  for (long s = 0; s < steps; ++s) {
    const CMatrix k1 = model.rhs(rho, alpha);
    const cplx l1 = model.alpha_dot(alpha);
    const CMatrix k2 = model.rhs(rho + 0.5 * h * k1, alpha + 0.5 * h * l1);
    const cplx l2 = model.alpha_dot(alpha + 0.5 * h * l1);
    const CMatrix k3 = model.rhs(rho + 0.5 * h * k2, alpha + 0.5 * h * l2);
    const cplx l3 = model.alpha_dot(alpha + 0.5 * h * l2);
    const CMatrix k4 = model.rhs(rho + h * k3, alpha + h * l3);
    const cplx l4 = model.alpha_dot(alpha + h * l3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    alpha += (h / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
    if (observer && (s + 1) % options.sample_every == 0) {
      observer(static_cast<double>(s + 1) * h, rho, alpha);
    }
  }
  if (alpha_out) *alpha_out = alpha;
  return rho;
}

}  // namespace kerrsqueeze
