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

#include "kerrsqueeze/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kerrsqueeze {

namespace {

Eigen::Index tail_start(Eigen::Index dim) {
  // top 10% of indices, at least two so both photon-number parities are seen
  const auto count = std::min<Eigen::Index>(dim - 1, std::max<Eigen::Index>(2, dim / 10));
  return dim - count;
}

void require_dim(Eigen::Index dim) {
  if (dim < 2) {
    throw InvalidDimension("basis dimension must be >= 2, got " +
                           std::to_string(dim));
  }
}

Eigen::Index padded(Eigen::Index dim) { return dim + std::max<Eigen::Index>(40, dim / 2); }

}  // namespace

double OperatorMatrix::hermiticity_defect() const {
  return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
}

QuantumState::QuantumState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  const double norm = amps_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidParameter("state vector has zero or non-finite norm");
  }
  amps_ /= norm;
}

double QuantumState::tail_population() const {
  const auto start = tail_start(dim());
  return amps_.tail(dim() - start).squaredNorm();
}

void QuantumState::check_leakage(double tol) const {
  const double tail = tail_population();
  if (tail > tol) {
    throw TruncationFault("tail population " + std::to_string(tail) +
                              " exceeds leakage tolerance",
                          tail);
  }
}

double QuantumState::expect(const CMatrix& op) const {
  return expect_complex(op).real();
}

cplx QuantumState::expect_complex(const CMatrix& op) const {
  if (op.rows() != dim()) throw DimensionMismatch("operator/state dimension mismatch");
  return amps_.dot(op * amps_);
}

double QuantumState::mean_photon_number() const {
  double n = 0.0;
  for (Eigen::Index k = 0; k < dim(); ++k) n += static_cast<double>(k) * std::norm(amps_[k]);
  return n;
}

DensityMatrix::DensityMatrix(CMatrix elements, bool validate)
    : rho_(std::move(elements)) {
  if (rho_.rows() != rho_.cols()) throw DimensionMismatch("density matrix must be square");
  if (!validate) return;
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-8) {
    throw InvalidParameter("density matrix is not Hermitian (defect " +
                           std::to_string(herm) + ")");
  }
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  if (std::abs(trace() - 1.0) > 1e-8) {
    throw InvalidParameter("density matrix trace " + std::to_string(trace()) +
                           " differs from 1");
  }
  if (min_eigenvalue() < -1e-8) {
    throw InvalidParameter("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_state(const QuantumState& psi) {
  CMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(std::move(rho), false);
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::tail_population() const {
  const auto start = tail_start(dim());
  double t = 0.0;
  for (Eigen::Index k = start; k < dim(); ++k) t += rho_(k, k).real();
  return t;
}

double DensityMatrix::expect(const CMatrix& op) const { return expect_complex(op).real(); }

cplx DensityMatrix::expect_complex(const CMatrix& op) const {
  if (op.rows() != dim()) throw DimensionMismatch("operator/state dimension mismatch");
  // Tr(rho A) without forming the product
  return (rho_.transpose().cwiseProduct(op)).sum();
}

CMatrix annihilation(Eigen::Index dim) {
  require_dim(dim);
  CMatrix a = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

std::pair<OperatorMatrix, OperatorMatrix> ladder_operators(Eigen::Index dim) {
  CMatrix a = annihilation(dim);
  CMatrix ad = a.adjoint();
  return {OperatorMatrix{std::move(a), false, std::nullopt},
          OperatorMatrix{std::move(ad), false, std::nullopt}};
}

CMatrix number_operator(Eigen::Index dim) {
  require_dim(dim);
  CMatrix n = CMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

CMatrix normal_ordered(int i, int j, Eigen::Index dim) {
  require_dim(dim);
  if (i < 0 || j < 0) throw InvalidParameter("negative ladder power");
  CMatrix op = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = j; n < dim; ++n) {
    const Eigen::Index m = n - j + i;
    if (m >= dim) continue;
    // a^j |n> = sqrt(n!/(n-j)!) |n-j>, then a^dagger^i raises by i
    double amp = 1.0;
    for (Eigen::Index k = n - j + 1; k <= n; ++k) amp *= std::sqrt(static_cast<double>(k));
    for (Eigen::Index k = n - j + 1; k <= m; ++k) amp *= std::sqrt(static_cast<double>(k));
    op(m, n) = amp;
  }
  return op;
}

CMatrix exp_anti_hermitian(const CMatrix& generator) {
  // G = -i H with H = iG Hermitian, so exp(G) = V exp(-i w) V^dagger
  const CMatrix h = cplx(0.0, 1.0) * generator;
  const CMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hs);
  const CVector phases =
      es.eigenvalues().unaryExpr([](double w) { return std::exp(cplx(0.0, -w)); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

OperatorMatrix displacement_operator(cplx beta, Eigen::Index dim) {
  const CMatrix a = annihilation(dim);
  const CMatrix gen = beta * a.adjoint() - std::conj(beta) * a;
  OperatorMatrix out{exp_anti_hermitian(gen), false, std::nullopt};
  const double r = std::abs(beta);
  if (r * r + 6.0 * r >= static_cast<double>(dim)) {
    out.truncation_warning = "displacement |beta|=" + std::to_string(r) +
                             " is near the cutoff dim=" + std::to_string(dim);
  }
  return out;
}

OperatorMatrix squeeze_operator(cplx xi, Eigen::Index dim) {
  const CMatrix a = annihilation(dim);
  const CMatrix a2 = a * a;
  const CMatrix gen = 0.5 * (std::conj(xi) * a2 - xi * a2.adjoint());
  OperatorMatrix out{exp_anti_hermitian(gen), false, std::nullopt};
  const QuantumState vac_image(out.elements.col(0));
  const double tail = vac_image.tail_population();
  if (tail > kDefaultLeakageTolerance) {
    throw TruncationFault("squeeze |xi|=" + std::to_string(std::abs(xi)) +
                              " leaks " + std::to_string(tail) + " past dim=" +
                              std::to_string(dim),
                          tail);
  }
  return out;
}

QuantumState squeezed_coherent_state(cplx xi, cplx alpha, Eigen::Index dim) {
  require_dim(dim);
  // D(alpha)S(xi)|0> is annihilated by mu (a - alpha) + nu (a^dagger - alpha^*)
  const double r = std::abs(xi);
  const double phi = std::arg(xi);
  const double mu = std::cosh(r);
  const cplx nu = std::polar(std::sinh(r), phi);
  const cplx drive = mu * alpha + nu * std::conj(alpha);
  CVector c = CVector::Zero(dim);
  c[0] = 1.0;
  if (dim > 1) c[1] = drive * c[0] / mu;
  for (Eigen::Index n = 1; n + 1 < dim; ++n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double sn1 = std::sqrt(static_cast<double>(n + 1));
    c[n + 1] = (drive * c[n] - nu * sn * c[n - 1]) / (mu * sn1);
  }
  return QuantumState(std::move(c));
}

QuantumState make_state(const StateSpec& spec, Eigen::Index dim, double leakage_tol) {
  require_dim(dim);
  return std::visit(
      [&](const auto& s) -> QuantumState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FockSpec>) {
          if (s.n < 0 || s.n >= dim) {
            throw InvalidParameter("Fock index " + std::to_string(s.n) +
                                   " outside basis of size " + std::to_string(dim));
          }
          CVector v = CVector::Zero(dim);
          v[s.n] = 1.0;
          return QuantumState(std::move(v));
        } else if constexpr (std::is_same_v<T, CoherentSpec>) {
          const Eigen::Index big = padded(dim);
          CVector v(big);
          v[0] = std::exp(-0.5 * std::norm(s.beta));
          for (Eigen::Index n = 1; n < big; ++n) {
            v[n] = v[n - 1] * s.beta / std::sqrt(static_cast<double>(n));
          }
          const double lost = v.tail(big - dim).squaredNorm();
          if (lost > leakage_tol) {
            throw TruncationFault("coherent state |beta|=" + std::to_string(std::abs(s.beta)) +
                                      " does not fit in dim=" + std::to_string(dim),
                                  lost);
          }
          return QuantumState(v.head(dim));
        } else {
          if (s.n < 0 || s.n >= dim) {
            throw InvalidParameter("Fock index " + std::to_string(s.n) +
                                   " outside basis of size " + std::to_string(dim));
          }
          if (s.xi == cplx(0.0, 0.0)) {
            CVector v = CVector::Zero(dim);
            v[s.n] = 1.0;
            return QuantumState(std::move(v));
          }
          const Eigen::Index big = padded(dim);
          const CMatrix a = annihilation(big);
          const CMatrix a2 = a * a;
          const CMatrix gen = 0.5 * (std::conj(s.xi) * a2 - s.xi * a2.adjoint());
          const CVector v = exp_anti_hermitian(gen).col(s.n);
          const double lost = v.tail(big - dim).squaredNorm();
          if (lost > leakage_tol) {
            throw TruncationFault("squeezed Fock state |xi|=" + std::to_string(std::abs(s.xi)) +
                                      " does not fit in dim=" + std::to_string(dim),
                                  lost);
          }
          return QuantumState(v.head(dim));
        }
      },
      spec);
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const QuantumState& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  const cplx v = a.amplitudes().dot(b.elements() * a.amplitudes());
  return std::clamp(v.real(), 0.0, 1.0);
}

double fidelity(const DensityMatrix& a, const QuantumState& b) { return fidelity(b, a); }

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> ea(a.elements());
  const Eigen::VectorXd wa = ea.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix sqrt_a = ea.eigenvectors() * wa.asDiagonal() * ea.eigenvectors().adjoint();
  CMatrix m = sqrt_a * b.elements() * sqrt_a;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> em(m, Eigen::EigenvaluesOnly);
  const double tr = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double fidelity(const StateLike& a, const StateLike& b) {
  return std::visit([](const auto& x, const auto& y) { return fidelity(x, y); }, a, b);
}

QuantumState rotate(const QuantumState& psi, double theta) {
  CVector v = psi.amplitudes();
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    v[n] *= std::polar(1.0, theta * static_cast<double>(n));
  }
  return QuantumState(std::move(v));
}

Eigen::Index suggest_dim_coherent(cplx beta) {
  const double r = std::abs(beta);
  return static_cast<Eigen::Index>(std::ceil(r * r + 6.0 * r + 20.0));
}

Eigen::Index suggest_dim_squeezed(cplx xi) {
  return static_cast<Eigen::Index>(std::ceil(4.0 * std::exp(2.0 * std::abs(xi)) + 20.0));
}

}  // namespace kerrsqueeze
