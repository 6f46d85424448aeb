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

#include "kerrsqueeze/propagator.hpp"

#include <cstring>
#include <mutex>
#include <string>

namespace kerrsqueeze {

namespace {

CVector phases(const Eigen::VectorXd& w, double t) {
  return w.unaryExpr([t](double e) { return std::polar(1.0, -e * t); });
}

// Bound the cache so long sweeps over many distinct Hamiltonians stay flat.
constexpr std::size_t kMaxEntries = 64;

}  // namespace

CVector Eigensystem::apply(const CVector& psi, double t) const {
  if (psi.size() != v.rows()) throw DimensionMismatch("propagator/state dimension mismatch");
  const CVector c = v.adjoint() * psi;
  return v * phases(w, t).cwiseProduct(c);
}

CMatrix Eigensystem::unitary(double t) const {
  return v * phases(w, t).asDiagonal() * v.adjoint();
}

void require_hermitian(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw DimensionMismatch("Hamiltonian must be square");
  const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw InvalidParameter("Hamiltonian is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

std::uint64_t content_hash(const CMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  const Eigen::Index shape[2] = {m.rows(), m.cols()};
  mix(shape, sizeof(shape));
  mix(m.data(), sizeof(cplx) * static_cast<std::size_t>(m.size()));
  return h;
}

Eigensystem diagonalize(const CMatrix& h) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return Eigensystem{es.eigenvalues(), es.eigenvectors()};
}

std::shared_ptr<const Eigensystem> PropagatorCache::get(const CMatrix& h) {
  const std::uint64_t key = content_hash(h);
  {
    std::shared_lock lock(mutex_);
    auto [lo, hi] = entries_.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      if (it->second.first.rows() == h.rows() && it->second.first == h) return it->second.second;
    }
  }
  auto sys = std::make_shared<const Eigensystem>(diagonalize(h));
  std::unique_lock lock(mutex_);
  if (entries_.size() >= kMaxEntries) entries_.clear();
  entries_.emplace(key, std::make_pair(h, sys));
  return sys;
}

std::size_t PropagatorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void PropagatorCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

PropagatorCache& PropagatorCache::global() {
  static PropagatorCache cache;
  return cache;
}

}  // namespace kerrsqueeze
