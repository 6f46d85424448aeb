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

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <unordered_map>

#include "kerrsqueeze/fock.hpp"

namespace kerrsqueeze {

/// Eigendecomposition H = V diag(w) V^dagger of a Hermitian matrix.
struct Eigensystem {
  Eigen::VectorXd w;
  CMatrix v;

  /// e^{-iHt} psi
  CVector apply(const CVector& psi, double t) const;
  /// e^{-iHt} as a dense matrix
  CMatrix unitary(double t) const;
};

/// Throws InvalidParameter when max |H - H^dagger| exceeds tol.
void require_hermitian(const CMatrix& h, double tol = 1e-10);

/// FNV-1a hash of the raw matrix contents (shape included).
std::uint64_t content_hash(const CMatrix& m);

/// Thread-safe cache of eigendecompositions keyed by matrix content. Readers
/// share the lock; insertion is exclusive.
class PropagatorCache {
 public:
  std::shared_ptr<const Eigensystem> get(const CMatrix& h);
  std::size_t size() const;
  void clear();

  static PropagatorCache& global();

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_multimap<std::uint64_t, std::pair<CMatrix, std::shared_ptr<const Eigensystem>>>
      entries_;
};

/// Uncached eigendecomposition.
Eigensystem diagonalize(const CMatrix& h);

}  // namespace kerrsqueeze
