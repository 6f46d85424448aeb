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

#include <string>
#include <vector>

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace kerrsqueeze {

class UnderDetermined : public Error {
 public:
  using Error::Error;
};

struct WignerSample {
  cplx alpha{0.0, 0.0};
  double w = 0.0;
};

/// Flattens a grid into (alpha, W) samples.
std::vector<WignerSample> samples_from_grid(const WignerGrid& grid);

struct MleOptions {
  int max_iterations = 3000;
  /// Stop when the relative log-likelihood improvement falls below this.
  double tolerance = 1e-12;
  /// Assumed per-sample noise; only rescales the likelihood.
  double sigma = 0.01;
};

struct MleResult {
  DensityMatrix rho;
  /// Gaussian log-likelihood after every accepted iteration (non-decreasing).
  std::vector<double> log_likelihood;
  int iterations = 0;
};

/// Maximum-likelihood state from Wigner samples with the diluted R rho R
/// iteration, rho <- (1 + e G) rho (1 + e G) / Tr, where G is the likelihood
/// gradient. The dilution e adapts so the likelihood never decreases.
MleResult mle_reconstruct(const std::vector<WignerSample>& samples, Eigen::Index dim,
                          const MleOptions& options = {});

}  // namespace kerrsqueeze
