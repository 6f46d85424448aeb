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
#include <string>

#include "kerrsqueeze/fock.hpp"

namespace kerrsqueeze {

// Phase-space convention: alpha = x + i p with x = <(a + a+)/2>, so the vacuum
// has W(0) = 2/pi and quadrature variances 1/4.

struct GridSpec {
  double x_min = -3.0, x_max = 3.0;
  int nx = 81;
  double p_min = -3.0, p_max = 3.0;
  int np = 81;
};

struct WignerGrid {
  Eigen::VectorXd x_values;
  Eigen::VectorXd p_values;
  /// values(i, j) = W(x_i + i p_j)
  Eigen::MatrixXd values;
  double dx = 0.0;
  double dp = 0.0;
  /// Set when the integral differs from 1 by more than 0.01.
  std::optional<std::string> coverage_warning;

  double integral() const { return values.sum() * dx * dp; }
};

/// Matrix B(alpha) with W(alpha) = Re Tr(rho B(alpha)); the matrix elements
/// are the Wigner functions of |m><n| and are exact (no truncation).
CMatrix wigner_basis(cplx alpha, Eigen::Index dim);

double wigner_point(const CMatrix& rho, cplx alpha);
double wigner_point(const QuantumState& psi, cplx alpha);

/// Evaluates W on a rectangular grid; rows are split across workers.
WignerGrid wigner(const StateLike& state, const GridSpec& spec, int workers = 1);

/// Grid centred on (<x>, <p>) spanning nsigma standard deviations. Isotropic
/// grids use the anti-squeezed deviation on both axes; otherwise each axis
/// uses its own quadrature deviation.
GridSpec covering_grid(const StateLike& state, int points = 81, double nsigma = 5.0,
                       bool isotropic = true);

/// (2/pi) (-1)^N exp(-2|nu|^2) L_N(4|nu|^2), nu = cosh|xi| alpha^* + e^{-i phi} sinh|xi| alpha.
double analytic_squeezed_fock_wigner(cplx xi, int n, cplx alpha);

}  // namespace kerrsqueeze
