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

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace kerrsqueeze {

inline constexpr double kDbPerNeper = 8.685889638065035;  // 20 log10(e)

/// 20 log10(e^{|xi|}). Throws InvalidParameter for negative input.
double squeezing_level_db(double xi_abs);

/// Means and covariance of x = (a + a+)/2, p = (a - a+)/2i.
struct QuadratureMoments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
};
QuadratureMoments quadrature_moments(const StateLike& state);

/// Squeezing read off the quadrature covariance: |xi| = -ln(4 v_min)/2, where
/// v_min is the smallest principal variance. long_axis is the phase-space
/// angle of the anti-squeezed direction and phi = 2 long_axis - pi is the
/// matching squeeze phase.
struct VarianceSqueezing {
  double xi_abs = 0.0;
  double phi = 0.0;
  double long_axis = 0.0;
  double var_min = 0.25;
  double var_max = 0.25;
};
VarianceSqueezing variance_squeezing(const StateLike& state);

/// Fisher information of the x marginal for displacement estimation:
/// sum_x (d ln P / dx)^2 P dx with central differences; bins whose P (or a
/// neighbour) falls below p_floor are excluded.
double fisher_information(const WignerGrid& grid, double p_floor = 1e-12);

/// log2 of the integral of |W|.
double wigner_log_negativity(const WignerGrid& grid);

}  // namespace kerrsqueeze
