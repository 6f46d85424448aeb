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

#include "kerrsqueeze/metrics.hpp"

#include <cmath>

namespace kerrsqueeze {

double squeezing_level_db(double xi_abs) {
  if (!(xi_abs >= 0.0)) throw InvalidParameter("|xi| must be non-negative");
  return kDbPerNeper * xi_abs;
}

QuadratureMoments quadrature_moments(const StateLike& state) {
  const auto expect = [&](const CMatrix& op) {
    return std::visit([&](const auto& s) { return s.expect_complex(op); }, state);
  };
  const Eigen::Index dim = std::visit([](const auto& s) { return s.dim(); }, state);
  const CMatrix a = annihilation(dim);
  const cplx ma = expect(a);
  const cplx ma2 = expect(a * a);
  // <a+ a> from the diagonal keeps the truncation edge consistent with a a+
  const double mn = expect(number_operator(dim)).real();
  QuadratureMoments m;
  m.mean_x = ma.real();
  m.mean_p = ma.imag();
  // x = (a + a+)/2, p = (a - a+)/2i, with [a, a+] = 1 in the untruncated algebra
  const double xx = 0.25 * (2.0 * ma2.real() + 2.0 * mn + 1.0);
  const double pp = 0.25 * (-2.0 * ma2.real() + 2.0 * mn + 1.0);
  const double xp = 0.5 * ma2.imag();
  m.covariance(0, 0) = xx - m.mean_x * m.mean_x;
  m.covariance(1, 1) = pp - m.mean_p * m.mean_p;
  m.covariance(0, 1) = m.covariance(1, 0) = xp - m.mean_x * m.mean_p;
  return m;
}

VarianceSqueezing variance_squeezing(const StateLike& state) {
  const QuadratureMoments m = quadrature_moments(state);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.covariance);
  VarianceSqueezing v;
  v.var_min = es.eigenvalues()[0];
  v.var_max = es.eigenvalues()[1];
  if (!(v.var_min > 0.0)) throw Error("quadrature covariance is not positive definite");
  v.xi_abs = -0.5 * std::log(4.0 * v.var_min);
  const Eigen::Vector2d lv = es.eigenvectors().col(1);
  v.long_axis = std::atan2(lv[1], lv[0]);
  if (v.long_axis < 0.0) v.long_axis += kPi;
  if (v.long_axis >= kPi) v.long_axis -= kPi;
  v.phi = std::fmod(2.0 * v.long_axis - kPi + 2.0 * kTwoPi, kTwoPi);
  return v;
}

double fisher_information(const WignerGrid& grid, double p_floor) {
  const Eigen::Index nx = grid.values.rows();
  if (nx < 3) throw InvalidParameter("Fisher information needs at least 3 x points");
  const Eigen::VectorXd px = grid.values.rowwise().sum() * grid.dp;
  double info = 0.0;
  for (Eigen::Index i = 1; i + 1 < nx; ++i) {
    if (px[i] < p_floor || px[i - 1] < p_floor || px[i + 1] < p_floor) continue;
    const double dlog = (std::log(px[i + 1]) - std::log(px[i - 1])) / (2.0 * grid.dx);
    info += dlog * dlog * px[i] * grid.dx;
  }
  return info;
}

double wigner_log_negativity(const WignerGrid& grid) {
  return std::log2(grid.values.cwiseAbs().sum() * grid.dx * grid.dp);
}

}  // namespace kerrsqueeze
