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

#include "kerrsqueeze/mle.hpp"

#include <algorithm>
#include <cmath>

namespace kerrsqueeze {

namespace {

// Each sample's Wigner basis matrix B_i, flattened so that predictions for all
// samples are one matrix-vector product: W_i = Re sum_k Bt_ik vec(rho)_k.
struct Design {
  CMatrix bt;  // rows: samples, cols: dim^2 (column-major vec of B_i^T)
  Eigen::VectorXd data;

  Eigen::VectorXd predict(const CMatrix& rho) const {
    const Eigen::Map<const CVector> v(rho.data(), rho.size());
    return (bt * v).real();
  }

  // Gradient of -sum r_i^2 / 2 sigma^2 wrt rho, as a Hermitian matrix.
  CMatrix gradient(const Eigen::VectorXd& resid, Eigen::Index dim) const {
    const CVector g = bt.adjoint() * resid.cast<cplx>();
    CMatrix gm = Eigen::Map<const CMatrix>(g.data(), dim, dim);
    return 0.5 * (gm + gm.adjoint()).eval();
  }
};

}  // namespace

std::vector<WignerSample> samples_from_grid(const WignerGrid& grid) {
  std::vector<WignerSample> out;
  out.reserve(static_cast<std::size_t>(grid.values.size()));
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      out.push_back({cplx(grid.x_values[i], grid.p_values[j]), grid.values(i, j)});
    }
  }
  return out;
}

MleResult mle_reconstruct(const std::vector<WignerSample>& samples, Eigen::Index dim,
                          const MleOptions& options) {
  if (dim < 2) throw InvalidDimension("reconstruction dimension must be >= 2");
  const auto need = static_cast<std::size_t>(dim * dim);
  if (samples.size() < need) {
    throw UnderDetermined("reconstruction needs at least " + std::to_string(need) +
                          " samples for dim " + std::to_string(dim) + ", got " +
                          std::to_string(samples.size()));
  }
  Design d;
  d.bt.resize(static_cast<Eigen::Index>(samples.size()), dim * dim);
  d.data.resize(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    // Tr(rho B) = sum_{mn} rho_mn B_nm = vec(rho) . vec(B^T)
    const CMatrix bt = wigner_basis(samples[i].alpha, dim).transpose();
    d.bt.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const CVector>(bt.data(), bt.size());
    d.data[static_cast<Eigen::Index>(i)] = samples[i].w;
  }

  const double inv_var = 1.0 / (options.sigma * options.sigma);
  const auto loglik = [&](const CMatrix& rho, Eigen::VectorXd* resid) {
    const Eigen::VectorXd r = d.data - d.predict(rho);
    if (resid) *resid = r;
    return -0.5 * inv_var * r.squaredNorm();
  };

  CMatrix rho = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  Eigen::VectorXd resid;
  double ll = loglik(rho, &resid);
  MleResult out{DensityMatrix(rho), {ll}, 0};
  double eps = 1.0;
  const CMatrix id = CMatrix::Identity(dim, dim);
  for (int it = 0; it < options.max_iterations; ++it) {
    CMatrix g = inv_var * d.gradient(resid, dim);
    // Normalize so eps is a dimensionless dilution.
    const double gscale = g.cwiseAbs().maxCoeff();
    if (!(gscale > 0.0)) break;
    g /= gscale;
    bool accepted = false;
    double ll_new = ll;
    CMatrix trial;
    Eigen::VectorXd trial_resid;
    for (int tries = 0; tries < 40; ++tries) {
      const CMatrix r = id + eps * g;
      trial = r * rho * r.adjoint();
      trial = 0.5 * (trial + trial.adjoint()).eval();
      trial /= trial.trace().real();
      ll_new = loglik(trial, &trial_resid);
      if (ll_new >= ll) {
        accepted = true;
        break;
      }
      eps *= 0.5;
    }
    if (!accepted) break;
    const double gain = ll_new - ll;
    rho = std::move(trial);
    resid = std::move(trial_resid);
    ll = ll_new;
    out.log_likelihood.push_back(ll);
    out.iterations = it + 1;
    eps = std::min(eps * 1.5, 1e3);
    if (gain <= options.tolerance * std::max(1.0, std::abs(ll))) break;
  }

  // Final projection onto the PSD unit-trace cone.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  out.rho = DensityMatrix(std::move(rho));
  return out;
}

}  // namespace kerrsqueeze
