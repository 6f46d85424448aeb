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

#include "kerrsqueeze/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "kerrsqueeze/metrics.hpp"

namespace kerrsqueeze {

namespace {

// Calls visit(m, n, w) for every m <= n, where 2 w is the coefficient of
// rho_{mn} (off-diagonal terms enter as 2 Re). Each diagonal offset L = n - m
// runs the forward recurrence of the normalized Laguerre functions
// f_k = sqrt(k! / (k+L)!) x^{L/2} e^{-x/2} L_k^L(x), x = 4|alpha|^2, which are
// bounded by 1 and stay accurate far out in phase space.
template <typename Visit>
void laguerre_recursion(cplx alpha, Eigen::Index dim, Visit&& visit) {
  const double x = 4.0 * std::norm(alpha);
  const double theta = std::arg(alpha);
  const double log_x = x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
  for (Eigen::Index L = 0; L < dim; ++L) {
    const double dl = static_cast<double>(L);
    double f0 = 0.0;
    if (L == 0) {
      f0 = std::exp(-0.5 * x);
    } else if (x > 0.0) {
      f0 = std::exp(0.5 * dl * log_x - 0.5 * x - 0.5 * std::lgamma(dl + 1.0));
    }
    const cplx phase = std::polar(1.0 / kPi, dl * theta);
    double f_prev = 0.0, f = f0;
    for (Eigen::Index k = 0; k + L < dim; ++k) {
      const double dk = static_cast<double>(k);
      visit(k, k + L, (k % 2 == 0 ? f : -f) * phase);
      const double next = ((2.0 * dk + 1.0 + dl - x) * f - std::sqrt(dk * (dk + dl)) * f_prev) /
                          std::sqrt((dk + 1.0) * (dk + 1.0 + dl));
      f_prev = f;
      f = next;
    }
  }
}

template <typename Elem>
double wigner_generic(cplx alpha, Eigen::Index dim, Elem&& rho_mn) {
  double w = 0.0;
  laguerre_recursion(alpha, dim, [&](Eigen::Index m, Eigen::Index n, cplx v) {
    if (m == n) {
      w += (rho_mn(m, m) * v).real();
    } else {
      w += 2.0 * (rho_mn(m, n) * v).real();
    }
  });
  return 2.0 * w;
}

Eigen::VectorXd linspace(double lo, double hi, int n) {
  if (n < 2) throw InvalidParameter("grid needs at least 2 points per axis");
  if (!(hi > lo)) throw InvalidParameter("grid bounds must satisfy min < max");
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

}  // namespace

CMatrix wigner_basis(cplx alpha, Eigen::Index dim) {
  CMatrix b = CMatrix::Zero(dim, dim);
  laguerre_recursion(alpha, dim, [&](Eigen::Index m, Eigen::Index n, cplx v) {
    b(n, m) = 2.0 * v;
    if (m != n) b(m, n) = 2.0 * std::conj(v);
  });
  return b;
}

double wigner_point(const CMatrix& rho, cplx alpha) {
  return wigner_generic(alpha, rho.rows(),
                        [&](Eigen::Index m, Eigen::Index n) { return rho(m, n); });
}

double wigner_point(const QuantumState& psi, cplx alpha) {
  const CVector& v = psi.amplitudes();
  return wigner_generic(
      alpha, psi.dim(), [&](Eigen::Index m, Eigen::Index n) { return v[m] * std::conj(v[n]); });
}

WignerGrid wigner(const StateLike& state, const GridSpec& spec, int workers) {
  WignerGrid g;
  g.x_values = linspace(spec.x_min, spec.x_max, spec.nx);
  g.p_values = linspace(spec.p_min, spec.p_max, spec.np);
  g.dx = g.x_values[1] - g.x_values[0];
  g.dp = g.p_values[1] - g.p_values[0];
  g.values = Eigen::MatrixXd::Zero(spec.nx, spec.np);

  // A pure state is expanded once so both branches share one inner loop.
  const CMatrix rho = std::visit(
      [](const auto& s) -> CMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, QuantumState>) {
          return s.amplitudes() * s.amplitudes().adjoint();
        } else {
          return s.elements();
        }
      },
      state);

  const auto fill_rows = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      for (int j = 0; j < spec.np; ++j) {
        const cplx alpha(g.x_values[i], g.p_values[j]);
        g.values(i, j) = wigner_generic(
            alpha, rho.rows(), [&](Eigen::Index m, Eigen::Index n) { return rho(m, n); });
      }
    }
  };
  const int n_workers = std::clamp(workers, 1, spec.nx);
  if (n_workers == 1) {
    fill_rows(0, spec.nx);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (spec.nx + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const int b = w * chunk;
      const int e = std::min(spec.nx, b + chunk);
      if (b < e) pool.emplace_back(fill_rows, b, e);
    }
    for (auto& t : pool) t.join();
  }
  const double integral = g.integral();
  if (std::abs(integral - 1.0) > 0.01) {
    g.coverage_warning = "Wigner grid integrates to " + std::to_string(integral) +
                         "; the grid does not cover the state";
  }
  return g;
}

GridSpec covering_grid(const StateLike& state, int points, double nsigma, bool isotropic) {
  const QuadratureMoments m = quadrature_moments(state);
  double sx = std::sqrt(std::max(m.covariance(0, 0), 1e-12));
  double sp = std::sqrt(std::max(m.covariance(1, 1), 1e-12));
  if (isotropic) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.covariance);
    sx = sp = std::sqrt(std::max(es.eigenvalues()[1], 1e-12));
  }
  GridSpec g;
  g.nx = g.np = points;
  g.x_min = m.mean_x - nsigma * sx;
  g.x_max = m.mean_x + nsigma * sx;
  g.p_min = m.mean_p - nsigma * sp;
  g.p_max = m.mean_p + nsigma * sp;
  return g;
}

double analytic_squeezed_fock_wigner(cplx xi, int n, cplx alpha) {
  if (n < 0) throw InvalidParameter("Fock index must be non-negative");
  const double r = std::abs(xi);
  const double phi = std::arg(xi);
  const cplx nu = std::cosh(r) * std::conj(alpha) + std::polar(std::sinh(r), -phi) * alpha;
  const double q = std::norm(nu);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return (2.0 / kPi) * sign * std::exp(-2.0 * q) * std::laguerre(static_cast<unsigned>(n), 4.0 * q);
}

}  // namespace kerrsqueeze
