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

#include "kerrsqueeze/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "kerrsqueeze/metrics.hpp"
#include "kerrsqueeze/optimize.hpp"

namespace kerrsqueeze {

namespace {

constexpr double kZ95 = 1.959963984540054;

double wrap_2pi(double phi) {
  phi = std::fmod(phi, kTwoPi);
  return phi < 0.0 ? phi + kTwoPi : phi;
}

// 95% half-widths from the linearized covariance s^2 (J^T J)^{-1}.
Eigen::VectorXd confidence(const Eigen::MatrixXd& jac, double rss) {
  const Eigen::Index dof = jac.rows() - jac.cols();
  const double s2 = dof > 0 ? rss / static_cast<double>(dof) : 0.0;
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jtj);
  const Eigen::MatrixXd cov = s2 * cod.pseudoInverse();
  return kZ95 * cov.diagonal().cwiseMax(0.0).cwiseSqrt();
}

struct CutResiduals : Eigen::DenseFunctor<double> {
  const Cut* cx;
  const Cut* cp;
  CutResiduals(const Cut& x, const Cut& p)
      : Eigen::DenseFunctor<double>(2, static_cast<int>(x.coord.size() + p.coord.size())),
        cx(&x),
        cp(&p) {}

  int operator()(const InputType& q, ValueType& f) const {
    const double s = q[0], amp = q[1];
    const Eigen::Index nx = cx->coord.size();
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double x = cx->coord[i];
      f[i] = amp * std::exp(-2.0 * std::exp(2.0 * s) * x * x) - cx->values[i];
    }
    for (Eigen::Index i = 0; i < cp->coord.size(); ++i) {
      const double p = cp->coord[i];
      f[nx + i] = amp * std::exp(-2.0 * std::exp(-2.0 * s) * p * p) - cp->values[i];
    }
    return 0;
  }
};

double second_moment(const Cut& c) {
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < c.coord.size(); ++i) {
    const double w = std::max(c.values[i], 0.0);
    num += w * c.coord[i] * c.coord[i];
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

// Model values for the 2D fit at amplitude 1.
Eigen::VectorXd model_2d(const WignerGrid& g, double r, double phi, int n) {
  Eigen::VectorXd m(g.values.size());
  const cplx xi = std::polar(r, phi);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < g.p_values.size(); ++j) {
    for (Eigen::Index i = 0; i < g.x_values.size(); ++i) {
      m[k++] = analytic_squeezed_fock_wigner(xi, n, cplx(g.x_values[i], g.p_values[j]));
    }
  }
  return m;
}

}  // namespace

SqueezeFit fit_1d_cuts(const Cut& cut_x, const Cut& cut_p, int max_iterations) {
  if (cut_x.coord.size() != cut_x.values.size() || cut_p.coord.size() != cut_p.values.size()) {
    throw InvalidParameter("cut coordinates and values differ in length");
  }
  if (cut_x.coord.size() + cut_p.coord.size() < 3) {
    throw InvalidParameter("1D fit needs at least 3 samples");
  }
  CutResiduals functor(cut_x, cut_p);
  Eigen::NumericalDiff<CutResiduals> numdiff(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<CutResiduals>> lm(numdiff);
  lm.setMaxfev(max_iterations * 4);
  lm.setXtol(1e-14);
  lm.setFtol(1e-16);

  const double mx = second_moment(cut_x), mp = second_moment(cut_p);
  Eigen::VectorXd q(2);
  q[0] = (mx > 0.0 && mp > 0.0) ? 0.25 * std::log(mp / mx) : 0.0;
  q[1] = std::max(cut_x.values.maxCoeff(), cut_p.values.maxCoeff());
  const auto status = lm.minimize(q);

  Eigen::VectorXd res(functor.values());
  functor(q, res);
  const double rss = res.squaredNorm();
  const double rms = std::sqrt(rss / static_cast<double>(res.size()));
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters ||
      status == Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation || !q.allFinite()) {
    throw FitFailure("1D cut fit did not converge (status " + std::to_string(status) + ")",
                     static_cast<int>(lm.iterations()), rms);
  }
  const Eigen::MatrixXd jac = numeric_jacobian(
      [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(functor.values());
        functor(x, f);
        return f;
      },
      q);
  const Eigen::VectorXd ci = confidence(jac, rss);

  SqueezeFit fit;
  fit.xi_abs = std::abs(q[0]);
  fit.phi = q[0] < 0.0 ? kPi : 0.0;
  fit.amplitude = q[1];
  fit.ci95.xi_abs = ci[0];
  fit.ci95.amplitude = ci[1];
  fit.residual_rms = rms;
  fit.iterations = static_cast<int>(lm.iterations());
  return fit;
}

SqueezeFit fit_2d_wigner(const WignerGrid& grid, int n_fock_hint, const Fit2dOptions& options) {
  if (n_fock_hint < 0) throw InvalidParameter("Fock hint must be non-negative");
  if (grid.values.size() < 4) throw InvalidParameter("2D fit needs at least 4 grid points");
  Eigen::VectorXd data(grid.values.size());
  {
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      for (Eigen::Index i = 0; i < grid.values.rows(); ++i) data[k++] = grid.values(i, j);
    }
  }

  // Starting |xi| from the anisotropy of the grid's second moments.
  double r0 = 0.2;
  {
    Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
    double norm = 0.0;
    for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
      for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
        const double w = std::abs(grid.values(i, j));
        const Eigen::Vector2d v(grid.x_values[i], grid.p_values[j]);
        c += w * v * v.transpose();
        norm += w;
      }
    }
    if (norm > 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c / norm);
      const auto ev = es.eigenvalues();
      if (ev[0] > 0.0) r0 = std::max(0.05, 0.25 * std::log(ev[1] / ev[0]));
    }
  }

  // The amplitude enters linearly and is profiled out of the simplex search.
  const auto profiled = [&](double r, double phi, int n, double* amp) {
    const Eigen::VectorXd m = model_2d(grid, std::abs(r), phi, n);
    const double mm = m.squaredNorm();
    const double a = mm > 0.0 ? m.dot(data) / mm : 0.0;
    if (amp) *amp = a;
    return (a * m - data).squaredNorm();
  };

  std::vector<int> candidates{n_fock_hint};
  if (options.select_n) {
    if (n_fock_hint > 0) candidates.push_back(n_fock_hint - 1);
    candidates.push_back(n_fock_hint + 1);
  }

  double best_rss = std::numeric_limits<double>::infinity();
  SqueezeFit best;
  bool any_converged = false;
  int total_iter = 0;
  for (int n : candidates) {
    for (double phi0 : {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
      Eigen::VectorXd x0(2), step(2);
      x0 << r0, phi0;
      step << 0.1, 0.3;
      SimplexOptions so;
      so.max_iterations = options.max_iterations;
      so.x_tolerance = 1e-10;
      so.f_tolerance = 1e-18;
      const auto res = nelder_mead(
          [&](const Eigen::VectorXd& x) { return profiled(x[0], x[1], n, nullptr); }, x0, step, so);
      total_iter += res.iterations;
      any_converged = any_converged || res.converged;
      if (res.value < best_rss) {
        best_rss = res.value;
        double amp = 0.0;
        profiled(res.x[0], res.x[1], n, &amp);
        best.xi_abs = std::abs(res.x[0]);
        best.phi = wrap_2pi(res.x[1]);
        best.amplitude = amp;
        best.n_fock = n;
      }
    }
  }
  const double rms = std::sqrt(best_rss / static_cast<double>(data.size()));
  if (!any_converged) throw FitFailure("2D Wigner fit did not converge", total_iter, rms);

  Eigen::VectorXd q(3);
  q << best.xi_abs, best.phi, best.amplitude;
  const int n = best.n_fock;
  const Eigen::MatrixXd jac = numeric_jacobian(
      [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return x[2] * model_2d(grid, x[0], x[1], n) - data;
      },
      q);
  const Eigen::VectorXd ci = confidence(jac, best_rss);
  best.ci95.xi_abs = ci[0];
  best.ci95.phi = ci[1];
  best.ci95.amplitude = ci[2];
  best.residual_rms = rms;
  best.iterations = total_iter;
  return best;
}

SqueezeFit fit_state_aligned(const QuantumState& psi, int n_fock_hint, int points,
                             double nsigma, const Fit2dOptions& options) {
  const VarianceSqueezing vs = variance_squeezing(psi);
  const QuantumState aligned = rotate(psi, -(vs.long_axis - kPi / 2.0));
  WignerGrid grid = wigner(aligned, covering_grid(aligned, points, nsigma, false));
  const QuadratureMoments m = quadrature_moments(aligned);
  grid.x_values.array() -= m.mean_x;
  grid.p_values.array() -= m.mean_p;
  return fit_2d_wigner(grid, n_fock_hint, options);
}

BestFitSqueezed best_fit_squeezed(const QuantumState& psi, bool with_displacement) {
  const Eigen::Index dim = psi.dim();
  const auto overlap = [&](double r, double phi, cplx alpha) {
    const QuantumState ref = squeezed_coherent_state(std::polar(std::abs(r), phi), alpha, dim);
    return fidelity(ref, psi);
  };
  const VarianceSqueezing vs = variance_squeezing(psi);
  const cplx mean = psi.expect_complex(annihilation(dim));

  std::vector<double> phis{vs.phi};
  for (double p : {0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0}) phis.push_back(p);
  const double r0 = std::max(0.05, vs.xi_abs);

  BestFitSqueezed best;
  best.fidelity = -1.0;
  SimplexOptions so;
  so.x_tolerance = 1e-9;
  so.f_tolerance = 1e-14;
  for (double phi0 : phis) {
    SimplexResult res;
    if (with_displacement) {
      Eigen::VectorXd x0(4), step(4);
      x0 << r0, phi0, mean.real(), mean.imag();
      step << 0.1, 0.3, 0.05, 0.05;
      res = nelder_mead(
          [&](const Eigen::VectorXd& x) { return -overlap(x[0], x[1], cplx(x[2], x[3])); }, x0,
          step, so);
    } else {
      Eigen::VectorXd x0(2), step(2);
      x0 << r0, phi0;
      step << 0.1, 0.3;
      res = nelder_mead([&](const Eigen::VectorXd& x) { return -overlap(x[0], x[1], 0.0); }, x0,
                        step, so);
    }
    if (-res.value > best.fidelity) {
      best.fidelity = -res.value;
      best.xi_abs = std::abs(res.x[0]);
      best.phi = wrap_2pi(res.x[1]);
      best.alpha = with_displacement ? cplx(res.x[2], res.x[3]) : cplx(0.0, 0.0);
    }
  }
  return best;
}

}  // namespace kerrsqueeze
