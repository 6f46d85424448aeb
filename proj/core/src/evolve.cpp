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

#include "kerrsqueeze/evolve.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCore>

#include "kerrsqueeze/propagator.hpp"

namespace kerrsqueeze {

namespace {

using SparseC = Eigen::SparseMatrix<cplx>;

SparseC to_sparse(const CMatrix& m) { return m.sparseView(0.0, 0.0); }

struct Liouvillian {
  SparseC h;
  std::vector<std::pair<SparseC, SparseC>> jumps;  // (sqrt(2pi k) c, 2pi k c^dagger c)

  CMatrix operator()(const CMatrix& rho) const {
    // rho is Hermitian, so rho X^dagger = (X rho)^dagger for Hermitian X
    const CMatrix hr = h * rho;
    CMatrix out = cplx(0.0, -1.0) * (hr - hr.adjoint());
    for (const auto& [c, cdc] : jumps) {
      const CMatrix cr = c * rho;
      out += c * cr.adjoint();
      const CMatrix nr = cdc * rho;
      out -= 0.5 * (nr + nr.adjoint());
    }
    return out;
  }
};

CMatrix rk4_run(const Liouvillian& l, CMatrix rho, double t, int steps) {
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const CMatrix k1 = l(rho);
    const CMatrix k2 = l(rho + 0.5 * h * k1);
    const CMatrix k3 = l(rho + 0.5 * h * k2);
    const CMatrix k4 = l(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
  }
  return rho;
}

}  // namespace

QuantumState evolve_unitary(const CMatrix& h, double t, const QuantumState& psi) {
  if (t < 0.0) throw InvalidParameter("evolution time must be non-negative");
  if (h.rows() != psi.dim()) throw DimensionMismatch("Hamiltonian/state dimension mismatch");
  if (t == 0.0) return psi;
  const auto sys = PropagatorCache::global().get(h);
  return QuantumState(sys->apply(psi.amplitudes(), t));
}

QuantumState evolve_unitary(const OperatorMatrix& h, double t, const QuantumState& psi) {
  return evolve_unitary(h.elements, t, psi);
}

DensityMatrix evolve_lindblad(const CMatrix& h, const std::vector<Collapse>& collapse, double t,
                              const DensityMatrix& rho, const LindbladOptions& options) {
  require_hermitian(h);
  if (t < 0.0) throw InvalidParameter("evolution time must be non-negative");
  if (!(options.dt_max > 0.0)) throw InvalidParameter("dt_max must be positive");
  if (h.rows() != rho.dim()) throw DimensionMismatch("Hamiltonian/state dimension mismatch");
  Liouvillian l{to_sparse(h), {}};
  for (const auto& c : collapse) {
    if (c.rate < 0.0) throw InvalidParameter("collapse rate must be non-negative");
    if (c.op.rows() != h.rows()) throw DimensionMismatch("collapse operator dimension mismatch");
    if (c.rate == 0.0) continue;
    const double g = kTwoPi * c.rate;
    l.jumps.emplace_back(to_sparse(std::sqrt(g) * c.op), to_sparse(g * c.op.adjoint() * c.op));
  }
  if (t == 0.0) return rho;

  int steps = std::max(1, static_cast<int>(std::ceil(t / options.dt_max - 1e-12)));
  CMatrix coarse = rk4_run(l, rho.elements(), t, steps);
  if (options.fixed_step) return DensityMatrix(std::move(coarse), false);
  double change = 0.0;
  for (int k = 0; k < options.max_halvings; ++k) {
    steps *= 2;
    CMatrix fine = rk4_run(l, rho.elements(), t, steps);
    change = 0.5 * (fine - coarse).squaredNorm();
    if (change < options.tolerance) return DensityMatrix(std::move(fine), false);
    coarse = std::move(fine);
  }
  throw IntegratorError("Lindblad integration did not converge after " +
                            std::to_string(options.max_halvings) + " halvings (change " +
                            std::to_string(change) + ")",
                        t / steps, change);
}

EvolutionResult trajectory(const std::vector<Segment>& sequence, const QuantumState& psi0,
                           double sample_dt, const std::vector<Observable>& observables,
                           double leakage_tol) {
  if (!(sample_dt > 0.0)) throw InvalidParameter("sample_dt must be positive");
  const Eigen::Index dim = psi0.dim();
  for (const auto& o : observables) {
    if (o.op.rows() != dim) throw DimensionMismatch("observable '" + o.name + "' has wrong dimension");
    if ((o.op - o.op.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
      throw InvalidParameter("observable '" + o.name + "' is not Hermitian");
    }
  }
  const CMatrix a = annihilation(dim);
  EvolutionResult out{psi0, {}, {}, 0.0, false};
  for (const auto& o : observables) out.observable_names.push_back(o.name);

  const auto record = [&](double t, const CVector& v) {
    const QuantumState s(v);
    Sample smp;
    smp.t = t;
    smp.alpha = s.expect_complex(a);
    smp.n = s.mean_photon_number();
    smp.leakage = s.tail_population();
    for (const auto& o : observables) smp.values.push_back(s.expect(o.op));
    out.leakage_max = std::max(out.leakage_max, smp.leakage);
    out.samples.push_back(std::move(smp));
  };

  double total = 0.0;
  for (const auto& seg : sequence) {
    if (seg.duration < 0.0) throw InvalidParameter("segment duration must be non-negative");
    if (seg.h.rows() != dim) throw DimensionMismatch("segment Hamiltonian has wrong dimension");
    total += seg.duration;
  }
  const long n_samples = static_cast<long>(std::floor(total / sample_dt + 1e-9)) + 1;

  CVector psi = psi0.amplitudes();
  double seg_start = 0.0;
  long next = 0;
  for (const auto& seg : sequence) {
    const auto sys = PropagatorCache::global().get(seg.h);
    const CVector c = sys->v.adjoint() * psi;
    const double seg_end = seg_start + seg.duration;
    while (next < n_samples && next * sample_dt <= seg_end + 1e-12) {
      const double tau = next * sample_dt - seg_start;
      const CVector ph = sys->w.unaryExpr([tau](double e) { return std::polar(1.0, -e * tau); });
      record(next * sample_dt, sys->v * ph.cwiseProduct(c));
      ++next;
    }
    const CVector ph =
        sys->w.unaryExpr([d = seg.duration](double e) { return std::polar(1.0, -e * d); });
    psi = sys->v * ph.cwiseProduct(c);
    seg_start = seg_end;
  }
  if (sequence.empty()) record(0.0, psi);
  out.final_state = QuantumState(psi);
  out.leakage_flagged = out.leakage_max > leakage_tol;
  return out;
}

}  // namespace kerrsqueeze
