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

#include "kerrsqueeze/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "kerrsqueeze/evolve.hpp"
#include "kerrsqueeze/propagator.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace kerrsqueeze {

ProtocolSchedule& ProtocolSchedule::displace(cplx beta, double duration) {
  if (duration < 0.0) throw InvalidParameter("displacement duration must be non-negative");
  segments_.emplace_back(DisplaceStep{beta, duration});
  return *this;
}

ProtocolSchedule& ProtocolSchedule::evolve(std::string hamiltonian_id, double t) {
  if (t < 0.0) throw InvalidParameter("evolution time must be non-negative");
  segments_.emplace_back(EvolveStep{std::move(hamiltonian_id), t});
  return *this;
}

ProtocolSchedule& ProtocolSchedule::rotate(double theta) {
  segments_.emplace_back(RotateStep{theta});
  return *this;
}

std::vector<cplx> ProtocolSchedule::frame_log() const {
  std::vector<cplx> log;
  cplx frame{0.0, 0.0};
  for (const auto& seg : segments_) {
    if (const auto* d = std::get_if<DisplaceStep>(&seg)) {
      frame += d->beta;
    } else if (const auto* r = std::get_if<RotateStep>(&seg)) {
      frame *= std::polar(1.0, -r->theta);
    }
    log.push_back(frame);
  }
  return log;
}

bool ProtocolSchedule::closes(double tol) const {
  const auto log = frame_log();
  return log.empty() || std::abs(log.back()) < tol;
}

QuantumState ProtocolSchedule::run(const std::map<std::string, CMatrix>& hamiltonians,
                                   const QuantumState& psi) const {
  QuantumState state = psi;
  for (const auto& seg : segments_) {
    if (const auto* d = std::get_if<DisplaceStep>(&seg)) {
      if (d->duration > 0.0) {
        throw InvalidParameter("finite-duration displacements need the Trotter runner");
      }
      state = QuantumState(displacement_operator(d->beta, state.dim()).elements * state.amplitudes());
    } else if (const auto* e = std::get_if<EvolveStep>(&seg)) {
      const auto it = hamiltonians.find(e->hamiltonian_id);
      if (it == hamiltonians.end()) {
        throw InvalidParameter("unknown Hamiltonian id '" + e->hamiltonian_id + "'");
      }
      state = evolve_unitary(it->second, e->t, state);
    } else {
      state = apply_virtual_rotation(state, std::get<RotateStep>(seg).theta);
    }
  }
  return state;
}

QuantumState apply_virtual_rotation(const QuantumState& psi, double theta) {
  return rotate(psi, -theta);
}

double calibrate_phase(const StateLike& state, double ring_radius, int n_angles) {
  if (n_angles < 3) throw InvalidParameter("ring scan needs at least 3 angles");
  if (!(ring_radius > 0.0)) throw InvalidParameter("ring radius must be positive");
  std::vector<double> w(static_cast<std::size_t>(n_angles));
  for (int k = 0; k < n_angles; ++k) {
    const cplx alpha = std::polar(ring_radius, kTwoPi * k / n_angles);
    w[static_cast<std::size_t>(k)] = std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, QuantumState>) {
            return wigner_point(s, alpha);
          } else {
            return wigner_point(s.elements(), alpha);
          }
        },
        state);
  }
  const auto [mn, mx] = std::minmax_element(w.begin(), w.end());
  if (*mx - *mn < 1e-3) throw DegeneratePhase("Wigner contrast on the ring is below 1e-3");
  const auto k = static_cast<int>(mx - w.begin());
  const double y0 = w[static_cast<std::size_t>((k + n_angles - 1) % n_angles)];
  const double y1 = w[static_cast<std::size_t>(k)];
  const double y2 = w[static_cast<std::size_t>((k + 1) % n_angles)];
  const double den = y0 - 2.0 * y1 + y2;
  const double off = den != 0.0 ? 0.5 * (y0 - y2) / den : 0.0;
  const double gamma = kTwoPi * (k + off) / n_angles;
  // the maximum sits on the anti-squeezed axis, a quarter turn from x
  double theta = std::fmod(gamma - kPi / 2.0, kPi);
  if (theta <= -kPi / 2.0) theta += kPi;
  if (theta > kPi / 2.0) theta -= kPi;
  return theta;
}

CyclicResult run_cyclic_squeeze(const OscillatorParams& osc, const DriveParams& drive, cplx beta,
                                int cycles, double period, const QuantumState& psi0,
                                const CyclicOptions& options) {
  if (cycles < 0) throw InvalidParameter("cycle count must be non-negative");
  if (!(period > 0.0)) throw InvalidParameter("cycle period must be positive");
  const Eigen::Index dim = psi0.dim();
  CyclicResult out{psi0, {}, psi0.mean_photon_number(), 0.0, {}};
  if (cycles == 0) return out;

  const CMatrix h = build_driven_kerr(osc, drive, dim).elements;
  const auto sys = PropagatorCache::global().get(h);
  const CMatrix d_in = displacement_operator(beta, dim).elements;
  const CMatrix d_out = displacement_operator(-beta, dim).elements;
  const CVector lab0 = d_in * psi0.amplitudes();
  const CVector c0 = sys->v.adjoint() * lab0;
  const auto lab_at = [&](double t) -> CVector {
    const CVector ph = sys->w.unaryExpr([t](double e) { return std::polar(1.0, -e * t); });
    return sys->v * ph.cwiseProduct(c0);
  };

  const double total = cycles * period;
  if (options.photon_sample_dt > 0.0) {
    const long n = static_cast<long>(std::floor(total / options.photon_sample_dt)) + 1;
    for (long i = 0; i < n; ++i) {
      out.peak_photon_number = std::max(
          out.peak_photon_number, QuantumState(lab_at(i * options.photon_sample_dt)).mean_photon_number());
    }
  }

  double last_theta = 0.0;
  for (int k = 1; k <= cycles; ++k) {
    const double t = k * period;
    const QuantumState lab(lab_at(t));
    out.peak_photon_number = std::max(out.peak_photon_number, lab.mean_photon_number());
    out.leakage_max = std::max(out.leakage_max, lab.tail_population());
    lab.check_leakage(options.leakage_tol);
    QuantumState closed(d_out * lab.amplitudes());
    double theta = 0.0;
    if (options.calibrate) {
      try {
        theta = calibrate_phase(closed, options.ring_radius, options.n_angles);
      } catch (const DegeneratePhase&) {
        theta = 0.0;
      }
    }
    closed = apply_virtual_rotation(closed, theta);
    out.snapshots.push_back({k, t, closed, theta});
    last_theta = theta;
  }
  out.final_state = out.snapshots.back().state;
  out.schedule.displace(beta).evolve("driven_kerr", total).displace(-beta).rotate(last_theta);
  return out;
}

void TrotterConfig::validate() const {
  if (steps < 0) throw InvalidParameter("Trotter step count must be non-negative");
  if (!(delta_t > 0.0)) throw InvalidParameter("Trotter time step must be positive");
  if (order != 1 && order != 2) throw InvalidParameter("Trotter order must be 1 or 2");
  if (order == 2 && steps % 2 != 0) {
    throw InvalidParameter("second-order Trotter needs an even step count");
  }
  if (displacement_duration < 0.0) throw InvalidParameter("displacement duration must be >= 0");
  if (pulse_slices < 1) throw InvalidParameter("pulse_slices must be >= 1");
}

namespace {

// The lab state is D(b) chi. Lab evolution under H_d becomes evolution of chi
// under the displaced Hamiltonian H_b, and a displacement only relabels b.
class FrameStepper {
 public:
  FrameStepper(const OscillatorParams& osc, const TrotterConfig& cfg, Eigen::Index dim)
      : osc_(osc), cfg_(cfg), dim_(dim) {
    kerr_only_ = osc;
    kerr_only_.kappa_c = 0.0;
  }

  void evolve(CVector& chi, cplx b, double t, bool pulse) {
    if (t <= 0.0) return;
    chi = unitary(b, t, pulse) * chi;
  }

  // Finite pulse: Kerr-only evolution while the frame sweeps from b1 to b2.
  void sweep(CVector& chi, cplx b1, cplx b2) {
    if (cfg_.displacement_duration <= 0.0 || b1 == b2) return;
    const int s = cfg_.pulse_slices;
    for (int k = 0; k < s; ++k) {
      const cplx b = b1 + (b2 - b1) * ((k + 0.5) / s);
      evolve(chi, b, cfg_.displacement_duration / s, true);
    }
  }

 private:
  const CMatrix& unitary(cplx b, double t, bool pulse) {
    const auto key = std::make_tuple(b.real(), b.imag(), t, pulse);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    DriveParams drive;
    drive.delta_d = pulse ? 0.0 : cfg_.delta_d;
    const CMatrix h =
        build_displaced_kerr(pulse ? kerr_only_ : osc_, drive, FrameParams{b}, dim_).h.elements;
    return cache_.emplace(key, diagonalize(h).unitary(t)).first->second;
  }

  OscillatorParams osc_;
  OscillatorParams kerr_only_;
  TrotterConfig cfg_;
  Eigen::Index dim_;
  std::map<std::tuple<double, double, double, bool>, CMatrix> cache_;
};

}  // namespace

TrotterResult run_trotter_squeeze(const OscillatorParams& osc, const TrotterConfig& cfg,
                                  const QuantumState& psi0) {
  cfg.validate();
  osc.validate();
  TrotterResult out{psi0, {}, {}};
  if (cfg.steps == 0) return out;
  FrameStepper stepper(osc, cfg, psi0.dim());
  const cplx b = cfg.beta;
  const double dt = cfg.delta_t;

  CVector chi = psi0.amplitudes();
  cplx frame{0.0, 0.0};
  const auto go = [&](cplx target, double t) {
    stepper.sweep(chi, frame, target);
    frame = target;
    stepper.evolve(chi, frame, t, false);
  };
  const auto snapshot = [&](int step) {
    CVector closed = chi;
    stepper.sweep(closed, frame, 0.0);
    out.snapshots.emplace_back(closed);
    out.snapshot_steps.push_back(step);
  };

  if (cfg.order == 1) {
    for (int m = 1; m <= cfg.steps; ++m) {
      go(b, dt / 2.0);
      go(-b, dt / 2.0);
      snapshot(m);
    }
  } else {
    for (int m = 2; m <= cfg.steps; m += 2) {
      go(b, dt / 2.0);
      go(-b, dt);
      go(b, dt / 2.0);
      snapshot(m);
    }
  }
  out.final_state = out.snapshots.back();
  return out;
}

QuantumState kpo_reference(const OscillatorParams& osc, cplx beta, double delta_d, double t,
                           const QuantumState& psi0) {
  const double delta_prime = delta_d - 2.0 * osc.K * std::norm(beta);
  return evolve_unitary(build_kpo(osc, FrameParams{beta}, delta_prime, psi0.dim()), t, psi0);
}

}  // namespace kerrsqueeze
