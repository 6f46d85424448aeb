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

#include "kerrsqueeze/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "kerrsqueeze/evolve.hpp"
#include "kerrsqueeze/fit.hpp"
#include "kerrsqueeze/metrics.hpp"
#include "kerrsqueeze/optimize.hpp"
#include "kerrsqueeze/period.hpp"
#include "kerrsqueeze/propagator.hpp"

namespace kerrsqueeze {

const char* to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::kOk: return "ok";
    case RecordStatus::kTruncationFault: return "truncation-fault";
    case RecordStatus::kFitFailure: return "fit-failure";
    case RecordStatus::kDegenerate: return "degenerate";
    case RecordStatus::kNumericalFault: return "numerical-fault";
  }
  return "unknown";
}

namespace {

double lookup(const NamedValues& v, const std::string& name) {
  for (const auto& [k, x] : v) {
    if (k == name) return x;
  }
  throw InvalidParameter("no value named '" + name + "'");
}

}  // namespace

double SweepRecord::metric(const std::string& name) const { return lookup(metrics, name); }
double SweepRecord::param(const std::string& name) const { return lookup(params, name); }

SweepTable run_sweep(std::vector<std::string> param_names, std::vector<std::string> metric_names,
                     std::vector<SweepJob> jobs, int workers) {
  {
    std::set<std::vector<double>> seen;
    for (const auto& job : jobs) {
      if (job.params.size() != param_names.size()) {
        throw InvalidParameter("sweep job carries the wrong number of parameters");
      }
      std::vector<double> key;
      for (const auto& [k, v] : job.params) key.push_back(v);
      if (!seen.insert(key).second) throw InvalidParameter("duplicate parameter tuple in sweep");
    }
  }
  std::vector<SweepRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      SweepRecord& r = records[i];
      r.params = jobs[i].params;
      try {
        r.metrics = jobs[i].run();
        r.status = RecordStatus::kOk;
      } catch (const TruncationFault& e) {
        r.status = RecordStatus::kTruncationFault;
        r.message = e.what();
      } catch (const FitFailure& e) {
        r.status = RecordStatus::kFitFailure;
        r.message = e.what();
      } catch (const AperiodicTrace& e) {
        r.status = RecordStatus::kDegenerate;
        r.message = e.what();
      } catch (const DegeneratePhase& e) {
        r.status = RecordStatus::kDegenerate;
        r.message = e.what();
      } catch (const Error& e) {
        r.status = RecordStatus::kNumericalFault;
        r.message = e.what();
      }
      if (r.status != RecordStatus::kOk) r.metrics.clear();
    }
  };
  const int n = std::clamp(workers, 1, std::max(1, static_cast<int>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    for (std::size_t k = 0; k < a.params.size(); ++k) {
      if (a.params[k].second != b.params[k].second) return a.params[k].second < b.params[k].second;
    }
    return false;
  });
  return SweepTable{std::move(param_names), std::move(metric_names), std::move(records)};
}

std::vector<double> cyclic_photon_trace(const OscillatorParams& osc, const DriveParams& drive,
                                        cplx beta, const QuantumState& psi0, double t_max,
                                        double dt) {
  if (!(dt > 0.0) || !(t_max > 0.0)) throw InvalidParameter("trace window and step must be positive");
  const Eigen::Index dim = psi0.dim();
  const auto sys = PropagatorCache::global().get(build_driven_kerr(osc, drive, dim).elements);
  const CVector c =
      sys->v.adjoint() * (displacement_operator(beta, dim).elements * psi0.amplitudes());
  const Eigen::VectorXd nvec = Eigen::VectorXd::LinSpaced(dim, 0.0, static_cast<double>(dim - 1));
  const long n = static_cast<long>(std::floor(t_max / dt)) + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  CVector ph(dim);
  for (long i = 0; i < n; ++i) {
    const double t = i * dt;
    for (Eigen::Index k = 0; k < dim; ++k) ph[k] = std::polar(1.0, -sys->w[k] * t) * c[k];
    const CVector psi = sys->v * ph;
    out[static_cast<std::size_t>(i)] = psi.cwiseAbs2().dot(nvec);
  }
  return out;
}

double linear_region_slope(const std::vector<double>& xi_abs_per_cycle) {
  if (xi_abs_per_cycle.empty()) return 0.0;
  const double peak = *std::max_element(xi_abs_per_cycle.begin(), xi_abs_per_cycle.end());
  std::vector<double> xs{0.0}, ys{0.0};
  for (std::size_t k = 0; k < xi_abs_per_cycle.size(); ++k) {
    if (xi_abs_per_cycle[k] >= 0.6 * peak) break;
    xs.push_back(static_cast<double>(k + 1));
    ys.push_back(squeezing_level_db(xi_abs_per_cycle[k]));
  }
  if (xs.size() < 2) {
    xs.push_back(1.0);
    ys.push_back(squeezing_level_db(xi_abs_per_cycle[0]));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CyclicMetrics analyze_cycles(const CyclicResult& run) {
  CyclicMetrics m;
  if (run.snapshots.empty()) return m;
  double fsum = 0.0;
  for (const auto& snap : run.snapshots) {
    const BestFitSqueezed bf = best_fit_squeezed(snap.state, true);
    m.xi_abs.push_back(bf.xi_abs);
    m.fidelity.push_back(bf.fidelity);
    fsum += bf.fidelity;
  }
  const auto n = run.snapshots.size();
  m.mean_fidelity = fsum / static_cast<double>(n);
  const double period = run.snapshots.front().t;
  m.rate_mhz = m.xi_abs.back() / run.snapshots.back().t / kTwoPi;
  m.slope_db_per_cycle = linear_region_slope(m.xi_abs);
  m.rate_fit_mhz = m.slope_db_per_cycle / kDbPerNeper / period / kTwoPi;
  return m;
}

namespace {

double period_at(const OscillatorParams& osc, const DriveParams& drive, cplx beta,
                 const DriveScanOptions& o) {
  const QuantumState vac = make_state(FockSpec{0}, o.dim);
  const auto trace = cyclic_photon_trace(osc, drive, beta, vac, o.trace_window, o.trace_dt);
  return extract_period(trace, o.trace_dt);
}

}  // namespace

SweepTable scan_drive_params(const std::vector<double>& delta_grid,
                             const std::vector<double>& omega_grid, const OscillatorParams& osc,
                             cplx beta, int cycles, const DriveScanOptions& options) {
  if (delta_grid.empty() || omega_grid.empty()) throw InvalidParameter("sweep grids must be non-empty");
  std::vector<SweepJob> jobs;
  for (double delta : delta_grid) {
    for (double omega : omega_grid) {
      jobs.push_back({{{"delta_d", delta}, {"omega_d", omega}}, [=]() -> NamedValues {
                        DriveParams drive;
                        drive.delta_d = delta;
                        drive.omega_d = omega;
                        const double period = period_at(osc, drive, beta, options);
                        const QuantumState vac = make_state(FockSpec{0}, options.dim);
                        const auto run = run_cyclic_squeeze(osc, drive, beta, cycles, period, vac);
                        const auto m = analyze_cycles(run);
                        return {{"infidelity", 1.0 - m.mean_fidelity},
                                {"rate_mhz", m.rate_mhz},
                                {"n_max", run.peak_photon_number},
                                {"period_us", period}};
                      }});
    }
  }
  return run_sweep({"delta_d", "omega_d"}, {"infidelity", "rate_mhz", "n_max", "period_us"},
                   std::move(jobs), options.workers);
}

SweepTable scan_period(const std::vector<double>& omega_grid, double delta_d,
                       const OscillatorParams& osc, cplx beta, const DriveScanOptions& options) {
  std::vector<SweepJob> jobs;
  for (double omega : omega_grid) {
    jobs.push_back({{{"omega_d", omega}}, [=]() -> NamedValues {
                      DriveParams drive;
                      drive.delta_d = delta_d;
                      drive.omega_d = omega;
                      return {{"period_us", period_at(osc, drive, beta, options)}};
                    }});
  }
  return run_sweep({"omega_d"}, {"period_us"}, std::move(jobs), options.workers);
}

SweepTable scan_decay(const std::vector<double>& ratio_grid, const OscillatorParams& osc_base,
                      const DecayProtocol& protocol) {
  std::vector<SweepJob> jobs;
  // One job per ratio; cycles are unpacked afterwards.
  struct CycleEnd {
    double t, n, xi;
  };
  std::vector<std::vector<CycleEnd>> ends(ratio_grid.size());
  for (std::size_t r = 0; r < ratio_grid.size(); ++r) {
    const double ratio = ratio_grid[r];
    if (ratio < 0.0) throw InvalidParameter("decay ratios must be non-negative");
    jobs.push_back({{{"ratio", ratio}}, [=, &ends]() -> NamedValues {
                      OscillatorParams osc = osc_base;
                      osc.kappa_c = ratio * osc_base.K;
                      const Eigen::Index dim = protocol.dim;
                      CMatrix rho0 = CMatrix::Zero(dim, dim);
                      rho0(0, 0) = 1.0;
                      std::vector<double> ts, ns, xis;
                      double tail_max = 0.0;
                      const CMatrix a = annihilation(dim);
                      ComovingOptions co;
                      co.step = protocol.step;
                      co.sample_every = std::max(1, static_cast<int>(std::lround(0.01 / protocol.step)));
                      const double t_total = (protocol.cycles + 0.3) * protocol.period;
                      evolve_comoving_lindblad(
                          osc, protocol.drive, rho0, protocol.beta, t_total, co,
                          [&](double t, const CMatrix& rho, cplx alpha) {
                            const DensityMatrix dm(rho, false);
                            // photon number after closing the frame: D(alpha - beta) rho D^dagger
                            const cplx delta = alpha - protocol.beta;
                            const cplx ma = dm.expect_complex(a);
                            const double n = dm.expect(number_operator(dim)) +
                                             2.0 * (std::conj(delta) * ma).real() + std::norm(delta);
                            ts.push_back(t);
                            ns.push_back(n);
                            xis.push_back(variance_squeezing(dm).xi_abs);
                            tail_max = std::max(tail_max, dm.tail_population());
                          });
                      if (tail_max > 1e-5) {
                        throw TruncationFault("co-moving state reaches the basis edge", tail_max);
                      }
                      std::vector<CycleEnd> found;
                      for (int k = 1; k <= protocol.cycles; ++k) {
                        const double target = k * protocol.period;
                        double best_dist = std::numeric_limits<double>::infinity();
                        CycleEnd best{0, 0, 0};
                        for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
                          if (ns[i] <= ns[i - 1] && ns[i] <= ns[i + 1]) {
                            const double dist = std::abs(ts[i] - target);
                            if (dist < best_dist && dist < 0.3 * protocol.period) {
                              best_dist = dist;
                              best = {ts[i], ns[i], xis[i]};
                            }
                          }
                        }
                        if (!std::isfinite(best_dist)) {
                          throw AperiodicTrace("no photon-number minimum near cycle " +
                                               std::to_string(k));
                        }
                        found.push_back(best);
                      }
                      ends[r] = found;
                      return {};
                    }});
  }
  const SweepTable per_ratio = run_sweep({"ratio"}, {}, std::move(jobs), protocol.workers);
  SweepTable out{{"ratio", "cycle"}, {"xi_abs", "t_us", "n"}, {}};
  for (std::size_t r = 0; r < ratio_grid.size(); ++r) {
    const auto it = std::find_if(per_ratio.records.begin(), per_ratio.records.end(),
                                 [&](const SweepRecord& rec) { return rec.params[0].second == ratio_grid[r]; });
    for (int k = 1; k <= protocol.cycles; ++k) {
      SweepRecord rec;
      rec.params = {{"ratio", ratio_grid[r]}, {"cycle", static_cast<double>(k)}};
      rec.status = it->status;
      rec.message = it->message;
      if (rec.status == RecordStatus::kOk) {
        const auto& e = ends[r][static_cast<std::size_t>(k - 1)];
        rec.metrics = {{"xi_abs", e.xi}, {"t_us", e.t}, {"n", e.n}};
      }
      out.records.push_back(std::move(rec));
    }
  }
  std::sort(out.records.begin(), out.records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::make_pair(a.params[0].second, a.params[1].second) <
           std::make_pair(b.params[0].second, b.params[1].second);
  });
  return out;
}

SweepTable scan_trotter_dt(const std::vector<double>& dt_grid, double total_time, cplx beta,
                           const OscillatorParams& osc, double delta_d,
                           const TrotterScanOptions& options) {
  std::vector<SweepJob> jobs;
  for (double dt : dt_grid) {
    if (!(dt > 0.0)) throw InvalidParameter("Trotter time steps must be positive");
    const int steps = static_cast<int>(std::lround(total_time / dt));
    if (steps < 1 || std::abs(steps * dt - total_time) > 0.02 * dt) {
      throw InvalidParameter("total time is not a whole number of steps for dt=" +
                             std::to_string(dt));
    }
    jobs.push_back({{{"dt_us", dt}}, [=]() -> NamedValues {
                      const QuantumState vac = make_state(FockSpec{0}, options.dim);
                      TrotterConfig cfg;
                      cfg.beta = beta;
                      cfg.delta_t = dt;
                      cfg.steps = options.order == 2 ? steps + steps % 2 : steps;
                      cfg.order = options.order;
                      cfg.delta_d = delta_d;
                      cfg.displacement_duration = options.displacement_duration;
                      const auto run = run_trotter_squeeze(osc, cfg, vac);
                      run.final_state.check_leakage(1e-5);
                      const double level = squeezing_level_db(
                          std::max(0.0, variance_squeezing(run.final_state).xi_abs));
                      const auto ref = kpo_reference(osc, beta, delta_d, cfg.steps * dt, vac);
                      const double bf = best_fit_squeezed(run.final_state, true).xi_abs;
                      double fit_level = std::numeric_limits<double>::quiet_NaN();
                      if (options.fit_2d) {
                        fit_level = squeezing_level_db(fit_state_aligned(run.final_state, 0).xi_abs);
                      }
                      return {{"steps", static_cast<double>(cfg.steps)},
                              {"level_db", level},
                              {"fit_level_db", fit_level},
                              {"bestfit_level_db", squeezing_level_db(bf)},
                              {"infidelity_kpo", 1.0 - fidelity(ref, run.final_state)}};
                    }});
  }
  return run_sweep({"dt_us"},
                   {"steps", "level_db", "fit_level_db", "bestfit_level_db", "infidelity_kpo"},
                   std::move(jobs), options.workers);
}

int interior_argmax(const std::vector<double>& v) {
  if (v.size() < 3) return -1;
  const auto it = std::max_element(v.begin(), v.end());
  const auto i = static_cast<int>(it - v.begin());
  if (i == 0 || i == static_cast<int>(v.size()) - 1) return -1;
  return i;
}

double trotter_peak_xi(const OscillatorParams& osc, double beta_sq, double delta_d, double dt,
                       int steps, Eigen::Index dim) {
  TrotterConfig cfg;
  cfg.beta = std::sqrt(beta_sq);
  cfg.delta_t = dt;
  cfg.steps = steps;
  cfg.delta_d = delta_d;
  const auto run = run_trotter_squeeze(osc, cfg, make_state(FockSpec{0}, dim));
  double peak = 0.0;
  for (const auto& s : run.snapshots) peak = std::max(peak, variance_squeezing(s).xi_abs);
  return peak;
}

SweepTable optimize_detuning(const std::vector<DetuningRow>& rows, const OscillatorParams& osc,
                             double dt, const DetuningOptions& options) {
  std::vector<SweepJob> jobs;
  for (const auto& row : rows) {
    jobs.push_back({{{"beta_sq", row.beta_sq}}, [=]() -> NamedValues {
                      const auto objective = [&](double delta) {
                        return trotter_peak_xi(osc, row.beta_sq, delta, dt, row.steps, row.dim);
                      };
                      const double hi = 3.0 * osc.K * row.beta_sq;
                      const int n = std::max(5, options.coarse_points);
                      std::vector<std::pair<double, double>> trace;
                      for (int i = 0; i < n; ++i) {
                        const double d = hi * i / (n - 1);
                        trace.emplace_back(d, objective(d));
                      }
                      std::vector<double> vals;
                      for (const auto& [d, v] : trace) vals.push_back(v);
                      const int k = interior_argmax(vals);
                      if (k < 0) {
                        throw BracketFailure("detuning optimum not bracketed in [0, " +
                                                 std::to_string(hi) + "] MHz",
                                             trace);
                      }
                      const double best = golden_section_minimize(
                          [&](double d) { return -objective(d); }, trace[k - 1].first,
                          trace[k + 1].first, options.tolerance);
                      return {{"delta_opt_mhz", best},
                              {"peak_level_db", squeezing_level_db(std::max(0.0, objective(best)))}};
                    }});
  }
  return run_sweep({"beta_sq"}, {"delta_opt_mhz", "peak_level_db"}, std::move(jobs),
                   options.workers);
}

SweepTable scan_qubit_excitation(const JcParams& jc, const std::vector<double>& beta_sq_grid,
                                 int steps, const QubitScanOptions& options) {
  if (steps < 1) throw InvalidParameter("qubit scan needs at least one step");
  const Eigen::Index nc = options.cavity_dim;
  const Eigen::Index nq = jc.qubit_levels;
  const auto sys = PropagatorCache::global().get(build_jc(jc, nc).elements);
  const CMatrix u_half = sys->unitary(options.dt / 2.0);
  // qubit excited-state projector: every qubit level above the ground state
  Eigen::VectorXd excited(nc * nq);
  for (Eigen::Index c = 0; c < nc; ++c) {
    for (Eigen::Index q = 0; q < nq; ++q) excited[c * nq + q] = q > 0 ? 1.0 : 0.0;
  }
  const auto cavity_op = [&](const CMatrix& op) {
    CMatrix out = CMatrix::Zero(nc * nq, nc * nq);
    for (Eigen::Index i = 0; i < nc; ++i) {
      for (Eigen::Index j = 0; j < nc; ++j) {
        if (op(i, j) == cplx(0.0, 0.0)) continue;
        for (Eigen::Index q = 0; q < nq; ++q) out(i * nq + q, j * nq + q) = op(i, j);
      }
    }
    return out;
  };

  std::vector<SweepJob> jobs;
  std::vector<std::vector<double>> pops(beta_sq_grid.size());
  for (std::size_t g = 0; g < beta_sq_grid.size(); ++g) {
    const double beta_sq = beta_sq_grid[g];
    jobs.push_back({{{"beta_sq", beta_sq}}, [&, g, beta_sq]() -> NamedValues {
                      const double b = std::sqrt(beta_sq);
                      const CMatrix d_in = cavity_op(displacement_operator(b, nc).elements);
                      const CMatrix d_flip = cavity_op(displacement_operator(-2.0 * b, nc).elements);
                      const CMatrix d_back = cavity_op(displacement_operator(2.0 * b, nc).elements);
                      CVector psi = CVector::Zero(nc * nq);
                      psi[0] = 1.0;
                      psi = d_in * psi;
                      std::vector<double> p;
                      for (int m = 1; m <= steps; ++m) {
                        psi = u_half * psi;
                        psi = d_flip * psi;
                        psi = u_half * psi;
                        psi = d_back * psi;
                        p.push_back(std::clamp(psi.cwiseAbs2().dot(excited) / psi.squaredNorm(), 0.0, 1.0));
                      }
                      pops[g] = p;
                      return {};
                    }});
  }
  const SweepTable raw = run_sweep({"beta_sq"}, {}, std::move(jobs), options.workers);
  SweepTable out{{"beta_sq", "step"}, {"p_excited"}, {}};
  for (const auto& rec : raw.records) {
    const double beta_sq = rec.params[0].second;
    const auto g = static_cast<std::size_t>(
        std::find(beta_sq_grid.begin(), beta_sq_grid.end(), beta_sq) - beta_sq_grid.begin());
    for (int m = 1; m <= steps; ++m) {
      SweepRecord r;
      r.params = {{"beta_sq", beta_sq}, {"step", static_cast<double>(m)}};
      r.status = rec.status;
      r.message = rec.message;
      if (r.status == RecordStatus::kOk) r.metrics = {{"p_excited", pops[g][static_cast<std::size_t>(m - 1)]}};
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace kerrsqueeze
