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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/hamiltonian.hpp"
#include "kerrsqueeze/protocol.hpp"

namespace kerrsqueeze {

enum class RecordStatus { kOk, kTruncationFault, kFitFailure, kDegenerate, kNumericalFault };
const char* to_string(RecordStatus s);

using NamedValues = std::vector<std::pair<std::string, double>>;

struct SweepRecord {
  NamedValues params;
  NamedValues metrics;  // empty unless status is kOk
  RecordStatus status = RecordStatus::kOk;
  std::string message;

  double metric(const std::string& name) const;
  double param(const std::string& name) const;
};

struct SweepTable {
  std::vector<std::string> param_names;
  std::vector<std::string> metric_names;
  std::vector<SweepRecord> records;  // canonically sorted by parameter tuple
};

/// A job returns its metrics; the parameters are fixed up front so failed
/// jobs still carry their full tuple.
struct SweepJob {
  NamedValues params;
  std::function<NamedValues()> run;
};

/// Runs jobs on a pool of std::threads, maps library exceptions onto record
/// statuses, rejects duplicate parameter tuples and sorts canonically. The
/// result does not depend on the worker count.
SweepTable run_sweep(std::vector<std::string> param_names, std::vector<std::string> metric_names,
                     std::vector<SweepJob> jobs, int workers);

/// Lab-frame photon number of D(beta) psi0 under the driven Kerr Hamiltonian,
/// sampled every dt from 0 to t_max.
std::vector<double> cyclic_photon_trace(const OscillatorParams& osc, const DriveParams& drive,
                                        cplx beta, const QuantumState& psi0, double t_max,
                                        double dt);

/// Metrics of a cyclic run: mean infidelity to best-fit ideal squeezed
/// states over snapshots, mean squeezing rate |xi_N| / (N T) (per-cycle
/// increments telescoped) and the linear-region slope of |xi| versus time.
struct CyclicMetrics {
  double mean_fidelity = 0.0;
  double rate_mhz = 0.0;         // (|xi_N| / N T) / 2pi
  double rate_fit_mhz = 0.0;     // linear-region slope of |xi|(t) / 2pi
  double slope_db_per_cycle = 0.0;
  std::vector<double> xi_abs;    // per cycle, best-fit
  std::vector<double> fidelity;  // per cycle
};
CyclicMetrics analyze_cycles(const CyclicResult& run);

/// Least-squares slope of level (dB) versus cycle over the linear region,
/// i.e. cycles (starting from cycle 0 at 0 dB) with |xi| < 60% of the peak.
double linear_region_slope(const std::vector<double>& xi_abs_per_cycle);

struct DriveScanOptions {
  Eigen::Index dim = 200;
  double trace_window = 12.0;  // us, for period extraction
  double trace_dt = 0.002;
  int workers = 1;
};
/// Params (delta_d, omega_d); metrics infidelity, rate_mhz, n_max, period_us.
SweepTable scan_drive_params(const std::vector<double>& delta_grid,
                             const std::vector<double>& omega_grid, const OscillatorParams& osc,
                             cplx beta, int cycles, const DriveScanOptions& options = {});

/// Params omega_d; metric period_us.
SweepTable scan_period(const std::vector<double>& omega_grid, double delta_d,
                       const OscillatorParams& osc, cplx beta, const DriveScanOptions& options = {});

struct DecayProtocol {
  DriveParams drive;
  cplx beta{2.0, 0.0};
  double period = 2.157;
  int cycles = 4;
  Eigen::Index dim = 120;
  double step = 0.0005;
  int workers = 1;
};
/// Params (ratio, cycle); metrics xi_abs (covariance squeezing), t_us, n.
/// Cycle ends are the local minima of the frame-closed photon number nearest
/// k * period.
SweepTable scan_decay(const std::vector<double>& ratio_grid, const OscillatorParams& osc_base,
                      const DecayProtocol& protocol);

struct TrotterScanOptions {
  Eigen::Index dim = 120;
  double displacement_duration = 0.0;
  int order = 1;
  bool fit_2d = true;
  int workers = 1;
};
/// Params dt_us; metrics steps, level_db (covariance), fit_level_db (aligned
/// 2D fit), bestfit_level_db, infidelity_kpo (vs exact KPO over the run time).
SweepTable scan_trotter_dt(const std::vector<double>& dt_grid, double total_time, cplx beta,
                           const OscillatorParams& osc, double delta_d,
                           const TrotterScanOptions& options = {});

/// Index of an interior strict maximum of v, or -1.
int interior_argmax(const std::vector<double>& v);

struct DetuningRow {
  double beta_sq = 1.0;
  int steps = 12;
  Eigen::Index dim = 60;
};
struct DetuningOptions {
  int coarse_points = 16;
  double tolerance = 1e-4;  // MHz
  int workers = 1;
};
class BracketFailure : public Error {
 public:
  BracketFailure(const std::string& what, std::vector<std::pair<double, double>> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<std::pair<double, double>>& scan_trace() const { return trace_; }

 private:
  std::vector<std::pair<double, double>> trace_;
};
/// Peak covariance squeezing |xi| over the snapshots of a first-order run.
double trotter_peak_xi(const OscillatorParams& osc, double beta_sq, double delta_d, double dt,
                       int steps, Eigen::Index dim);
/// Params beta_sq; metrics delta_opt_mhz, peak_level_db. Coarse scan over
/// [0, 3 K |beta|^2] for a bracket, then golden-section refinement.
SweepTable optimize_detuning(const std::vector<DetuningRow>& rows, const OscillatorParams& osc,
                             double dt, const DetuningOptions& options = {});

struct QubitScanOptions {
  Eigen::Index cavity_dim = 180;
  double dt = 0.08;
  int workers = 1;
};
/// Params (beta_sq, step); metric p_excited. Displacements act on the cavity;
/// the qubit starts in its ground state.
SweepTable scan_qubit_excitation(const JcParams& jc, const std::vector<double>& beta_sq_grid,
                                 int steps, const QubitScanOptions& options = {});

}  // namespace kerrsqueeze
