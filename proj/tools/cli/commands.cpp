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


#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "kerrsqueeze/evolve.hpp"
#include "kerrsqueeze/fit.hpp"
#include "kerrsqueeze/metrics.hpp"
#include "kerrsqueeze/mle.hpp"
#include "kerrsqueeze/period.hpp"
#include "kerrsqueeze/protocol.hpp"
#include "kerrsqueeze/sweep.hpp"
#include "kerrsqueeze/table_io.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace kerrsqueeze::cli {

using nlohmann::ordered_json;

namespace {

Eigen::Index read_dim(const Section& s, const std::string& key, int fallback = -1) {
  const int d = fallback < 0 ? s.integer(key) : s.integer_or(key, fallback);
  if (d < 2) throw ConfigError("'" + key + "' must be at least 2");
  return d;
}

int read_positive(const Section& s, const std::string& key, int fallback) {
  const int v = s.integer_or(key, fallback);
  if (v < 1) throw ConfigError("'" + s.path() + (s.path().empty() ? "" : ".") + key + "' must be >= 1");
  return v;
}

OscillatorParams oscillator_or_default(const Section& root) {
  return root.has("oscillator") ? read_oscillator(root.object("oscillator")) : OscillatorParams{};
}

DriveParams drive_or_default(const Section& s, const std::string& key = "drive") {
  return s.has(key) ? read_drive(s.object(key)) : DriveParams{};
}

int fock_hint(const StateSpec& spec) {
  if (const auto* f = std::get_if<FockSpec>(&spec)) return f->n;
  if (const auto* s = std::get_if<SqueezedFockSpec>(&spec)) return s->n;
  return 0;
}

std::string to_text(const std::function<void(std::ostream&)>& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json complex_json(cplx c) { return ordered_json::array({c.real(), c.imag()}); }

// Same sampling contract as trajectory(), stepping the master equation
// from sample to sample.
EvolutionResult lindblad_trajectory(const CMatrix& h, double kappa, const QuantumState& psi0,
                                    double duration, double sample_dt,
                                    const std::vector<Observable>& observables, double leakage_tol) {
  const Eigen::Index dim = psi0.dim();
  const CMatrix a = annihilation(dim);
  const CMatrix num = number_operator(dim);
  const std::vector<Collapse> collapse{{a, kappa}};
  DensityMatrix rho = DensityMatrix::from_state(psi0);
  std::vector<Sample> samples;
  double leakage_max = 0.0;
  const auto record = [&](double t) {
    Sample s;
    s.t = t;
    s.alpha = rho.expect_complex(a);
    s.n = rho.expect(num);
    s.leakage = rho.tail_population();
    for (const auto& o : observables) s.values.push_back(rho.expect(o.op));
    leakage_max = std::max(leakage_max, s.leakage);
    samples.push_back(std::move(s));
  };
  record(0.0);
  const long n_samples = static_cast<long>(std::floor(duration / sample_dt + 1e-9));
  for (long i = 1; i <= n_samples; ++i) {
    rho = evolve_lindblad(h, collapse, sample_dt, rho);
    record(static_cast<double>(i) * sample_dt);
  }
  std::vector<std::string> names;
  for (const auto& o : observables) names.push_back(o.name);
  return {rho, std::move(samples), std::move(names), leakage_max, leakage_max > leakage_tol};
}

}  // namespace

// ---------------------------------------------------------------------------
// evolve

void cmd_evolve(const Config& config, const RunContext& ctx) {
  const Section root(config.root, "");
  root.integer("schema_version");
  const Eigen::Index dim = read_dim(root, "dim");
  const OscillatorParams osc = oscillator_or_default(root);
  DriveParams drive = drive_or_default(root);
  const StateSpec spec = read_state(root.object("initial_state"));
  const double duration = root.number("duration");
  const double sample_dt = root.number("sample_dt");
  const double leakage_tol = root.number_or("leakage_tol", kDefaultLeakageTolerance);
  const std::vector<std::string> names =
      root.has("observables") ? root.strings("observables") : std::vector<std::string>{};
  root.finish();
  if (!(duration > 0.0)) throw ConfigError("'duration' must be positive");
  if (!(sample_dt > 0.0)) throw ConfigError("'sample_dt' must be positive");
  osc.validate();
  drive.validate();

  const CMatrix a = annihilation(dim);
  std::vector<Observable> observables;
  for (const auto& n : names) {
    if (n == "x") {
      observables.push_back({n, (a + a.adjoint()) / 2.0});
    } else if (n == "p") {
      observables.push_back({n, (a - a.adjoint()) / cplx(0.0, 2.0)});
    } else if (n == "n2") {
      const CMatrix num = number_operator(dim);
      observables.push_back({n, num * num});
    } else {
      throw ConfigError("unknown observable '" + n + "' (expected x, p or n2)");
    }
  }

  const QuantumState psi0 = make_state(spec, dim);
  const CMatrix h = build_driven_kerr(osc, drive, dim).elements;
  const EvolutionResult result =
      osc.kappa_c > 0.0
          ? lindblad_trajectory(h, osc.kappa_c, psi0, duration, sample_dt, observables, leakage_tol)
          : trajectory({Segment{h, duration}}, psi0, sample_dt, observables, leakage_tol);
  if (result.leakage_flagged) {
    std::cerr << "warning: tail population reached " << result.leakage_max
              << " (tolerance " << leakage_tol << "); increase dim\n";
  }
  ctx.out->write("trajectory.csv", to_text([&](std::ostream& os) { write_trajectory_csv(os, result); }));
}

// ---------------------------------------------------------------------------
// protocol

namespace {

struct AnalysisOptions {
  int grid_points = 81;
  double nsigma = 5.0;
  bool fit_2d = true;
  std::string level_metric = "fit2d";
};

AnalysisOptions read_analysis(const Section& root) {
  AnalysisOptions a;
  if (!root.has("analysis")) return a;
  const Section s = root.object("analysis");
  a.grid_points = read_positive(s, "grid_points", a.grid_points);
  a.nsigma = s.number_or("nsigma", a.nsigma);
  a.fit_2d = s.boolean_or("fit_2d", a.fit_2d);
  a.level_metric = s.string_or("level_metric", a.level_metric);
  s.finish();
  if (a.grid_points < 3) throw ConfigError("'analysis.grid_points' must be >= 3");
  if (!(a.nsigma > 0.0)) throw ConfigError("'analysis.nsigma' must be positive");
  if (a.level_metric != "fit2d" && a.level_metric != "bestfit" && a.level_metric != "covariance") {
    throw ConfigError("'analysis.level_metric' must be fit2d, bestfit or covariance");
  }
  if (a.level_metric == "fit2d" && !a.fit_2d) {
    throw ConfigError("'analysis.level_metric' fit2d needs 'analysis.fit_2d' enabled");
  }
  return a;
}

struct SnapshotIn {
  int index;
  double t;
  double rotation;
  QuantumState state;
};

}  // namespace

void cmd_protocol(const Config& config, const RunContext& ctx) {
  const Section root(config.root, "");
  root.integer("schema_version");
  const Eigen::Index dim = read_dim(root, "dim");
  const OscillatorParams osc = oscillator_or_default(root);
  const StateSpec spec =
      root.has("initial_state") ? read_state(root.object("initial_state")) : StateSpec{FockSpec{0}};
  const AnalysisOptions analysis = read_analysis(root);
  const Section p = root.object("protocol");
  const std::string kind = p.string("kind");
  root.finish();
  osc.validate();

  const QuantumState psi0 = make_state(spec, dim);
  std::vector<SnapshotIn> snaps;
  ordered_json fits;
  fits["kind"] = kind;

  if (kind == "cyclic") {
    DriveParams drive = drive_or_default(p);
    const cplx beta = p.complex("beta");
    const int cycles = p.integer("cycles");
    std::optional<double> period_in;
    if (p.has("period")) period_in = p.number("period");
    const double window = p.number_or("trace_window", 12.0);
    const double trace_dt = p.number_or("trace_dt", 0.002);
    CyclicOptions opts;
    opts.calibrate = p.boolean_or("calibrate", true);
    opts.leakage_tol = p.number_or("leakage_tol", opts.leakage_tol);
    p.finish();
    drive.validate();
    if (cycles < 0) throw ConfigError("'protocol.cycles' must be >= 0");
    if (period_in && !(*period_in > 0.0)) throw ConfigError("'protocol.period' must be positive");
    double period = period_in.value_or(0.0);
    if (!period_in && cycles > 0) {
      period = extract_period(cyclic_photon_trace(osc, drive, beta, psi0, window, trace_dt), trace_dt);
    }
    if (period_in || cycles > 0) {
      fits["period_us"] = period;
      fits["period_source"] = period_in ? "config" : "extracted";
    } else {
      fits["period_us"] = nullptr;
      fits["period_source"] = "none";
    }
    const CyclicResult run =
        cycles > 0 ? run_cyclic_squeeze(osc, drive, beta, cycles, period, psi0, opts) : CyclicResult{psi0, {}, 0, 0, {}};
    for (const auto& s : run.snapshots) snaps.push_back({s.cycle, s.t, s.rotation, s.state});
    fits["peak_photon_number"] = run.peak_photon_number;
  } else if (kind == "trotter") {
    TrotterConfig cfg;
    cfg.beta = p.complex("beta");
    cfg.delta_t = p.number("delta_t");
    cfg.steps = p.integer("steps");
    cfg.order = p.integer_or("order", 1);
    cfg.delta_d = p.number_or("delta_d", 0.0);
    cfg.displacement_duration = p.number_or("displacement_duration", 0.0);
    cfg.pulse_slices = p.integer_or("pulse_slices", cfg.pulse_slices);
    const double leakage_tol = p.number_or("leakage_tol", kDefaultLeakageTolerance);
    p.finish();
    cfg.validate();
    const TrotterResult run = run_trotter_squeeze(osc, cfg, psi0);
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
      run.snapshots[i].check_leakage(leakage_tol);
      const int step = run.snapshot_steps[i];
      snaps.push_back({step, step * cfg.delta_t, 0.0, run.snapshots[i]});
    }
  } else {
    throw ConfigError("'protocol.kind' must be cyclic or trotter (got '" + kind + "')");
  }
  if (snaps.empty()) snaps.push_back({0, 0.0, 0.0, psi0});

  const int hint = fock_hint(spec);
  ordered_json rows = ordered_json::array();
  std::vector<double> xi_primary;
  double peak = 0.0;
  for (const auto& s : snaps) {
    char name[32];
    std::snprintf(name, sizeof(name), "wigner_%04d.csv", s.index);
    const WignerGrid grid = wigner(s.state, covering_grid(s.state, analysis.grid_points, analysis.nsigma), ctx.workers);
    ctx.out->write(name, to_text([&](std::ostream& os) { write_wigner_csv(os, grid); }));

    ordered_json row;
    row["index"] = s.index;
    row["t_us"] = s.t;
    row["rotation"] = s.rotation;
    row["wigner_file"] = name;
    row["mean_photon_number"] = s.state.mean_photon_number();
    const VarianceSqueezing cov = variance_squeezing(s.state);
    const double cov_xi = std::max(0.0, cov.xi_abs);
    row["covariance"] = {{"xi_abs", cov_xi}, {"phi", cov.phi}, {"level_db", squeezing_level_db(cov_xi)}};
    const BestFitSqueezed best = best_fit_squeezed(s.state);
    row["bestfit"] = {{"xi_abs", best.xi_abs},
                      {"phi", best.phi},
                      {"alpha", complex_json(best.alpha)},
                      {"fidelity", best.fidelity},
                      {"level_db", squeezing_level_db(best.xi_abs)}};
    double xi = analysis.level_metric == "bestfit" ? best.xi_abs : cov_xi;
    if (analysis.fit_2d) {
      const SqueezeFit f = fit_state_aligned(s.state, hint, analysis.grid_points, analysis.nsigma);
      row["fit2d"] = {{"xi_abs", f.xi_abs},
                      {"phi", f.phi},
                      {"n_fock", f.n_fock},
                      {"amplitude", f.amplitude},
                      {"residual_rms", f.residual_rms},
                      {"iterations", f.iterations},
                      {"level_db", squeezing_level_db(f.xi_abs)}};
      if (analysis.level_metric == "fit2d") xi = f.xi_abs;
    }
    row["level_db"] = squeezing_level_db(xi);
    row["log_negativity"] = wigner_log_negativity(grid);
    row["fisher_information"] = fisher_information(grid);
    if (grid.coverage_warning) row["coverage_warning"] = *grid.coverage_warning;
    xi_primary.push_back(xi);
    peak = std::max(peak, squeezing_level_db(xi));
    rows.push_back(row);
  }
  fits["level_metric"] = analysis.level_metric;
  fits["peak_level_db"] = peak;
  fits["slope_db_per_cycle"] = snaps.front().index > 0 ? linear_region_slope(xi_primary) : 0.0;
  fits["snapshots"] = rows;
  ctx.out->write("fits.json", dump(fits));
}

// ---------------------------------------------------------------------------
// sweep

void cmd_sweep(const Config& config, const RunContext& ctx) {
  const Section root(config.root, "");
  root.integer("schema_version");
  const OscillatorParams osc = oscillator_or_default(root);
  const Section s = root.object("sweep");
  const std::string kind = s.string("kind");
  root.finish();
  osc.validate();

  SweepTable table;
  if (kind == "drive" || kind == "period") {
    DriveScanOptions o;
    o.dim = read_dim(s, "dim", static_cast<int>(o.dim));
    o.trace_window = s.number_or("trace_window", o.trace_window);
    o.trace_dt = s.number_or("trace_dt", o.trace_dt);
    o.workers = ctx.workers;
    const cplx beta = s.complex("beta");
    if (kind == "drive") {
      const auto deltas = s.grid("delta_d");
      const auto omegas = s.grid("omega_d");
      const int cycles = s.integer("cycles");
      s.finish();
      table = scan_drive_params(deltas, omegas, osc, beta, cycles, o);
    } else {
      const auto omegas = s.grid("omega_d");
      const double delta = s.number("delta_d");
      s.finish();
      table = scan_period(omegas, delta, osc, beta, o);
    }
  } else if (kind == "decay") {
    DecayProtocol d;
    d.drive = drive_or_default(s);
    d.beta = s.complex_or("beta", d.beta);
    d.period = s.number_or("period", d.period);
    d.cycles = read_positive(s, "cycles", d.cycles);
    d.dim = read_dim(s, "dim", static_cast<int>(d.dim));
    d.step = s.number_or("step", d.step);
    d.workers = ctx.workers;
    const auto ratios = s.grid("ratio");
    s.finish();
    d.drive.validate();
    table = scan_decay(ratios, osc, d);
  } else if (kind == "trotter_dt") {
    TrotterScanOptions o;
    o.dim = read_dim(s, "dim", static_cast<int>(o.dim));
    o.displacement_duration = s.number_or("displacement_duration", 0.0);
    o.order = s.integer_or("order", 1);
    o.fit_2d = s.boolean_or("fit_2d", true);
    o.workers = ctx.workers;
    const auto dts = s.grid("dt");
    const double total = s.number("total_time");
    const cplx beta = s.complex("beta");
    const double delta = s.number_or("delta_d", 0.0);
    s.finish();
    table = scan_trotter_dt(dts, total, beta, osc, delta, o);
  } else if (kind == "detuning") {
    std::vector<DetuningRow> rows;
    for (const auto& r : s.objects("rows")) {
      DetuningRow row;
      row.beta_sq = r.number("beta_sq");
      row.steps = read_positive(r, "steps", row.steps);
      row.dim = read_dim(r, "dim", static_cast<int>(row.dim));
      r.finish();
      rows.push_back(row);
    }
    DetuningOptions o;
    o.coarse_points = read_positive(s, "coarse_points", o.coarse_points);
    o.tolerance = s.number_or("tolerance", o.tolerance);
    o.workers = ctx.workers;
    const double dt = s.number_or("dt", 0.08);
    s.finish();
    table = optimize_detuning(rows, osc, dt, o);
  } else if (kind == "qubit") {
    const JcParams jc = s.has("jc") ? read_jc(s.object("jc")) : JcParams{};
    QubitScanOptions o;
    o.cavity_dim = read_dim(s, "cavity_dim", static_cast<int>(o.cavity_dim));
    o.dt = s.number_or("dt", o.dt);
    o.workers = ctx.workers;
    const auto grid = s.grid("beta_sq");
    const int steps = read_positive(s, "steps", 1);
    s.finish();
    jc.validate();
    table = scan_qubit_excitation(jc, grid, steps, o);
  } else {
    throw ConfigError("'sweep.kind' must be drive, period, decay, trotter_dt, detuning or qubit (got '" +
                      kind + "')");
  }

  const std::string csv = to_text([&](std::ostream& os) { write_sweep_csv(os, table); });
  ctx.out->write("sweep.csv", csv);

  std::map<std::string, int> counts;
  for (const auto& r : table.records) ++counts[to_string(r.status)];
  ordered_json meta;
  meta["sweep_id"] = sha256_hex(kind + ":" + config.sha256).substr(0, 16);
  meta["kind"] = kind;
  meta["config_sha256"] = config.sha256;
  meta["code_version"] = KERRSQUEEZE_VERSION;
  meta["table"] = "sweep.csv";
  meta["table_sha256"] = sha256_hex(csv);
  meta["param_names"] = table.param_names;
  meta["metric_names"] = table.metric_names;
  meta["rows"] = table.records.size();
  meta["status_counts"] = counts;
  ctx.out->write("sweep.meta.json", dump(meta));

  const int failed = static_cast<int>(table.records.size()) - (counts.count("ok") ? counts["ok"] : 0);
  if (failed > 0) {
    std::cerr << "warning: " << failed << " of " << table.records.size()
              << " sweep points did not complete; see the status column\n";
  }
}

// ---------------------------------------------------------------------------
// reconstruct

void cmd_reconstruct(const Config& config, const RunContext& ctx) {
  const Section root(config.root, "");
  root.integer("schema_version");
  const std::filesystem::path csv_path = config.source.parent_path() / root.string("wigner_csv");
  const Eigen::Index dim = read_dim(root, "dim");
  const double noise = root.number_or("noise_sigma", 0.0);
  MleOptions mle;
  if (root.has("mle")) {
    const Section m = root.object("mle");
    mle.max_iterations = read_positive(m, "max_iterations", mle.max_iterations);
    mle.tolerance = m.number_or("tolerance", mle.tolerance);
    mle.sigma = m.number_or("sigma", mle.sigma);
    m.finish();
  }
  std::optional<StateSpec> reference;
  if (root.has("reference")) reference = read_state(root.object("reference"));
  root.finish();
  if (noise < 0.0) throw ConfigError("'noise_sigma' must be non-negative");
  if (!(mle.sigma > 0.0)) throw ConfigError("'mle.sigma' must be positive");

  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot read Wigner CSV '" + csv_path.string() + "'");
  const WignerGrid grid = read_wigner_csv(in);
  std::vector<WignerSample> samples = samples_from_grid(grid);
  if (noise > 0.0) {
    std::mt19937_64 rng(ctx.seed);
    std::normal_distribution<double> gauss(0.0, noise);
    for (auto& s : samples) s.w += gauss(rng);
  }
  const MleResult result = mle_reconstruct(samples, dim, mle);

  ordered_json rho;
  rho["dim"] = dim;
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(dim * dim));
  im.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      re.push_back(result.rho.elements()(i, j).real());
      im.push_back(result.rho.elements()(i, j).imag());
    }
  }
  rho["real"] = re;
  rho["imag"] = im;
  ctx.out->write("density_matrix.json", rho.dump() + "\n");

  ordered_json report;
  report["samples"] = samples.size();
  report["dim"] = dim;
  report["noise_sigma"] = noise;
  report["iterations"] = result.iterations;
  report["log_likelihood"] = result.log_likelihood.empty() ? 0.0 : result.log_likelihood.back();
  report["trace"] = result.rho.trace();
  report["min_eigenvalue"] = result.rho.min_eigenvalue();
  report["purity"] = result.rho.purity();
  if (reference) {
    report["fidelity"] = fidelity(make_state(*reference, dim), result.rho);
  } else {
    report["fidelity"] = nullptr;
  }
  ctx.out->write("report.json", dump(report));
}

}  // namespace kerrsqueeze::cli
