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

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/hamiltonian.hpp"

namespace kerrsqueeze {

// Rotation convention used everywhere: VirtualRotate(theta) maps
// a -> a e^{-i theta}, i.e. amplitudes pick up e^{-i theta n} and a coherent
// amplitude beta becomes beta e^{-i theta}.

class DegeneratePhase : public Error {
 public:
  using Error::Error;
};

struct DisplaceStep {
  cplx beta{0.0, 0.0};
  double duration = 0.0;  // us; 0 applies D(beta) exactly
};
struct EvolveStep {
  std::string hamiltonian_id;
  double t = 0.0;  // us
};
struct RotateStep {
  double theta = 0.0;  // rad
};
using ScheduleSegment = std::variant<DisplaceStep, EvolveStep, RotateStep>;

/// Ordered experiment sequence. Evolution segments refer to lab-frame
/// Hamiltonians by name.
class ProtocolSchedule {
 public:
  ProtocolSchedule& displace(cplx beta, double duration = 0.0);
  ProtocolSchedule& evolve(std::string hamiltonian_id, double t);
  ProtocolSchedule& rotate(double theta);

  const std::vector<ScheduleSegment>& segments() const { return segments_; }
  /// Net frame displacement after each segment.
  std::vector<cplx> frame_log() const;
  /// True when the net displacement returns to zero.
  bool closes(double tol = 1e-12) const;

  /// Runs the schedule on psi with exact operators. Finite-duration
  /// displacements are not supported here (see run_trotter_squeeze).
  QuantumState run(const std::map<std::string, CMatrix>& hamiltonians,
                   const QuantumState& psi) const;

 private:
  std::vector<ScheduleSegment> segments_;
};

/// e^{-i theta n} on amplitudes.
QuantumState apply_virtual_rotation(const QuantumState& psi, double theta);

/// Ring scan of W(|alpha| e^{i gamma}) over n_angles angles; the maximum marks
/// the anti-squeezed axis. Returns the rotation theta in (-pi/2, pi/2] such
/// that apply_virtual_rotation(state, theta) puts the squeezed axis on x.
/// Throws DegeneratePhase when the ring contrast is below 1e-3.
double calibrate_phase(const StateLike& state, double ring_radius = 0.7, int n_angles = 72);

struct CyclicOptions {
  bool calibrate = true;
  double ring_radius = 0.7;
  int n_angles = 72;
  /// Sampling interval for the lab-frame photon-number peak; 0 disables it.
  double photon_sample_dt = 0.01;
  double leakage_tol = kDefaultLeakageTolerance;
};

struct CycleSnapshot {
  int cycle = 0;
  double t = 0.0;
  QuantumState state;  // frame closed and rotation applied
  double rotation = 0.0;
};

struct CyclicResult {
  QuantumState final_state;
  std::vector<CycleSnapshot> snapshots;  // cycles 1..N
  double peak_photon_number = 0.0;       // lab frame, during the evolution
  double leakage_max = 0.0;
  ProtocolSchedule schedule;
};

/// D(beta), driven-Kerr evolution for cycles * period, D(-beta), then the
/// calibrated virtual rotation; snapshots close the frame at every cycle end.
CyclicResult run_cyclic_squeeze(const OscillatorParams& osc, const DriveParams& drive, cplx beta,
                                int cycles, double period, const QuantumState& psi0,
                                const CyclicOptions& options = {});

struct TrotterConfig {
  cplx beta{0.0, 0.0};
  double delta_t = 0.08;  // us
  int steps = 0;
  int order = 1;
  double delta_d = 0.0;  // MHz
  double displacement_duration = 0.0;  // us; 0 = instantaneous
  int pulse_slices = 8;

  void validate() const;
};

struct TrotterResult {
  QuantumState final_state;
  std::vector<QuantumState> snapshots;  // frame closed
  std::vector<int> snapshot_steps;
};

/// Alternates evolution in the +beta and -beta displaced frames (drive off).
/// Order 1: H_beta for dt/2 then H_-beta for dt/2 per step. Order 2: H_beta
/// dt/2, H_-beta dt, H_beta dt/2 per double step (steps must be even). A
/// finite displacement duration adds Kerr-only evolution in a frame swept
/// linearly between the old and new displacement at every frame change.
TrotterResult run_trotter_squeeze(const OscillatorParams& osc, const TrotterConfig& cfg,
                                  const QuantumState& psi0);

/// e^{-i H_KPO T} psi0 with Delta' = delta_d - 2 K |beta|^2.
QuantumState kpo_reference(const OscillatorParams& osc, cplx beta, double delta_d, double t,
                           const QuantumState& psi0);

}  // namespace kerrsqueeze
