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

#include <string>

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace kerrsqueeze {

class FitFailure : public Error {
 public:
  FitFailure(const std::string& what, int iterations, double residual_rms)
      : Error(what), iterations_(iterations), residual_rms_(residual_rms) {}
  int iterations() const { return iterations_; }
  double residual_rms() const { return residual_rms_; }

 private:
  int iterations_;
  double residual_rms_;
};

struct SqueezeFit {
  double xi_abs = 0.0;
  double phi = 0.0;  // squeeze phase in [0, 2pi)
  int n_fock = 0;
  double amplitude = 1.0;
  struct {
    double xi_abs = 0.0;
    double phi = 0.0;
    double amplitude = 0.0;
  } ci95;
  double residual_rms = 0.0;
  int iterations = 0;
};

/// Samples of a 1D Wigner cut: W(coord) along x (p = 0) or along p (x = 0).
struct Cut {
  Eigen::VectorXd coord;
  Eigen::VectorXd values;
};

/// Global least-squares fit of A exp(-2 e^{2s} x^2) and A exp(-2 e^{-2s} p^2)
/// with shared s and A. A negative s means the p quadrature is the squeezed
/// one; it is reported as |xi| = |s| with phi = pi.
SqueezeFit fit_1d_cuts(const Cut& cut_x, const Cut& cut_p, int max_iterations = 400);

struct Fit2dOptions {
  /// Also try N = hint - 1 and hint + 1 and keep the best residual.
  bool select_n = false;
  int max_iterations = 4000;
};

/// Least-squares fit of A times the squeezed-Fock Wigner function to a grid
/// over (|xi|, phi, A); the simplex runs from phi in {0, pi/4, pi/2, 3pi/4}.
SqueezeFit fit_2d_wigner(const WignerGrid& grid, int n_fock_hint, const Fit2dOptions& options = {});

/// Phase-aligned pipeline: rotates psi so the covariance's squeezed axis lies
/// on x, evaluates W on a grid spanning nsigma deviations per quadrature about
/// the centroid (coordinates relative to the centroid) and runs fit_2d_wigner.
SqueezeFit fit_state_aligned(const QuantumState& psi, int n_fock_hint, int points = 81,
                             double nsigma = 5.0, const Fit2dOptions& options = {});

/// Closest displaced squeezed vacuum D(alpha) S(xi)|0> by fidelity.
struct BestFitSqueezed {
  double xi_abs = 0.0;
  double phi = 0.0;
  cplx alpha{0.0, 0.0};
  double fidelity = 0.0;
};
BestFitSqueezed best_fit_squeezed(const QuantumState& psi, bool with_displacement = true);

}  // namespace kerrsqueeze
