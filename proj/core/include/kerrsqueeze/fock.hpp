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

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <Eigen/Dense>

namespace kerrsqueeze {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDefaultLeakageTolerance = 1e-7;

// Error hierarchy. Everything thrown by the library derives from Error so the
// CLI can map it onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidDimension : public Error {
 public:
  using Error::Error;
};
class InvalidParameter : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class TruncationFault : public Error {
 public:
  TruncationFault(const std::string& what, double leakage)
      : Error(what), leakage_(leakage) {}
  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

/// Dense operator in the truncated Fock basis.
struct OperatorMatrix {
  CMatrix elements;
  bool hermitian = false;
  /// Set when the operator was built outside its comfortable cutoff budget.
  std::optional<std::string> truncation_warning;

  Eigen::Index dim() const { return elements.rows(); }
  /// max |A - A^dagger|
  double hermiticity_defect() const;
};

/// Normalized pure state over a truncated Fock basis.
class QuantumState {
 public:
  /// Normalizes on construction; a zero vector throws InvalidParameter.
  explicit QuantumState(CVector amplitudes);

  const CVector& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }
  cplx operator[](Eigen::Index n) const { return amps_[n]; }

  /// Sum of |c_n|^2 over the top 10% of basis indices (at least two).
  double tail_population() const;
  /// Throws TruncationFault when tail_population() exceeds tol.
  void check_leakage(double tol = kDefaultLeakageTolerance) const;

  double expect(const CMatrix& op) const;
  cplx expect_complex(const CMatrix& op) const;
  double mean_photon_number() const;

 private:
  CVector amps_;
};

/// Hermitian, unit-trace, PSD density matrix.
class DensityMatrix {
 public:
  /// Validates the invariants (Hermitian within 1e-10 after symmetrization,
  /// trace 1 within 1e-8, min eigenvalue >= -1e-8) and throws InvalidParameter
  /// on violation. Pass validate=false for intermediate integrator states.
  explicit DensityMatrix(CMatrix elements, bool validate = true);
  static DensityMatrix from_state(const QuantumState& psi);

  const CMatrix& elements() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  double trace() const { return rho_.trace().real(); }
  double purity() const;
  double min_eigenvalue() const;
  double tail_population() const;
  double expect(const CMatrix& op) const;
  cplx expect_complex(const CMatrix& op) const;

 private:
  CMatrix rho_;
};

using StateLike = std::variant<QuantumState, DensityMatrix>;

/// Annihilation and creation operators (a, a^dagger). Throws for dim < 2.
std::pair<OperatorMatrix, OperatorMatrix> ladder_operators(Eigen::Index dim);
CMatrix annihilation(Eigen::Index dim);
CMatrix number_operator(Eigen::Index dim);
/// a^dagger^i a^j, exact matrix elements in the truncated basis.
CMatrix normal_ordered(int i, int j, Eigen::Index dim);

/// D(beta) = exp(beta a^dagger - beta^* a) of the truncated generator.
OperatorMatrix displacement_operator(cplx beta, Eigen::Index dim);
/// S(xi) = exp((xi^* a^2 - xi a^dagger^2) / 2) of the truncated generator.
OperatorMatrix squeeze_operator(cplx xi, Eigen::Index dim);

/// exp(G) for anti-Hermitian G via eigendecomposition of the Hermitian iG.
CMatrix exp_anti_hermitian(const CMatrix& generator);

struct FockSpec {
  int n = 0;
};
struct CoherentSpec {
  cplx beta{0.0, 0.0};
};
struct SqueezedFockSpec {
  cplx xi{0.0, 0.0};
  int n = 0;
};
using StateSpec = std::variant<FockSpec, CoherentSpec, SqueezedFockSpec>;

/// Builds |N>, |beta> or S(xi)|N>. Coherent and squeezed states are computed
/// in a padded basis and cut back to dim; the discarded weight is checked
/// against the leakage tolerance.
QuantumState make_state(const StateSpec& spec, Eigen::Index dim,
                        double leakage_tol = kDefaultLeakageTolerance);

/// Squeezed coherent state D(alpha) S(xi)|0> from the annihilation-condition
/// recursion. Normalized in the truncated basis.
QuantumState squeezed_coherent_state(cplx xi, cplx alpha, Eigen::Index dim);

double fidelity(const QuantumState& a, const QuantumState& b);
double fidelity(const QuantumState& a, const DensityMatrix& b);
double fidelity(const DensityMatrix& a, const QuantumState& b);
/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
double fidelity(const StateLike& a, const StateLike& b);

/// e^{i theta n} applied to amplitudes is a phase-space rotation by +theta.
QuantumState rotate(const QuantumState& psi, double theta);

/// Cutoff heuristics. Coherent work: |beta|^2 + 6|beta| + 20. Squeezed work:
/// 4 e^{2|xi|} + 20.
Eigen::Index suggest_dim_coherent(cplx beta);
Eigen::Index suggest_dim_squeezed(cplx xi);

}  // namespace kerrsqueeze
