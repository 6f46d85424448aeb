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

#include <vector>

#include "kerrsqueeze/fock.hpp"

namespace kerrsqueeze {

class AperiodicTrace : public Error {
 public:
  using Error::Error;
};

/// Period of a uniformly sampled trace from the first strong peak of the
/// correlation coefficient between the trace and its lagged copy, refined by
/// a parabola through the peak and its neighbours. The peak must exceed 0.5.
double extract_period(const std::vector<double>& values, double sample_dt);

/// T = a x + b with x = (2pi K)^{-1/3} (2pi Omega)^{-2/3}, frequencies in MHz.
struct PeriodLaw {
  double a = 0.0;
  double b = 0.0;
  double rms = 0.0;
};
PeriodLaw fit_period_law(double K, const std::vector<double>& omegas,
                         const std::vector<double>& periods);
double period_law_abscissa(double K, double omega);

}  // namespace kerrsqueeze
