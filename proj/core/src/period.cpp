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

#include "kerrsqueeze/period.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kerrsqueeze {

double extract_period(const std::vector<double>& values, double sample_dt) {
  if (!(sample_dt > 0.0)) throw InvalidParameter("sample_dt must be positive");
  const std::size_t n = values.size();
  if (n < 8) throw AperiodicTrace("trace too short for period extraction");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double spread = 0.0;
  for (double v : values) spread = std::max(spread, std::abs(v - mean));
  if (!(spread > 1e-12 * (1.0 + std::abs(mean)))) throw AperiodicTrace("trace has no variation");

  // Pearson correlation between the trace and its lagged copy. Each lag uses
  // its own segment means and variances, so an exactly periodic signal scores
  // 1 at its period regardless of where the window ends.
  const std::size_t max_lag = n / 2;
  const auto corr = [&](std::size_t lag) {
    const std::size_t m = n - lag;
    double sa = 0, sb = 0;
    for (std::size_t i = 0; i < m; ++i) {
      sa += values[i];
      sb += values[i + lag];
    }
    const double ma = sa / static_cast<double>(m), mb = sb / static_cast<double>(m);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = values[i] - ma, b = values[i + lag] - mb;
      sab += a * b;
      saa += a * a;
      sbb += b * b;
    }
    return saa > 0.0 && sbb > 0.0 ? sab / std::sqrt(saa * sbb) : 0.0;
  };
  std::vector<double> ac(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) ac[lag] = corr(lag);
  std::size_t lag = 1;
  while (lag <= max_lag && ac[lag] > 0.0) ++lag;  // leave the zero-lag lobe
  for (; lag < max_lag; ++lag) {
    if (ac[lag] >= ac[lag - 1] && ac[lag] >= ac[lag + 1] && ac[lag] > 0.5) {
      const double y0 = ac[lag - 1], y1 = ac[lag], y2 = ac[lag + 1];
      const double den = y0 - 2.0 * y1 + y2;
      const double off = den != 0.0 ? 0.5 * (y0 - y2) / den : 0.0;
      return (static_cast<double>(lag) + off) * sample_dt;
    }
  }
  throw AperiodicTrace("no secondary correlation peak above 0.5");
}

double period_law_abscissa(double K, double omega) {
  if (!(K > 0.0) || !(omega > 0.0)) throw InvalidParameter("K and Omega must be positive");
  return std::pow(kTwoPi * K, -1.0 / 3.0) * std::pow(kTwoPi * omega, -2.0 / 3.0);
}

PeriodLaw fit_period_law(double K, const std::vector<double>& omegas,
                         const std::vector<double>& periods) {
  if (omegas.size() != periods.size() || omegas.size() < 2) {
    throw InvalidParameter("period-law fit needs at least two (Omega, T) pairs");
  }
  const auto n = static_cast<Eigen::Index>(omegas.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = period_law_abscissa(K, omegas[static_cast<std::size_t>(i)]);
    a(i, 1) = 1.0;
    y[i] = periods[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
  PeriodLaw law{coef[0], coef[1], 0.0};
  law.rms = std::sqrt((a * coef - y).squaredNorm() / static_cast<double>(n));
  return law;
}

}  // namespace kerrsqueeze
