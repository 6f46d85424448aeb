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


#include "kerrsqueeze/table_io.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace kerrsqueeze {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  for (const auto& p : table.param_names) os << p << ',';
  for (const auto& m : table.metric_names) os << m << ',';
  os << "status,message\n";
  for (const auto& r : table.records) {
    for (const auto& [k, v] : r.params) os << format_double(v) << ',';
    for (const auto& m : table.metric_names) {
      if (r.status == RecordStatus::kOk) os << format_double(r.metric(m));
      os << ',';
    }
    os << to_string(r.status) << ',' << csv_escape(r.message) << '\n';
  }
}

void write_wigner_csv(std::ostream& os, const WignerGrid& grid) {
  os << "x,p,w\n";
  for (Eigen::Index i = 0; i < grid.x_values.size(); ++i) {
    for (Eigen::Index j = 0; j < grid.p_values.size(); ++j) {
      os << format_double(grid.x_values[i]) << ',' << format_double(grid.p_values[j]) << ','
         << format_double(grid.values(i, j)) << '\n';
    }
  }
}

WignerGrid read_wigner_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw SchemaError("empty Wigner table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,p,w") throw SchemaError("Wigner table header must be 'x,p,w', got '" + line + "'");
  std::vector<double> xs, ps, ws;
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    double v[3];
    for (int c = 0; c < 3; ++c) {
      std::string cell;
      if (!std::getline(ls, cell, ',')) {
        throw SchemaError("row " + std::to_string(row) + " has fewer than 3 columns");
      }
      try {
        std::size_t used = 0;
        v[c] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw SchemaError("row " + std::to_string(row) + ": cannot parse '" + cell + "'");
      }
    }
    std::string extra;
    if (std::getline(ls, extra)) throw SchemaError("row " + std::to_string(row) + " has extra columns");
    xs.push_back(v[0]);
    ps.push_back(v[1]);
    ws.push_back(v[2]);
  }
  if (xs.empty()) throw SchemaError("Wigner table has no rows");
  // p varies fastest: count the rows sharing the first x
  std::size_t np = 1;
  while (np < xs.size() && xs[np] == xs[0]) ++np;
  if (xs.size() % np != 0) throw SchemaError("Wigner table is not a rectangular grid");
  const std::size_t nx = xs.size() / np;
  WignerGrid g;
  g.x_values.resize(static_cast<Eigen::Index>(nx));
  g.p_values.resize(static_cast<Eigen::Index>(np));
  g.values.resize(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(np));
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      const std::size_t k = i * np + j;
      if (xs[k] != xs[i * np] || ps[k] != ps[j]) {
        throw SchemaError("Wigner table is not a rectangular grid");
      }
      g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ws[k];
    }
    g.x_values[static_cast<Eigen::Index>(i)] = xs[i * np];
  }
  for (std::size_t j = 0; j < np; ++j) g.p_values[static_cast<Eigen::Index>(j)] = ps[j];
  if (nx < 2 || np < 2) throw SchemaError("Wigner grid needs at least 2 points per axis");
  g.dx = (g.x_values[g.x_values.size() - 1] - g.x_values[0]) / static_cast<double>(nx - 1);
  g.dp = (g.p_values[g.p_values.size() - 1] - g.p_values[0]) / static_cast<double>(np - 1);
  if (!(g.dx > 0.0) || !(g.dp > 0.0)) throw SchemaError("Wigner grid axes must be increasing");
  return g;
}

void write_trajectory_csv(std::ostream& os, const EvolutionResult& result) {
  os << "t,re_alpha,im_alpha,n,leakage";
  for (const auto& name : result.observable_names) os << ',' << csv_escape(name);
  os << '\n';
  for (const auto& s : result.samples) {
    os << format_double(s.t) << ',' << format_double(s.alpha.real()) << ','
       << format_double(s.alpha.imag()) << ',' << format_double(s.n) << ','
       << format_double(s.leakage);
    for (double v : s.values) os << ',' << format_double(v);
    os << '\n';
  }
}

}  // namespace kerrsqueeze
