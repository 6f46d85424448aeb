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

#include <iosfwd>
#include <string>

#include "kerrsqueeze/evolve.hpp"
#include "kerrsqueeze/sweep.hpp"
#include "kerrsqueeze/wigner.hpp"

namespace kerrsqueeze {

/// A table on disk does not have the expected columns or shape.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Round-trip formatting for doubles (%.17g).
std::string format_double(double v);

/// Columns: parameters, metrics, status, message. Metrics of failed records
/// are left empty.
void write_sweep_csv(std::ostream& os, const SweepTable& table);

/// Long format with header "x,p,w", x varying slowest.
void write_wigner_csv(std::ostream& os, const WignerGrid& grid);
/// Reads a grid written by write_wigner_csv; throws SchemaError on a bad
/// header, a non-rectangular grid or unparsable numbers.
WignerGrid read_wigner_csv(std::istream& is);

/// Columns: t, re_alpha, im_alpha, n, leakage, then one per observable.
void write_trajectory_csv(std::ostream& os, const EvolutionResult& result);

}  // namespace kerrsqueeze
