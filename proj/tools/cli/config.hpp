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

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kerrsqueeze/fock.hpp"
#include "kerrsqueeze/hamiltonian.hpp"

namespace kerrsqueeze::cli {

inline constexpr int kSchemaVersionMin = 1;
inline constexpr int kSchemaVersionMax = 1;

/// Malformed or invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict view of a JSON object: every key must be read exactly through this
/// view, and finish() rejects any key that was never asked for.
class Section {
 public:
  Section(const nlohmann::json& j, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int fallback) const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::string string(const std::string& key) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  std::vector<std::string> strings(const std::string& key) const;
  cplx complex(const std::string& key) const;
  cplx complex_or(const std::string& key, cplx fallback) const;
  /// A list of numbers, or {"start", "stop", "num"} for an inclusive linspace.
  std::vector<double> grid(const std::string& key) const;
  Section object(const std::string& key) const;
  std::vector<Section> objects(const std::string& key) const;
  const std::string& path() const { return path_; }

  void finish() const;

 private:
  const nlohmann::json& at(const std::string& key) const;
  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const nlohmann::json* j_;
  std::string path_;
  mutable std::set<std::string> used_;
};

struct Config {
  nlohmann::json root;
  std::filesystem::path source;
  std::string sha256;
};

/// Reads and parses the file and checks schema_version.
Config load_config(const std::filesystem::path& path);

OscillatorParams read_oscillator(const Section& s);
DriveParams read_drive(const Section& s);
JcParams read_jc(const Section& s);
/// {"kind": "fock"|"coherent"|"squeezed_fock", ...}
StateSpec read_state(const Section& s);

}  // namespace kerrsqueeze::cli
