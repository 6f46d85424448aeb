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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace kerrsqueeze::cli {

std::string sha256_hex(const std::string& bytes);

/// Collects every emitted file; all writes go through here so each file is
/// listed exactly once with the checksum of the bytes written.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return dir_; }
  void write(const std::string& name, const std::string& bytes);

  struct Entry {
    std::string name;
    std::string sha256;
    std::uintmax_t bytes;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::filesystem::path dir_;
  std::vector<Entry> entries_;
};

struct ManifestInfo {
  std::string command;
  std::string config_path;
  std::string config_sha256;
  std::uint64_t seed = 0;
  int workers = 1;
  double wall_time_s = 0.0;
};

/// Writes manifest.json (not itself listed) into the output directory.
void write_manifest(const OutputSet& out, const ManifestInfo& info);

}  // namespace kerrsqueeze::cli
