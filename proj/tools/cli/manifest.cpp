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


#include "manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <stdexcept>

namespace kerrsqueeze::cli {

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

OutputSet::OutputSet(std::filesystem::path directory) : dir_(std::move(directory)) {
  std::filesystem::create_directories(dir_);
}

void OutputSet::write(const std::string& name, const std::string& bytes) {
  for (const auto& e : entries_) {
    if (e.name == name) throw std::logic_error("output '" + name + "' written twice");
  }
  std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
  f << bytes;
  f.close();
  if (!f) throw std::runtime_error("cannot write '" + (dir_ / name).string() + "'");
  entries_.push_back({name, sha256_hex(bytes), bytes.size()});
}

void write_manifest(const OutputSet& out, const ManifestInfo& info) {
  nlohmann::ordered_json m;
  m["tool"] = "kerrsqueeze";
  m["tool_version"] = KERRSQUEEZE_VERSION;
  m["command"] = info.command;
  m["config"] = {{"path", info.config_path}, {"sha256", info.config_sha256}};
  m["seed"] = info.seed;
  m["workers"] = info.workers;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m["timestamp"] = stamp;
  m["wall_time_s"] = info.wall_time_s;
  auto files = nlohmann::ordered_json::array();
  for (const auto& e : out.entries()) {
    files.push_back({{"path", e.name}, {"sha256", e.sha256}, {"bytes", e.bytes}});
  }
  m["files"] = files;
  std::ofstream f(out.directory() / "manifest.json", std::ios::binary | std::ios::trunc);
  f << m.dump(2) << '\n';
  if (!f) throw std::runtime_error("cannot write manifest.json");
}

}  // namespace kerrsqueeze::cli
