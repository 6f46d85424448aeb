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


#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "manifest.hpp"

namespace kerrsqueeze::cli {

using nlohmann::json;

Section::Section(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) throw ConfigError("'" + (path_.empty() ? "<root>" : path_) + "' must be an object");
}

bool Section::has(const std::string& key) const { return j_->contains(key); }

const json& Section::at(const std::string& key) const {
  used_.insert(key);
  if (!j_->contains(key)) throw ConfigError("missing required key '" + where(key) + "'");
  return (*j_)[key];
}

double Section::number(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number()) throw ConfigError("'" + where(key) + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("'" + where(key) + "' must be finite");
  return d;
}

double Section::number_or(const std::string& key, double fallback) const {
  used_.insert(key);
  return has(key) ? number(key) : fallback;
}

int Section::integer(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number_integer()) throw ConfigError("'" + where(key) + "' must be an integer");
  return v.get<int>();
}

int Section::integer_or(const std::string& key, int fallback) const {
  used_.insert(key);
  return has(key) ? integer(key) : fallback;
}

bool Section::boolean_or(const std::string& key, bool fallback) const {
  used_.insert(key);
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (!v.is_boolean()) throw ConfigError("'" + where(key) + "' must be true or false");
  return v.get<bool>();
}

std::string Section::string(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_string()) throw ConfigError("'" + where(key) + "' must be a string");
  return v.get<std::string>();
}

std::string Section::string_or(const std::string& key, const std::string& fallback) const {
  used_.insert(key);
  return has(key) ? string(key) : fallback;
}

std::vector<std::string> Section::strings(const std::string& key) const {
  const json& v = at(key);
  std::vector<std::string> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) break;
      out.push_back(e.get<std::string>());
    }
  }
  if (!v.is_array() || out.size() != v.size()) throw ConfigError("'" + where(key) + "' must be a list of strings");
  return out;
}

cplx Section::complex(const std::string& key) const {
  const json& v = at(key);
  if (v.is_number()) return {number(key), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_object()) {
    Section s(v, where(key));
    const cplx c(s.number_or("re", 0.0), s.number_or("im", 0.0));
    s.finish();
    return c;
  }
  throw ConfigError("'" + where(key) + "' must be a number, [re, im] or {\"re\", \"im\"}");
}

cplx Section::complex_or(const std::string& key, cplx fallback) const {
  used_.insert(key);
  return has(key) ? complex(key) : fallback;
}

std::vector<double> Section::grid(const std::string& key) const {
  const json& v = at(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError("'" + where(key) + "' must contain only numbers");
      out.push_back(e.get<double>());
    }
  } else if (v.is_object()) {
    Section s(v, where(key));
    const double start = s.number("start"), stop = s.number("stop");
    const int num = s.integer("num");
    s.finish();
    if (num < 1) throw ConfigError("'" + where(key) + ".num' must be >= 1");
    for (int i = 0; i < num; ++i) out.push_back(num == 1 ? start : start + (stop - start) * i / (num - 1));
  } else {
    throw ConfigError("'" + where(key) + "' must be a list or {\"start\", \"stop\", \"num\"}");
  }
  if (out.empty()) throw ConfigError("'" + where(key) + "' must not be empty");
  return out;
}

Section Section::object(const std::string& key) const { return Section(at(key), where(key)); }

std::vector<Section> Section::objects(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array()) throw ConfigError("'" + where(key) + "' must be a list of objects");
  std::vector<Section> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], where(key) + "[" + std::to_string(i) + "]");
  return out;
}

void Section::finish() const {
  for (const auto& item : j_->items()) {
    if (!used_.count(item.key())) throw ConfigError("unknown key '" + where(item.key()) + "'");
  }
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Config c;
  c.source = path;
  c.sha256 = sha256_hex(text);
  try {
    c.root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!c.root.is_object()) throw ConfigError("config must be a JSON object");
  if (!c.root.contains("schema_version") || !c.root["schema_version"].is_number_integer()) {
    throw ConfigError("missing required integer key 'schema_version'");
  }
  const int v = c.root["schema_version"].get<int>();
  if (v < kSchemaVersionMin || v > kSchemaVersionMax) {
    throw ConfigError("unsupported schema_version " + std::to_string(v) + " (supported " +
                      std::to_string(kSchemaVersionMin) + ".." + std::to_string(kSchemaVersionMax) + ")");
  }
  return c;
}

OscillatorParams read_oscillator(const Section& s) {
  OscillatorParams o;
  o.K = s.number_or("K", o.K);
  o.K2 = s.number_or("K2", o.K2);
  o.K3 = s.number_or("K3", o.K3);
  o.kappa_c = s.number_or("kappa_c", o.kappa_c);
  s.finish();
  return o;
}

DriveParams read_drive(const Section& s) {
  DriveParams d;
  d.delta_d = s.number_or("delta_d", 0.0);
  d.omega_d = s.number_or("omega_d", 0.0);
  d.phase = s.number_or("phase", 0.0);
  s.finish();
  return d;
}

JcParams read_jc(const Section& s) {
  JcParams jc;
  jc.cavity_freq = s.number_or("cavity_freq", jc.cavity_freq);
  jc.qubit_freq = s.number_or("qubit_freq", jc.qubit_freq);
  jc.eta_q = s.number_or("eta_q", jc.eta_q);
  jc.g_qc = s.number_or("g_qc", jc.g_qc);
  jc.qubit_levels = s.integer_or("qubit_levels", jc.qubit_levels);
  s.finish();
  return jc;
}

StateSpec read_state(const Section& s) {
  const std::string kind = s.string("kind");
  StateSpec spec;
  if (kind == "fock") {
    spec = FockSpec{s.integer_or("n", 0)};
  } else if (kind == "coherent") {
    spec = CoherentSpec{s.complex("beta")};
  } else if (kind == "squeezed_fock") {
    spec = SqueezedFockSpec{std::polar(s.number("xi_abs"), s.number_or("xi_phase", 0.0)), s.integer_or("n", 0)};
  } else {
    throw ConfigError("'" + s.path() + ".kind' must be fock, coherent or squeezed_fock (got '" + kind + "')");
  }
  s.finish();
  return spec;
}

}  // namespace kerrsqueeze::cli
