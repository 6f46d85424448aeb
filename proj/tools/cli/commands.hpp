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

#include "config.hpp"
#include "manifest.hpp"

namespace kerrsqueeze::cli {

struct RunContext {
  OutputSet* out = nullptr;
  int workers = 1;
  std::uint64_t seed = 0;
};

/// Each command validates the whole config before computing, writes its
/// files through ctx.out and returns normally; faults propagate as exceptions.
void cmd_evolve(const Config& config, const RunContext& ctx);
void cmd_protocol(const Config& config, const RunContext& ctx);
void cmd_sweep(const Config& config, const RunContext& ctx);
void cmd_reconstruct(const Config& config, const RunContext& ctx);

}  // namespace kerrsqueeze::cli
