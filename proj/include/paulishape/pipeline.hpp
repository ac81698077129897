// Copyright 2026 The paulishape developers
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

#include <filesystem>
#include <string>

#include "json.hpp"

namespace ps {

/// Shared run options for the pipeline commands. `base_dir` anchors relative
/// paths found inside configs (normally the config file's directory).
struct RunContext {
  std::uint64_t seed = 1;
  int threads = 1;
  std::filesystem::path out_dir = ".";
  std::filesystem::path base_dir = ".";
};

/// Run the three learning schemes on the configured noisy gate; writes
/// learned.json and curves.csv into out_dir. Returns 0, or 2 when any fit
/// failed to converge. Configuration errors throw ConfigError.
int run_learn(const nlohmann::json& config, const RunContext& ctx);

/// Build a cancellation or amplification plan from a learned or explicit
/// gate; writes plan.json. Returns 0.
int run_shape(const nlohmann::json& config, const RunContext& ctx);

/// Monte Carlo estimate under a shaping plan; writes estimate.json with the
/// exact reference value and the bias in standard errors. Returns 0.
int run_simulate(const nlohmann::json& config, const RunContext& ctx);

/// Closed-form sweeps (Fisher information, concentration, overhead curves);
/// writes one CSV per requested analysis plus analyze.json. Returns 0.
int run_analyze(const nlohmann::json& config, const RunContext& ctx);

/// Strict-schema helpers shared by the commands and tests.
nlohmann::json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
std::string now_iso8601();

}  // namespace ps
