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

// Command-line front end. All functionality lives behind the shared
// library's C API; this binary only parses flags, reads the config file, and
// maps statuses to exit codes (0 = ok, 1 = config/input error,
// 2 = convergence warning).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "paulishape/paulishape.h"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON configuration file")->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "random seed");
  cmd->add_option("--threads", args.threads, "worker threads");
}

int dispatch(ps_status (*fn)(const char*, const char*, const char*, uint64_t, int),
             const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) {
    std::cerr << "error: cannot open config file " << args.config_path << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string config = buf.str();
  const std::string base_dir =
      std::filesystem::absolute(args.config_path).parent_path().string();

  const ps_status rc = fn(config.c_str(), args.out_dir.c_str(), base_dir.c_str(), args.seed,
                          args.threads);
  switch (rc) {
    case PS_OK:
      return 0;
    case PS_ERR_UNCONVERGED:
      std::cerr << "warning: " << ps_last_error() << "\n";
      return 2;
    default:
      std::cerr << "error: " << ps_last_error() << "\n";
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli shaping and SPAM-robust gate learning toolkit"};
  app.set_version_flag("--version", ps_version());
  app.require_subcommand(1);

  CommonArgs learn_args, shape_args, simulate_args, analyze_args;
  CLI::App* learn = app.add_subcommand(
      "learn", "characterize a noisy gate (modified CB, partial- and correlated-twirl)");
  add_common(learn, learn_args);
  CLI::App* shape = app.add_subcommand("shape", "build a cancellation or amplification plan");
  add_common(shape, shape_args);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate under a plan");
  add_common(simulate, simulate_args);
  CLI::App* analyze = app.add_subcommand("analyze", "closed-form sweeps and tables");
  add_common(analyze, analyze_args);

  CLI11_PARSE(app, argc, argv);

  if (learn->parsed()) return dispatch(&ps_cmd_learn, learn_args);
  if (shape->parsed()) return dispatch(&ps_cmd_shape, shape_args);
  if (simulate->parsed()) return dispatch(&ps_cmd_simulate, simulate_args);
  if (analyze->parsed()) return dispatch(&ps_cmd_analyze, analyze_args);
  return 1;
}
