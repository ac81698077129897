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

#include "paulishape/paulishape.h"

#include <cstring>
#include <string>

#include "paulishape/analysis.hpp"
#include "paulishape/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

ps_status fail(ps_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Translate exceptions from the C++ core into status codes at the boundary.
template <typename Fn>
ps_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ps::ConfigError& e) {
    return fail(PS_ERR_CONFIG, e.what());
  } catch (const ps::IoError& e) {
    return fail(PS_ERR_IO, e.what());
  } catch (const ps::Error& e) {
    return fail(PS_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(PS_ERR_INTERNAL, e.what());
  }
}

using CommandFn = int (*)(const nlohmann::json&, const ps::RunContext&);

ps_status run_command(CommandFn command, const char* config_json, const char* out_dir,
                      const char* base_dir, uint64_t seed, int threads) {
  return guarded([&]() -> ps_status {
    if (!config_json || !out_dir) return fail(PS_ERR_INVALID, "null argument");
    nlohmann::json config;
    try {
      config = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(PS_ERR_CONFIG, std::string("invalid JSON: ") + e.what());
    }
    ps::RunContext ctx;
    ctx.seed = seed;
    ctx.threads = threads > 0 ? threads : 1;
    ctx.out_dir = out_dir;
    ctx.base_dir = base_dir && *base_dir ? base_dir : ".";
    const int rc = command(config, ctx);
    if (rc == 2) return fail(PS_ERR_UNCONVERGED, "one or more fits did not converge");
    return PS_OK;
  });
}

}  // namespace

struct ps_gate {
  ps::Ptm ptm;
};

struct ps_plan {
  ps::ShapingPlan plan;
};

extern "C" {

const char* ps_version(void) { return "paulishape 1.0.0"; }

const char* ps_last_error(void) { return g_last_error.c_str(); }

ps_status ps_cmd_learn(const char* config_json, const char* out_dir, const char* base_dir,
                       uint64_t seed, int threads) {
  return run_command(&ps::run_learn, config_json, out_dir, base_dir, seed, threads);
}

ps_status ps_cmd_shape(const char* config_json, const char* out_dir, const char* base_dir,
                       uint64_t seed, int threads) {
  return run_command(&ps::run_shape, config_json, out_dir, base_dir, seed, threads);
}

ps_status ps_cmd_simulate(const char* config_json, const char* out_dir, const char* base_dir,
                          uint64_t seed, int threads) {
  return run_command(&ps::run_simulate, config_json, out_dir, base_dir, seed, threads);
}

ps_status ps_cmd_analyze(const char* config_json, const char* out_dir, const char* base_dir,
                         uint64_t seed, int threads) {
  return run_command(&ps::run_analyze, config_json, out_dir, base_dir, seed, threads);
}

ps_status ps_gate_create(const char* noise_json, ps_gate** out) {
  return guarded([&]() -> ps_status {
    if (!noise_json || !out) return fail(PS_ERR_INVALID, "null argument");
    nlohmann::json spec;
    try {
      spec = nlohmann::json::parse(noise_json);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(PS_ERR_CONFIG, std::string("invalid JSON: ") + e.what());
    }
    *out = new ps_gate{ps::build_gate_ptm(ps::noise_spec_from_json(spec))};
    return PS_OK;
  });
}

void ps_gate_destroy(ps_gate* gate) { delete gate; }

int ps_gate_dim(const ps_gate* gate) { return gate ? gate->ptm.dim() : 0; }

ps_status ps_gate_entry(const ps_gate* gate, int row, int col, double* out) {
  return guarded([&]() -> ps_status {
    if (!gate || !out) return fail(PS_ERR_INVALID, "null argument");
    if (row < 0 || col < 0 || row >= gate->ptm.dim() || col >= gate->ptm.dim())
      return fail(PS_ERR_INVALID, "index out of range");
    *out = gate->ptm.m(row, col);
    return PS_OK;
  });
}

ps_status ps_gate_is_cptp(const ps_gate* gate, double tol, int* trace_preserving,
                          int* completely_positive, double* min_choi_eigenvalue) {
  return guarded([&]() -> ps_status {
    if (!gate) return fail(PS_ERR_INVALID, "null gate");
    const ps::CptpReport rep = ps::is_cptp(gate->ptm, tol);
    if (trace_preserving) *trace_preserving = rep.trace_preserving ? 1 : 0;
    if (completely_positive) *completely_positive = rep.completely_positive ? 1 : 0;
    if (min_choi_eigenvalue) *min_choi_eigenvalue = rep.min_choi_eigenvalue;
    return PS_OK;
  });
}

ps_status ps_plan_cancel(const ps_gate* gate, double theta, int optimize_free, ps_plan** out) {
  return guarded([&]() -> ps_status {
    if (!gate || !out) return fail(PS_ERR_INVALID, "null argument");
    const ps::Ptm ideal = ps::rzz_ptm(theta);
    ps::QuasiProbMatrix q;
    if (optimize_free) {
      q = ps::optimize_block_free_fill(ideal, gate->ptm).q;
    } else {
      q = ps::quasi_probs(ps::characteristic_matrix(ideal, gate->ptm));
    }
    *out = new ps_plan{ps::make_plan(q)};
    return PS_OK;
  });
}

ps_status ps_plan_amplify(const ps_gate* gate, double alpha, double epsilon, ps_plan** out) {
  return guarded([&]() -> ps_status {
    if (!gate || !out) return fail(PS_ERR_INVALID, "null argument");
    std::array<std::pair<double, double>, 4> pairs;
    for (int b = 0; b < 4; ++b)
      pairs[b] = {gate->ptm.m(2 * b, 2 * b), gate->ptm.m(2 * b + 1, 2 * b + 1)};
    const ps::AmplificationPlan amp = ps::approx_amplification(pairs, alpha, epsilon);
    *out = new ps_plan{ps::make_plan(amp.q)};
    return PS_OK;
  });
}

void ps_plan_destroy(ps_plan* plan) { delete plan; }

double ps_plan_gamma(const ps_plan* plan) { return plan ? plan->plan.gamma : 0.0; }

ps_status ps_plan_to_json(const ps_plan* plan, char** out_json) {
  return guarded([&]() -> ps_status {
    if (!plan || !out_json) return fail(PS_ERR_INVALID, "null argument");
    const std::string s = ps::plan_to_json(plan->plan).dump(2);
    *out_json = new char[s.size() + 1];
    std::memcpy(*out_json, s.c_str(), s.size() + 1);
    return PS_OK;
  });
}

void ps_string_free(char* s) { delete[] s; }

ps_status ps_plan_simulate(const ps_plan* plan, const ps_gate* gate, const char* observable,
                           const char* initial_pauli, int sign, uint64_t shots, uint64_t seed,
                           double* estimate, double* standard_error) {
  return guarded([&]() -> ps_status {
    if (!plan || !gate || !observable || !initial_pauli)
      return fail(PS_ERR_INVALID, "null argument");
    const ps::PauliIndex obs = ps::pauli_from_label(observable);
    const ps::BlochVector rho =
        ps::pauli_eigenstate(ps::pauli_from_label(initial_pauli), sign >= 0 ? 1 : -1);
    const ps::ShapedEstimate est = ps::estimate_shaped_expectation(
        gate->ptm, plan->plan, rho, obs.index, static_cast<long>(shots), seed);
    if (estimate) *estimate = est.estimate;
    if (standard_error) *standard_error = est.stderr_;
    return PS_OK;
  });
}

}  // extern "C"
