/* Copyright 2026 The paulishape developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the paulishape shared library.
 *
 * All functions return ps_status; PS_OK is 0. On failure, ps_last_error()
 * returns a thread-local message describing what went wrong. Objects are
 * opaque handles created and destroyed through this API.
 *
 * Configuration strings are JSON documents; their schemas are described in
 * the project README.
 */

#ifndef PAULISHAPE_PAULISHAPE_H
#define PAULISHAPE_PAULISHAPE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_ERR_CONFIG = 1,      /* malformed or rejected configuration */
  PS_ERR_UNCONVERGED = 2, /* statistical / fit-convergence warning */
  PS_ERR_INVALID = 3,     /* bad argument or numeric precondition */
  PS_ERR_IO = 4,          /* file read/write failure */
  PS_ERR_INTERNAL = 5
} ps_status;

const char* ps_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* ps_last_error(void);

/* ---- pipeline commands (mirror the CLI subcommands) ------------------- */

ps_status ps_cmd_learn(const char* config_json, const char* out_dir, const char* base_dir,
                       uint64_t seed, int threads);
ps_status ps_cmd_shape(const char* config_json, const char* out_dir, const char* base_dir,
                       uint64_t seed, int threads);
ps_status ps_cmd_simulate(const char* config_json, const char* out_dir, const char* base_dir,
                          uint64_t seed, int threads);
ps_status ps_cmd_analyze(const char* config_json, const char* out_dir, const char* base_dir,
                         uint64_t seed, int threads);

/* ---- handle API -------------------------------------------------------- */

/* A 2-qubit noisy gate held as its Pauli transfer matrix. */
typedef struct ps_gate ps_gate;

/* Create from a noise-spec JSON object (same schema as configs' "noise"). */
ps_status ps_gate_create(const char* noise_json, ps_gate** out);
void ps_gate_destroy(ps_gate* gate);

/* Matrix dimension (16 for 2 qubits). */
int ps_gate_dim(const ps_gate* gate);
ps_status ps_gate_entry(const ps_gate* gate, int row, int col, double* out);

/* trace_preserving/completely_positive are 0/1 flags. */
ps_status ps_gate_is_cptp(const ps_gate* gate, double tol, int* trace_preserving,
                          int* completely_positive, double* min_choi_eigenvalue);

/* A quasi-probability sampling plan. */
typedef struct ps_plan ps_plan;

/* Cancellation plan turning the gate into the ideal R_ZZ(theta);
 * optimize_free != 0 picks the overhead-minimizing free fill. */
ps_status ps_plan_cancel(const ps_gate* gate, double theta, int optimize_free, ps_plan** out);

/* Approximate amplification plan at noise level 1 + alpha with reported
 * noise strength epsilon. */
ps_status ps_plan_amplify(const ps_gate* gate, double alpha, double epsilon, ps_plan** out);

void ps_plan_destroy(ps_plan* plan);
double ps_plan_gamma(const ps_plan* plan);

/* Serialized plan; free the returned string with ps_string_free. */
ps_status ps_plan_to_json(const ps_plan* plan, char** out_json);
void ps_string_free(char* s);

/* Monte Carlo expectation of `observable` (a Pauli label such as "XI") under
 * the plan, starting from the +sign eigenstate of `initial_pauli`. */
ps_status ps_plan_simulate(const ps_plan* plan, const ps_gate* gate, const char* observable,
                           const char* initial_pauli, int sign, uint64_t shots, uint64_t seed,
                           double* estimate, double* standard_error);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PAULISHAPE_PAULISHAPE_H */
