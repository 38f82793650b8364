// Copyright 2026 The hmstream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the hmstream library. Every function that can fail returns
 * an hm_status; on failure hm_last_error_message() describes the error for
 * the calling thread. Strings returned through char** out-parameters are
 * owned by the caller and released with hm_free_string. */

#ifndef HMSTREAM_HMSTREAM_H
#define HMSTREAM_HMSTREAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(HMSTREAM_BUILDING_LIBRARY)
#define HM_API __attribute__((visibility("default")))
#else
#define HM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hm_status {
    HM_OK = 0,
    HM_ERR_INVALID_ARGUMENT = 1,
    HM_ERR_DOMAIN = 2,
    HM_ERR_INDEX = 3,
    HM_ERR_CAPACITY = 4,
    HM_ERR_DECOMPOSITION = 5,
    HM_ERR_PROTOCOL = 6,
    HM_ERR_TRANSPORT = 7,
    HM_ERR_IO = 8,
    HM_ERR_INTERNAL = 9
} hm_status;

typedef struct hm_distribution {
    double p_correct;
    double p_wrong;
    double p_null;
} hm_distribution;

typedef struct hm_instance hm_instance;
typedef struct hm_server hm_server;

HM_API const char *hm_version(void);
HM_API const char *hm_status_name(hm_status status);
/* Message of the last failed call on this thread, or "". */
HM_API const char *hm_last_error_message(void);
HM_API void hm_free_string(char *s);

/* Instances. `alpha` is "num/den"; `kind` is "yes" or "no". */
HM_API hm_status hm_instance_generate(uint64_t n, const char *alpha, const char *kind, uint64_t seed,
                                      hm_instance **out);
HM_API hm_status hm_instance_from_json(const char *json, hm_instance **out);
HM_API hm_status hm_instance_to_json(const hm_instance *instance, char **out);
HM_API hm_status hm_instance_info(const hm_instance *instance, uint64_t *n, uint64_t *num_edges);
HM_API void hm_instance_free(hm_instance *instance);

/* Exact outcome distribution of one sketch copy; gamma = 1 is noiseless. */
HM_API hm_status hm_exact_distribution(const hm_instance *instance, double gamma, hm_distribution *out);

/* Streaming server. `endpoint` is "host:port" (port 0 picks one). `log_path`
 * receives one JSON line per session: NULL disables logging, "-" writes to
 * standard output. */
HM_API hm_status hm_server_start(const hm_instance *instance, const char *endpoint, uint64_t timeout_ms,
                                 const char *log_path, hm_server **out);
HM_API uint16_t hm_server_port(const hm_server *server);
HM_API uint64_t hm_server_results(const hm_server *server);
HM_API hm_status hm_server_stop(hm_server *server);
HM_API void hm_server_free(hm_server *server);

/* Runs an experiment described by a JSON configuration and returns the
 * results document. */
HM_API hm_status hm_run_experiment(const char *config_json, char **results_json);

/* `rows_json` is an array of {n, noise, p_correct, p_wrong, p_null}. */
HM_API hm_status hm_figure2b_csv(const char *rows_json, uint64_t k_max, char **csv);

/* Boosting. */
HM_API hm_status hm_ideal_distribution(double alpha, hm_distribution *out);
HM_API hm_status hm_vote_success(uint64_t k, const hm_distribution *per_copy, double *out);
HM_API hm_status hm_min_copies(const hm_distribution *per_copy, double target, uint64_t k_max, uint64_t *out,
                               int *found);
HM_API hm_status hm_noisy_failure(uint64_t k, double alpha, double gamma, double *out);
HM_API hm_status hm_tolerable_infidelity(uint64_t k, double alpha, double budget, double *out, int *feasible);
HM_API hm_status hm_total_quantum_space(uint64_t n, uint64_t copies, uint64_t *out);

/* Classical baselines. */
HM_API hm_status hm_classical_sketch_size(double n, double alpha, uint64_t *out);
HM_API hm_status hm_classical_lower_bound(double n, double alpha, double epsilon, double *out);
HM_API hm_status hm_collision_bound(double n, double alpha, double k, double *out);

/* Fault-tolerant resource estimate. `request_json` may set code ("surface",
 * "two-gross", "bb360"), p, p_th, gamma, copies, alpha, formula ("tabulated"
 * or "printed") and factories (the factory configuration object). */
HM_API hm_status hm_estimate(uint64_t n, const char *request_json, char **out_json);
HM_API hm_status hm_default_factories(char **out_json);

/* Gate tallies of the worst-case circuit at size n, emitted and closed form. */
HM_API hm_status hm_gate_counts(uint64_t n, char **out_json);

#ifdef __cplusplus
}
#endif

#endif
