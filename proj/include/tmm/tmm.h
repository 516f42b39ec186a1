/*
 * Copyright 2026 The tmm Authors
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

/* C interface to the tmm library.
 *
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function. Every char** result is a NUL-terminated string allocated by
 * the library and released with tmm_string_free. On a non-OK status the
 * output parameters are left untouched and tmm_last_error() describes the
 * failure (per thread, valid until the next call on that thread). */

#ifndef TMM_TMM_H_
#define TMM_TMM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TMM_API __declspec(dllexport)
#else
#define TMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tmm_system tmm_system;
typedef struct tmm_process tmm_process;

typedef enum tmm_status {
  TMM_OK = 0,
  TMM_ERR_PARSE = 1,    /* syntax error in a system or process text */
  TMM_ERR_INVALID = 2,  /* semantically invalid input */
  TMM_ERR_COMPILE = 3,  /* timer elimination refused the system */
  TMM_ERR_ARGUMENT = 4, /* null pointer or bad option */
  TMM_ERR_INTERNAL = 5
} tmm_status;

typedef enum tmm_outcome { TMM_PASS = 0, TMM_FAIL = 1, TMM_INCONCLUSIVE = 2 } tmm_outcome;

TMM_API const char* tmm_version(void);
TMM_API const char* tmm_last_error(void);
TMM_API void tmm_string_free(char* s);

/* Systems */
TMM_API tmm_status tmm_system_parse(const char* text, tmm_system** out);
TMM_API void tmm_system_free(tmm_system* s);
TMM_API tmm_status tmm_system_print(const tmm_system* s, char** out);
TMM_API int tmm_system_is_timed(const tmm_system* s);
/* JSON array of violation strings; empty array when valid. */
TMM_API tmm_status tmm_system_validate(const tmm_system* s, char** out_json);
TMM_API tmm_status tmm_system_compile(const tmm_system* s, tmm_system** out);
TMM_API tmm_status tmm_system_embed(const tmm_system* s, tmm_system** out);
/* A seeded random system from the fixed corpus generator. */
TMM_API tmm_status tmm_system_random(uint64_t seed, int timed, tmm_system** out);

/* Execution. seeded = 0 selects the first maximal choice at every step. */
TMM_API tmm_status tmm_system_run(const tmm_system* s, size_t steps, int seeded, uint64_t seed,
                                  char** out_jsonl, int* out_halted);
/* Output reading after the first-choice run halts or uses up `steps`. */
TMM_API tmm_status tmm_system_output(const tmm_system* s, size_t steps, char** out_json);
TMM_API tmm_status tmm_system_explore(const tmm_system* s, size_t depth, size_t node_cap,
                                      char** out_graph_json, size_t* out_nodes,
                                      int* out_truncated);

/* Processes */
TMM_API tmm_status tmm_process_parse(const char* text, tmm_process** out);
TMM_API void tmm_process_free(tmm_process* p);
TMM_API tmm_status tmm_process_print(const tmm_process* p, char** out);
TMM_API tmm_status tmm_process_translate(const tmm_process* p, int strict, tmm_system** out);
TMM_API tmm_status tmm_process_explore(const tmm_process* p, size_t depth, size_t node_cap,
                                       char** out_graph_json, size_t* out_nodes,
                                       int* out_truncated);

/* Checks. Each returns a verdict document and its outcome. */
TMM_API tmm_status tmm_check_prop1(const tmm_system* s, size_t depth, char** out_json,
                                   tmm_outcome* out);
TMM_API tmm_status tmm_check_prop2(const tmm_system* s, size_t depth, char** out_json,
                                   tmm_outcome* out);
TMM_API tmm_status tmm_check_prop45(const tmm_process* p, size_t depth, int strict,
                                    char** out_json, tmm_outcome* out);
TMM_API tmm_status tmm_check_remark(const tmm_process* p, char** out_json, tmm_outcome* out);
/* property is "prop1", "prop2" or "prop45"; runs `count` generated inputs
 * starting at `seed` and aggregates the verdicts. */
TMM_API tmm_status tmm_check_corpus(const char* property, uint64_t seed, size_t count,
                                    size_t depth, int strict, char** out_json, tmm_outcome* out);

#ifdef __cplusplus
}
#endif

#endif /* TMM_TMM_H_ */
