// Copyright 2026 The sqltutor Authors
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


/* C interface to the sqltutor engine.
 *
 * Every function returns an st_status code. Output strings are UTF-8 JSON
 * (or SQL where noted), allocated by the library and released with
 * st_free_string(). After a failure st_last_error() describes it; the
 * message is per thread and valid until the next call on that thread.
 *
 * A task handle serializes its own calls. Mutating calls write the bundle
 * back to its directory before returning. */

#ifndef SQLTUTOR_SQLTUTOR_H_
#define SQLTUTOR_SQLTUTOR_H_

#include <stddef.h>

#if defined(_WIN32)
#define ST_API __declspec(dllexport)
#else
#define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum st_status {
  ST_OK = 0,
  ST_ERR_ARGUMENT = 1,
  ST_ERR_PARSE = 2,
  ST_ERR_SCHEMA = 3,
  ST_ERR_BUNDLE = 4,
  ST_ERR_PROVISION = 5,
  ST_ERR_EXEC = 6,
  ST_ERR_UNKNOWN_ENTRY = 7,
  ST_ERR_REVIEW_CONFLICT = 8,
  ST_ERR_IO = 9,
  ST_ERR_INTERNAL = 99
} st_status;

typedef struct st_task st_task;
typedef struct st_service st_service;

ST_API const char* st_version(void);
ST_API const char* st_last_error(void);
ST_API void st_free_string(char* s);

/* Seed rows for a schema such that the solution returns rows. */
ST_API int st_suggest_seed(const char* schema_sql, const char* solution_sql, char** out_sql);

/* Creates a bundle in `dir`, which must not exist yet. A NULL or empty
 * seed_sql is replaced by st_suggest_seed(). config_json may be NULL. */
ST_API int st_task_create(const char* dir, const char* id, const char* description,
                          const char* schema_sql, const char* seed_sql, const char* hidden_sql,
                          const char* solution_sql, int output_order_required,
                          const char* config_json, st_task** out);
ST_API int st_task_open(const char* dir, st_task** out);
ST_API void st_task_close(st_task* task);
/* Student-facing summary: description and schema. */
ST_API int st_task_info(st_task* task, char** out_json);

/* Feedback report without side effects. mode: "single" or "multi" (NULL). */
ST_API int st_eval(st_task* task, const char* sql, const char* mode, char** out_json);
/* Grades, logs and pools. timestamp may be NULL for the current UTC time.
 * Output: {"report": ..., "event": ...|null}. */
ST_API int st_submit(st_task* task, const char* student, const char* sql, const char* mode,
                     const char* timestamp, char** out_json);
/* Submits every record of a submissions.log text in order.
 * Output: {"results": [{"student", "verdict", "event"}...], "events": [...]}. */
ST_API int st_batch(st_task* task, const char* log_text, char** out_json);

ST_API int st_pool_list(st_task* task, char** out_json);
/* decision: accept|reject_wrong|delete or yes|no; quality: good|poor|NULL. */
ST_API int st_pool_review(st_task* task, long long entry_id, const char* decision,
                          const char* quality, char** out_json);

/* Applies rows_sql to the hidden data and reports verdict flips. */
ST_API int st_recheck(st_task* task, const char* rows_sql, char** out_json);

/* kind: curve|harmonized|metrics. thresholds: comma-separated, or NULL. */
ST_API int st_analyze(st_task* task, const char* kind, const char* mode,
                      const char* thresholds, char** out_json);

ST_API int st_service_open(const char* const* bundle_dirs, size_t count,
                           const char* upload_root, const char* lecturer_token,
                           st_service** out);
/* Binds and serves until st_service_stop(). Blocks. */
ST_API int st_service_listen(st_service* service, const char* host, int port);
ST_API void st_service_stop(st_service* service);
ST_API void st_service_close(st_service* service);

#ifdef __cplusplus
}
#endif

#endif  /* SQLTUTOR_SQLTUTOR_H_ */
