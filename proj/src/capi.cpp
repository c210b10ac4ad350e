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


#include "sqltutor/sqltutor.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <mutex>

#include "json_io.hpp"
#include "sqltutor/errors.hpp"
#include "sqltutor/service.hpp"
#include "sqltutor/task.hpp"

namespace fs = std::filesystem;
using sqltutor::json::Json;

struct st_task {
  sqltutor::Task task;
  fs::path dir;
  std::mutex mu;
};

struct st_service {
  sqltutor::Service service;
};

namespace {

thread_local std::string g_last_error;

class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class F>
int guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return ST_OK;
  } catch (const ArgumentError& e) {
    return fail(ST_ERR_ARGUMENT, e.what());
  } catch (const sqltutor::ParseError& e) {
    return fail(ST_ERR_PARSE, e.what());
  } catch (const sqltutor::SchemaError& e) {
    return fail(ST_ERR_SCHEMA, e.what());
  } catch (const sqltutor::BundleError& e) {
    return fail(ST_ERR_BUNDLE, e.what());
  } catch (const sqltutor::ProvisionError& e) {
    return fail(ST_ERR_PROVISION, e.what());
  } catch (const sqltutor::ExecError& e) {
    return fail(ST_ERR_EXEC, e.what());
  } catch (const sqltutor::UnknownEntry& e) {
    return fail(ST_ERR_UNKNOWN_ENTRY, e.what());
  } catch (const sqltutor::ReviewConflict& e) {
    return fail(ST_ERR_REVIEW_CONFLICT, e.what());
  } catch (const sqltutor::Error& e) {
    return fail(ST_ERR_ARGUMENT, e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(ST_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(ST_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ST_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " must not be NULL");
}

std::string str(const char* s) { return s ? std::string(s) : std::string(); }

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const Json& j) { *out = dup(j.dump(2)); }

sqltutor::FeedbackMode mode_of(const char* mode) {
  return sqltutor::mode_from_name(mode && *mode ? mode : "multi");
}

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::size_t> thresholds_of(const char* text) {
  std::vector<std::size_t> out;
  const std::string s = text && *text ? text : "0,5,10,15,20";
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? comma : comma - start);
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0' || v < 0)
      throw ArgumentError("bad threshold '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

extern "C" {

const char* st_version(void) { return "0.1.0"; }

const char* st_last_error(void) { return g_last_error.c_str(); }

void st_free_string(char* s) { std::free(s); }

int st_suggest_seed(const char* schema_sql, const char* solution_sql, char** out_sql) {
  return guarded([&] {
    need(schema_sql, "schema_sql");
    need(solution_sql, "solution_sql");
    need(out_sql, "out_sql");
    *out_sql = dup(sqltutor::suggest_seed(schema_sql, solution_sql));
  });
}

int st_task_create(const char* dir, const char* id, const char* description,
                   const char* schema_sql, const char* seed_sql, const char* hidden_sql,
                   const char* solution_sql, int output_order_required, const char* config_json,
                   st_task** out) {
  return guarded([&] {
    need(dir, "dir");
    need(id, "id");
    need(schema_sql, "schema_sql");
    need(solution_sql, "solution_sql");
    need(out, "out");
    if (fs::exists(dir)) throw sqltutor::BundleError(std::string(dir) + " already exists");
    sqltutor::TaskConfig config;
    if (config_json && *config_json) {
      Json j;
      try {
        j = Json::parse(config_json);
      } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("config: ") + e.what());
      }
      config = sqltutor::json::config_from_json(j);
    }
    std::string seed = str(seed_sql);
    if (seed.empty()) seed = sqltutor::suggest_seed(schema_sql, solution_sql);
    std::unique_ptr<st_task> t(new st_task{
        sqltutor::Task::create(id, str(description), schema_sql, seed, str(hidden_sql),
                               solution_sql, output_order_required != 0, config),
        dir, {}});
    t->task.save(t->dir);
    *out = t.release();
  });
}

int st_task_open(const char* dir, st_task** out) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    *out = new st_task{sqltutor::Task::load(dir), dir, {}};
  });
}

void st_task_close(st_task* task) { delete task; }

int st_task_info(st_task* task, char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(out_json, "out_json");
    std::lock_guard lock(task->mu);
    put(out_json, sqltutor::json::task_summary(task->task));
  });
}

int st_eval(st_task* task, const char* sql, const char* mode, char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(sql, "sql");
    need(out_json, "out_json");
    const auto m = mode_of(mode);
    std::lock_guard lock(task->mu);
    Json j = sqltutor::json::to_json(task->task.generate_feedback(sql, m));
    put(out_json, j);
  });
}

int st_submit(st_task* task, const char* student, const char* sql, const char* mode,
              const char* timestamp, char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(sql, "sql");
    need(out_json, "out_json");
    const auto m = mode_of(mode);
    std::lock_guard lock(task->mu);
    auto r = task->task.submit(student && *student ? student : "anonymous", sql, m,
                               timestamp && *timestamp ? timestamp : now_utc());
    task->task.save(task->dir);
    Json j;
    j["report"] = sqltutor::json::to_json(r.report);
    j["event"] = r.event ? sqltutor::json::to_json(*r.event) : Json(nullptr);
    put(out_json, j);
  });
}

int st_batch(st_task* task, const char* log_text, char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(log_text, "log_text");
    need(out_json, "out_json");
    const auto records = sqltutor::parse_log(log_text);
    std::lock_guard lock(task->mu);
    Json results = Json::array();
    Json events = Json::array();
    for (const auto& rec : records) {
      auto r = task->task.submit(rec.student, rec.sql, sqltutor::FeedbackMode::MultiRef,
                                 rec.timestamp);
      Json item;
      item["student"] = rec.student;
      item["verdict"] = sqltutor::verdict_name(r.report.verdict.kind);
      item["event"] = r.event ? sqltutor::json::to_json(*r.event) : Json(nullptr);
      if (r.event) events.push_back(sqltutor::json::to_json(*r.event));
      results.push_back(std::move(item));
    }
    task->task.save(task->dir);
    put(out_json, Json{{"results", results}, {"events", events}});
  });
}

int st_pool_list(st_task* task, char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(out_json, "out_json");
    std::lock_guard lock(task->mu);
    Json rows = Json::array();
    for (const auto& row : task->task.pool().list_candidates())
      rows.push_back(sqltutor::json::to_json(row));
    Json wrong = Json::array();
    for (const auto& e : task->task.pool().entries()) {
      if (e.status != sqltutor::EntryStatus::RejectedWrong) continue;
      Json w = sqltutor::json::to_json(e);
      w["sql"] = e.raw;
      wrong.push_back(std::move(w));
    }
    put(out_json, Json{{"rows", rows}, {"wrong", wrong}});
  });
}

int st_pool_review(st_task* task, long long entry_id, const char* decision,
                   const char* quality, char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(decision, "decision");
    need(out_json, "out_json");
    const auto d = sqltutor::decision_from_name(decision);
    const auto q = sqltutor::quality_from_name(quality && *quality ? quality : "good");
    std::lock_guard lock(task->mu);
    auto r = task->task.review(entry_id, d, q);
    if (r.changed) task->task.save(task->dir);
    Json entry = sqltutor::json::to_json(r.entry);
    entry["sql"] = r.entry.raw;
    Json j;
    j["entry"] = std::move(entry);
    j["changed"] = r.changed;
    j["event"] = r.event ? sqltutor::json::to_json(*r.event) : Json(nullptr);
    put(out_json, j);
  });
}

int st_recheck(st_task* task, const char* rows_sql, char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(rows_sql, "rows_sql");
    need(out_json, "out_json");
    std::lock_guard lock(task->mu);
    const auto flips = task->task.recheck(rows_sql);
    task->task.save(task->dir);
    Json list = Json::array();
    for (const auto& f : flips) list.push_back(sqltutor::json::to_json(f));
    put(out_json, Json{{"flips", list}});
  });
}

int st_analyze(st_task* task, const char* kind, const char* mode, const char* thresholds,
               char** out_json) {
  return guarded([&] {
    need(task, "task");
    need(kind, "kind");
    need(out_json, "out_json");
    const auto m = mode_of(mode);
    const auto t = std::string(kind) == "curve" ? thresholds_of(thresholds)
                                                : std::vector<std::size_t>{};
    std::lock_guard lock(task->mu);
    put(out_json, sqltutor::json::analytics(task->task, kind, m, t));
  });
}

int st_service_open(const char* const* bundle_dirs, size_t count, const char* upload_root,
                    const char* lecturer_token, st_service** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) need(bundle_dirs, "bundle_dirs");
    sqltutor::ServiceOptions options;
    for (size_t i = 0; i < count; ++i) {
      need(bundle_dirs[i], "bundle_dirs[i]");
      options.bundles.emplace_back(bundle_dirs[i]);
    }
    options.upload_root = upload_root && *upload_root ? upload_root : ".";
    options.lecturer_token = str(lecturer_token);
    *out = new st_service{sqltutor::Service(std::move(options))};
  });
}

int st_service_listen(st_service* service, const char* host, int port) {
  return guarded([&] {
    need(service, "service");
    need(host, "host");
    if (service->service.bind(host, port) < 0)
      throw sqltutor::Error("cannot bind " + std::string(host) + ":" + std::to_string(port));
    service->service.run();
  });
}

void st_service_stop(st_service* service) {
  if (service) service->service.stop();
}

void st_service_close(st_service* service) { delete service; }

}  // extern "C"
