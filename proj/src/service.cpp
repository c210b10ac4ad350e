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


#include "sqltutor/service.hpp"

#include <chrono>
#include <ctime>
#include <mutex>
#include <regex>
#include <shared_mutex>

#include "httplib.h"
#include "json_io.hpp"
#include "sqltutor/errors.hpp"
#include "sqltutor/task.hpp"

namespace fs = std::filesystem;

namespace sqltutor {

namespace {

using json::Json;

struct HttpError {
  int status;
  std::string message;
};

struct Slot {
  Task task;
  fs::path dir;
  std::shared_mutex mu;
};

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ServiceReply reply(int status, Json body) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return {status, out.dump()};
}

Json parse_body(const std::string& body) {
  try {
    Json j = Json::parse(body.empty() ? std::string("{}") : body);
    if (!j.is_object()) throw HttpError{400, "request body must be a JSON object"};
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw HttpError{400, std::string("malformed JSON: ") + e.what()};
  }
}

std::string required_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw HttpError{400, std::string("missing string field '") + key + "'"};
  return it->get<std::string>();
}

std::string optional_string(const Json& j, const char* key, std::string fallback = {}) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw HttpError{400, std::string("field '") + key + "' must be a string"};
  return it->get<std::string>();
}

std::vector<std::size_t> parse_thresholds(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw HttpError{400, "bad threshold '" + item + "'"};
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool valid_task_id(const std::string& id) {
  static const std::regex re("[A-Za-z0-9_-]{1,64}");
  return std::regex_match(id, re);
}

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  std::mutex tasks_mu;
  std::map<std::string, std::unique_ptr<Slot>> tasks;
  httplib::Server server;
  bool bound = false;

  Slot& slot(const std::string& id) {
    std::lock_guard lock(tasks_mu);
    auto it = tasks.find(id);
    if (it == tasks.end()) throw HttpError{404, "unknown task '" + id + "'"};
    return *it->second;
  }

  void require_lecturer(const std::string& token) const {
    if (options.lecturer_token.empty() || token != options.lecturer_token)
      throw HttpError{401, "lecturer token required"};
  }

  ServiceReply create_task(const std::string& body) {
    const Json j = parse_body(body);
    const std::string id = required_string(j, "id");
    if (!valid_task_id(id))
      throw HttpError{400, "task id must be 1-64 characters of [A-Za-z0-9_-]"};
    const std::string schema = required_string(j, "schema");
    const std::string solution = required_string(j, "solution");
    std::string seed = optional_string(j, "seed");
    const bool suggested = seed.empty();
    if (suggested) seed = suggest_seed(schema, solution);
    bool order_required = false;
    if (auto it = j.find("output_order_required"); it != j.end()) {
      if (!it->is_boolean()) throw HttpError{400, "output_order_required must be a boolean"};
      order_required = it->get<bool>();
    }
    Task task = Task::create(id, optional_string(j, "description"), schema, seed,
                             optional_string(j, "hidden"), solution, order_required,
                             json::config_from_json(j.value("config", Json())));
    std::lock_guard lock(tasks_mu);
    if (tasks.count(id)) throw HttpError{409, "task '" + id + "' already exists"};
    const fs::path dir = options.upload_root / id;
    if (fs::exists(dir)) throw HttpError{409, "bundle directory already exists for '" + id + "'"};
    task.save(dir);
    tasks.emplace(id, std::unique_ptr<Slot>(new Slot{std::move(task), dir, {}}));
    return reply(201, {{"id", id}, {"seed_suggested", suggested}});
  }

  ServiceReply submit(Slot& s, const std::string& body) {
    const Json j = parse_body(body);
    const std::string sql = required_string(j, "sql");
    const std::string student = optional_string(j, "student", "anonymous");
    FeedbackMode mode = FeedbackMode::MultiRef;
    try {
      mode = mode_from_name(optional_string(j, "mode", "multi"));
    } catch (const Error& e) {
      throw HttpError{400, e.what()};
    }
    FeedbackReport report;
    {
      std::shared_lock lock(s.mu);
      report = s.task.generate_feedback(sql, mode);
    }
    std::unique_lock lock(s.mu);
    SubmitResult r = s.task.commit(student, sql, std::move(report), now_utc());
    s.task.save(s.dir);
    return reply(200, json::to_json(r.report));
  }

  ServiceReply pool(Slot& s) {
    std::shared_lock lock(s.mu);
    Json rows = Json::array();
    for (const auto& row : s.task.pool().list_candidates()) rows.push_back(json::to_json(row));
    Json wrong = Json::array();
    for (const auto& e : s.task.pool().entries()) {
      if (e.status != EntryStatus::RejectedWrong) continue;
      Json w = json::to_json(e);
      w["sql"] = e.raw;
      wrong.push_back(std::move(w));
    }
    return reply(200, {{"rows", rows}, {"wrong", wrong}});
  }

  ServiceReply decide(Slot& s, const std::string& entry, const std::string& body) {
    const Json j = parse_body(body);
    std::int64_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoll(entry, &used);
      if (used != entry.size()) throw std::invalid_argument(entry);
    } catch (const std::exception&) {
      throw HttpError{404, "unknown entry '" + entry + "'"};
    }
    Decision decision;
    Quality quality = Quality::Good;
    try {
      decision = decision_from_name(required_string(j, "action"));
      quality = quality_from_name(optional_string(j, "quality", "good"));
    } catch (const Error& e) {
      throw HttpError{400, e.what()};
    }
    std::unique_lock lock(s.mu);
    ReviewResult r = s.task.review(id, decision, quality);
    if (r.changed) s.task.save(s.dir);
    Json out;
    Json e = json::to_json(r.entry);
    e["sql"] = r.entry.raw;
    out["entry"] = std::move(e);
    out["changed"] = r.changed;
    out["event"] = r.event ? json::to_json(*r.event) : Json(nullptr);
    return reply(200, out);
  }

  ServiceReply testdata(Slot& s, const std::string& body) {
    const Json j = parse_body(body);
    const std::string rows = required_string(j, "rows");
    std::unique_lock lock(s.mu);
    const auto flips = s.task.recheck(rows);
    s.task.save(s.dir);
    Json list = Json::array();
    Json warnings = Json::array();
    for (const auto& f : flips) {
      list.push_back(json::to_json(f));
      if (f.origin == Origin::Lecturer)
        warnings.push_back("the lecturer solution changed verdict: " + f.after.detail);
    }
    return reply(200, {{"flips", list}, {"warnings", warnings}});
  }

  ServiceReply analytics(Slot& s, const std::map<std::string, std::string>& params) {
    auto param = [&](const char* key, std::string fallback) {
      auto it = params.find(key);
      return it == params.end() ? fallback : it->second;
    };
    const std::string kind = param("kind", "curve");
    Task snapshot = [&] {
      std::shared_lock lock(s.mu);
      return s.task;
    }();
    FeedbackMode mode;
    std::vector<std::size_t> thresholds;
    try {
      mode = mode_from_name(param("mode", "multi"));
    } catch (const Error& e) {
      throw HttpError{400, e.what()};
    }
    if (kind == "curve") thresholds = parse_thresholds(param("thresholds", "0,5,10,15,20"));
    Json out;
    try {
      out = json::analytics(snapshot, kind, mode, thresholds);
    } catch (const Error& e) {
      throw HttpError{400, e.what()};
    }
    return reply(200, out);
  }

  ServiceReply route(const std::string& method, const std::string& path,
                     const std::map<std::string, std::string>& params, const std::string& body,
                     const std::string& token) {
    static const std::regex task_re("/tasks/([^/]+)");
    static const std::regex sub_re("/tasks/([^/]+)/(submissions|pool|testdata|analytics)");
    static const std::regex decision_re("/tasks/([^/]+)/pool/([^/]+)/decision");
    std::smatch m;
    if (path == "/tasks") {
      if (method == "POST") {
        require_lecturer(token);
        return create_task(body);
      }
      if (method == "GET") {
        std::lock_guard lock(tasks_mu);
        Json list = Json::array();
        for (auto& [id, s] : tasks) {
          std::shared_lock l(s->mu);
          list.push_back({{"id", id}, {"description", s->task.description()}});
        }
        return reply(200, {{"tasks", list}});
      }
      throw HttpError{405, "method not allowed"};
    }
    if (std::regex_match(path, m, task_re)) {
      if (method != "GET") throw HttpError{405, "method not allowed"};
      Slot& s = slot(m[1]);
      std::shared_lock lock(s.mu);
      return reply(200, json::task_summary(s.task));
    }
    if (std::regex_match(path, m, decision_re)) {
      if (method != "POST") throw HttpError{405, "method not allowed"};
      require_lecturer(token);
      return decide(slot(m[1]), m[2], body);
    }
    if (std::regex_match(path, m, sub_re)) {
      Slot& s = slot(m[1]);
      const std::string what = m[2];
      if (what == "submissions" && method == "POST") return submit(s, body);
      if (what == "pool" && method == "GET") {
        require_lecturer(token);
        return pool(s);
      }
      if (what == "testdata" && method == "POST") {
        require_lecturer(token);
        return testdata(s, body);
      }
      if (what == "analytics" && method == "GET") return analytics(s, params);
      throw HttpError{405, "method not allowed"};
    }
    throw HttpError{404, "no such endpoint"};
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  for (const auto& dir : impl_->options.bundles) {
    Task task = Task::load(dir);
    const std::string id = task.id();
    if (impl_->tasks.count(id)) throw BundleError("duplicate task id '" + id + "'");
    impl_->tasks.emplace(id, std::unique_ptr<Slot>(new Slot{std::move(task), dir, {}}));
  }

  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    ServiceReply r = dispatch(req.method, req.path, params, req.body,
                              req.get_header_value(kLecturerTokenHeader));
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
}

Service::~Service() { stop(); }

ServiceReply Service::dispatch(const std::string& method, const std::string& path,
                               const std::map<std::string, std::string>& params,
                               const std::string& body, const std::string& token) {
  auto error = [](int status, const std::string& message) {
    return reply(status, {{"error", message}});
  };
  try {
    return impl_->route(method, path, params, body, token);
  } catch (const HttpError& e) {
    return error(e.status, e.message);
  } catch (const UnknownEntry& e) {
    return error(404, e.what());
  } catch (const ReviewConflict& e) {
    return error(409, e.what());
  } catch (const Error& e) {
    return error(400, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

int Service::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  impl_->bound = bound > 0;
  return bound;
}

bool Service::run() {
  if (!impl_->bound) return false;
  return impl_->server.listen_after_bind();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace sqltutor
