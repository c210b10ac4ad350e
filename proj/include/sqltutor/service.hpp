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


// JSON-over-HTTP service for students, lecturers and the web dashboard.
//
//   POST /tasks                               create a task (lecturer)
//   GET  /tasks                               task summaries
//   GET  /tasks/{id}                          description and schema summary
//   POST /tasks/{id}/submissions              grade {sql, student, mode?}
//   GET  /tasks/{id}/pool                     dashboard rows (lecturer)
//   POST /tasks/{id}/pool/{entry}/decision    {action, quality?} (lecturer)
//   POST /tasks/{id}/testdata                 {rows} -> verdict flips (lecturer)
//   GET  /tasks/{id}/analytics?kind=&mode=&thresholds=
//
// Lecturer endpoints require the X-Lecturer-Token header. Every body carries
// a top-level schema_version.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sqltutor {

constexpr const char* kLecturerTokenHeader = "X-Lecturer-Token";

struct ServiceOptions {
  std::vector<std::filesystem::path> bundles;
  /// Directory receiving bundles created through POST /tasks.
  std::filesystem::path upload_root;
  std::string lecturer_token;
};

struct ServiceReply {
  int status = 200;
  std::string body;
};

class Service {
 public:
  /// Loads every bundle. Throws BundleError.
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Routes one request without a socket. `token` is the lecturer header
  /// value, empty when absent.
  ServiceReply dispatch(const std::string& method, const std::string& path,
                        const std::map<std::string, std::string>& params,
                        const std::string& body, const std::string& token);

  /// Binds host:port; port 0 picks a free port. Returns the bound port, or
  /// -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves on the bound socket until stop(). Returns false when unbound.
  bool run();
  /// Blocks until run() accepts connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sqltutor
