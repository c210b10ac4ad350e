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


// JSON views of engine values, shared by bundle storage, the HTTP service
// and the C API.

#pragma once

#include <string>

#include "json.hpp"
#include "sqltutor/task.hpp"

namespace sqltutor::json {

using Json = nlohmann::ordered_json;

Json to_json(const TaskConfig& config);
/// Missing keys keep their defaults. Throws BundleError on bad values.
TaskConfig config_from_json(const Json& j);

Json to_json(const Verdict& v);
Json to_json(const Hint& h);
Json to_json(const DistanceBreakdown& d);
Json to_json(const FeedbackReport& r);
Json to_json(const PoolEvent& e);
Json to_json(const DashboardRow& row);
Json to_json(const PoolEntry& e);
Json to_json(const Flip& f);
Json to_json(const LearningMetrics& m);
Json schema_json(const SchemaDef& schema);

/// kind: curve (thresholds used), harmonized, or metrics (mode used).
/// Throws Error on an unknown kind.
Json analytics(const Task& task, const std::string& kind, FeedbackMode mode,
               const std::vector<std::size_t>& thresholds);

/// Student-facing task description: no hidden data and no reference text.
Json task_summary(const Task& task);

}  // namespace sqltutor::json
