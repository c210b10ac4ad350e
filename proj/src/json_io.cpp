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


#include "json_io.hpp"

#include "sqltutor/errors.hpp"

namespace sqltutor::json {

Json to_json(const TaskConfig& c) {
  Json rules = Json::object();
  for (const auto& info : rule_catalog()) rules[std::string(info.code)] = c.rules[info.id - 1];
  Json j;
  j["weights"] = {{"w1", c.weights.w1}, {"w2", c.weights.w2}, {"w3", c.weights.w3}};
  j["theta"] = c.theta ? Json(*c.theta) : Json(nullptr);
  j["verbosity"] = verbosity_name(c.verbosity);
  j["hint_cap"] = c.hint_cap;
  j["rules"] = std::move(rules);
  return j;
}

TaskConfig config_from_json(const Json& j) {
  TaskConfig c;
  if (j.is_null()) return c;
  try {
    if (!j.is_object()) throw BundleError("config must be an object");
    if (auto w = j.find("weights"); w != j.end()) {
      c.weights.w1 = w->value("w1", c.weights.w1);
      c.weights.w2 = w->value("w2", c.weights.w2);
      c.weights.w3 = w->value("w3", c.weights.w3);
    }
    if (auto t = j.find("theta"); t != j.end() && !t->is_null()) c.theta = t->get<double>();
    if (auto v = j.find("verbosity"); v != j.end())
      c.verbosity = verbosity_from_name(v->get<std::string>());
    c.hint_cap = j.value("hint_cap", c.hint_cap);
    if (auto r = j.find("rules"); r != j.end()) {
      for (auto it = r->begin(); it != r->end(); ++it) {
        bool found = false;
        for (const auto& info : rule_catalog()) {
          if (info.code == it.key()) {
            c.rules[info.id - 1] = it.value().get<bool>();
            found = true;
          }
        }
        if (!found) throw BundleError("unknown rule " + it.key());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw BundleError(std::string("bad config: ") + e.what());
  } catch (const BundleError&) {
    throw;
  } catch (const Error& e) {
    throw BundleError(std::string("bad config: ") + e.what());
  }
  if (!c.weights.valid())
    throw BundleError("weights must be positive and strictly decreasing (w1 > w2 > w3 > 0)");
  return c;
}

Json to_json(const Verdict& v) {
  return {{"kind", verdict_name(v.kind)}, {"detail", v.detail}};
}

Json to_json(const Hint& h) {
  Json j;
  j["category"] = category_name(h.category);
  j["clause"] = clause_name(h.clause);
  j["kind"] = hint_kind_name(h.kind);
  j["token"] = h.token;
  if (!h.expected.empty()) j["expected"] = h.expected;
  j["message"] = h.message;
  return j;
}

Json to_json(const DistanceBreakdown& d) {
  Json clauses = Json::object();
  for (std::size_t i = 0; i < kDistanceClauses.size(); ++i) {
    const auto& c = d.clauses[i];
    clauses[std::string(clause_name(kDistanceClauses[i]))] = {
        {"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}};
  }
  return {{"clauses", clauses}, {"total", d.total}};
}

Json to_json(const FeedbackReport& r) {
  Json j;
  j["verdict"] = to_json(r.verdict);
  j["mode"] = mode_name(r.mode);
  j["closest_ref"] = r.closest_ref ? Json(*r.closest_ref) : Json(nullptr);
  j["distance"] = r.distance ? to_json(*r.distance) : Json(nullptr);
  Json hints = Json::array();
  for (const auto& h : r.hints) hints.push_back(to_json(h));
  j["hints"] = std::move(hints);
  j["note"] = r.note;
  return j;
}

Json to_json(const PoolEvent& e) {
  return {{"kind", pool_event_name(e.kind)}, {"id", e.id}, {"note", e.note}};
}

Json to_json(const DashboardRow& row) {
  Json j;
  j["id"] = row.id;
  j["sql"] = row.sql;
  j["note"] = row.note;
  j["status"] = status_name(row.status);
  j["pending_review"] = row.pending_review;
  j["quality"] = quality_name(row.quality);
  j["origin"] = origin_name(row.origin);
  j["match_count"] = row.match_count;
  return j;
}

Json to_json(const PoolEntry& e) {
  Json j;
  j["id"] = e.id;
  j["quality"] = quality_name(e.quality);
  j["origin"] = origin_name(e.origin);
  j["status"] = status_name(e.status);
  j["pending_review"] = e.pending_review;
  j["match_count"] = e.match_count;
  j["note"] = e.note;
  if (!e.advisory.empty()) j["advisory"] = e.advisory;
  return j;
}

Json to_json(const Flip& f) {
  Json j;
  j["id"] = f.id;
  j["origin"] = origin_name(f.origin);
  j["status"] = status_name(f.status);
  j["before"] = to_json(f.before);
  j["after"] = to_json(f.after);
  return j;
}

Json to_json(const LearningMetrics& m) {
  Json j;
  j["mode"] = mode_name(m.mode);
  j["pairs"] = m.pairs;
  j["backward"] = m.backward;
  j["sideways"] = m.sideways;
  j["progress"] = m.progress;
  j["trials_to_progress"] = m.trials_to_progress;
  return j;
}

Json schema_json(const SchemaDef& schema) {
  Json tables = Json::array();
  for (const auto& t : schema.tables) {
    Json cols = Json::array();
    for (const auto& c : t.columns)
      cols.push_back({{"name", c.name}, {"type", column_type_name(c.type)}});
    tables.push_back({{"name", t.name}, {"columns", std::move(cols)}});
  }
  return tables;
}

Json analytics(const Task& task, const std::string& kind, FeedbackMode mode,
               const std::vector<std::size_t>& thresholds) {
  Json out;
  out["kind"] = kind;
  if (kind == "curve") {
    Json curve = Json::array();
    for (auto [t, n] : task.curve(thresholds)) curve.push_back({{"threshold", t}, {"count", n}});
    out["corpus_size"] = task.correct_corpus().size();
    out["curve"] = std::move(curve);
  } else if (kind == "harmonized") {
    out["corpus_size"] = task.correct_corpus().size();
    out["harmonized"] = task.harmonized_count();
  } else if (kind == "metrics") {
    out["metrics"] = to_json(task.metrics(mode));
  } else {
    throw Error("kind must be curve, harmonized or metrics");
  }
  return out;
}

Json task_summary(const Task& task) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["id"] = task.id();
  j["description"] = task.description();
  j["output_order_required"] = task.output_order_required();
  j["schema"] = schema_json(task.schema());
  return j;
}

}  // namespace sqltutor::json
