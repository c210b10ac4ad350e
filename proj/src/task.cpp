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


#include "sqltutor/task.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "sqltutor/errors.hpp"
#include "sqltutor/parser.hpp"

namespace sqltutor {

namespace {

std::string append_script(const std::string& base, const std::string& extra) {
  std::string out = base;
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += extra;
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out;
}

}  // namespace

Task Task::create(std::string id, std::string description, std::string schema_sql,
                  std::string seed_sql, std::string hidden_sql, std::string lecturer_sql,
                  bool output_order_required, TaskConfig config) {
  if (id.empty()) throw BundleError("task id must not be empty");
  if (!config.weights.valid())
    throw BundleError("weights must be positive and strictly decreasing (w1 > w2 > w3 > 0)");
  Task t;
  t.id_ = std::move(id);
  t.description_ = std::move(description);
  t.data_ = TaskData{std::move(schema_sql), std::move(seed_sql), std::move(hidden_sql)};
  t.schema_ = parse_schema(t.data_.schema_sql);
  if (t.schema_.empty()) throw SchemaError("schema defines no tables");
  t.order_required_ = output_order_required;
  t.config_ = config;

  if (classify(lecturer_sql) != StatementClass::SingleSelect)
    throw BundleError("lecturer solution must be a single SELECT statement");
  Sandbox sandbox(t.data_);
  try {
    sandbox.run_select(lecturer_sql);
  } catch (const ExecError& e) {
    throw BundleError(std::string("lecturer solution failed: ") + e.what());
  }
  CanonicalQuery canonical = t.canonicalize(lecturer_sql);
  t.pool_ = ReferencePool(std::move(lecturer_sql), std::move(canonical));
  return t;
}

HarmonizeOptions Task::harmonize_options() const {
  HarmonizeOptions o;
  o.output_order_required = order_required_;
  o.enabled = config_.rules;
  return o;
}

CanonicalQuery Task::canonicalize(const std::string& sql) const {
  return harmonize(parse(sql, schema_), schema_, harmonize_options());
}

Verdict Task::grade(Sandbox& sandbox, const std::string& sql) const {
  return verdict(sandbox, pool_.lecturer().raw, order_required_, sql);
}

Verdict Task::lecturer_health(Sandbox& sandbox) const {
  try {
    if (sandbox.run_select(pool_.lecturer().raw).rows.empty())
      return {VerdictKind::WrongResult, "reference solution returns no rows"};
    return {VerdictKind::Correct, ""};
  } catch (const ExecError& e) {
    return {VerdictKind::NonExecutable, e.what()};
  }
}

FeedbackReport Task::generate_feedback(const std::string& sql, FeedbackMode mode) const {
  FeedbackReport r;
  r.mode = mode;
  {
    Sandbox sandbox(data_);
    r.verdict = grade(sandbox, sql);
  }
  if (r.verdict.kind == VerdictKind::Rejected) return r;

  Query raw;
  try {
    raw = parse(sql, schema_);
  } catch (const ParseError& e) {
    r.note = e.what();
    return r;
  }
  CanonicalQuery canonical;
  try {
    canonical = harmonize(raw, schema_, harmonize_options());
  } catch (const Error& e) {
    r.note = e.what();
    return r;
  }

  std::vector<ReferenceView> refs;
  if (mode == FeedbackMode::SingleRef)
    refs.push_back({pool_.lecturer().id, &pool_.lecturer().canonical.tree});
  else
    refs = pool_.active_views();
  auto [ref_id, d] = closest_reference(canonical.tree, refs, config_.weights, schema_);
  r.closest_ref = ref_id;
  r.distance = d;
  const PoolEntry& ref = pool_.entry(ref_id);

  if (r.verdict.kind == VerdictKind::Correct) {
    r.hints = style_hints(canonical.hints);
    if (ref.quality == Quality::Poor) r.note = kNotePoorQuality;
  } else {
    r.hints = unknown_column_hints(raw, schema_);
    auto diff = static_diff(canonical.tree, ref.canonical.tree, config_.verbosity);
    r.hints.insert(r.hints.end(), diff.begin(), diff.end());
    auto style = style_hints(canonical.hints);
    r.hints.insert(r.hints.end(), style.begin(), style.end());
    r.note = note_summary(d, canonical.tree, ref.canonical.tree);
  }
  order_and_cap(r.hints, config_.hint_cap);
  return r;
}

SubmitResult Task::submit(const std::string& student, const std::string& sql,
                          FeedbackMode mode, const std::string& timestamp) {
  return commit(student, sql, generate_feedback(sql, mode), timestamp);
}

SubmitResult Task::commit(const std::string& student, const std::string& sql,
                          FeedbackReport report, const std::string& timestamp) {
  SubmitResult out;
  out.report = std::move(report);
  out.record = {timestamp, student, id_, std::string(verdict_name(out.report.verdict.kind)),
                sql};
  log_.push_back(out.record);
  if (out.report.verdict.kind == VerdictKind::Correct) {
    try {
      out.event = pool_.ingest_correct(sql, canonicalize(sql), config_.pool_config(), schema_);
    } catch (const ParseError&) {
      // Executable but outside the supported grammar: graded, not pooled.
    } catch (const FixedPointNotReached&) {
    }
  }
  return out;
}

ReviewResult Task::review(std::int64_t id, Decision decision, Quality quality) {
  return pool_.review(id, decision, quality);
}

std::vector<Flip> Task::recheck(const std::string& rows_sql) {
  Sandbox before(data_);
  Sandbox after(data_);
  after.apply(rows_sql);

  std::vector<Flip> flips;
  for (const PoolEntry& e : pool_.entries()) {
    if (e.status == EntryStatus::Deleted) continue;
    const bool lecturer = e.id == pool_.lecturer().id;
    Verdict b = lecturer ? lecturer_health(before) : grade(before, e.raw);
    Verdict a = lecturer ? lecturer_health(after) : grade(after, e.raw);
    if (a.kind != b.kind) flips.push_back({e.id, e.origin, e.status, std::move(b), std::move(a)});
  }
  data_.hidden_sql = append_script(data_.hidden_sql, rows_sql);
  return flips;
}

std::vector<std::string> Task::correct_corpus() const {
  std::vector<std::string> out;
  const std::string correct(verdict_name(VerdictKind::Correct));
  for (const auto& r : log_)
    if (r.verdict == correct) out.push_back(r.sql);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Task::curve(
    const std::vector<std::size_t>& thresholds) const {
  return reduction_curve(correct_corpus(), thresholds);
}

std::size_t Task::harmonized_count() const {
  std::vector<Query> trees;
  for (const auto& sql : correct_corpus()) {
    try {
      trees.push_back(canonicalize(sql).tree);
    } catch (const Error&) {
    }
  }
  return harmonization_reduction(trees);
}

LearningMetrics Task::metrics(FeedbackMode mode) const {
  std::vector<std::string> order;
  std::map<std::string, std::vector<Query>> by_student;
  for (const auto& r : log_) {
    if (r.verdict == verdict_name(VerdictKind::Rejected)) continue;
    Query tree;
    try {
      tree = canonicalize(r.sql).tree;
    } catch (const Error&) {
      continue;
    }
    auto [it, inserted] = by_student.try_emplace(r.student);
    if (inserted) order.push_back(r.student);
    it->second.push_back(std::move(tree));
  }
  std::vector<std::vector<Query>> sequences;
  for (const auto& s : order) sequences.push_back(std::move(by_student[s]));
  return learning_metrics(sequences, pool_.active_views(), mode, config_.weights, schema_);
}

}  // namespace sqltutor
