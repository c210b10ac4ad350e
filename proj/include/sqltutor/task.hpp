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


// A task: schema, test data, configuration, reference pool and submission
// log, persisted as a bundle directory.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sqltutor/analytics.hpp"
#include "sqltutor/checker.hpp"
#include "sqltutor/feedback.hpp"
#include "sqltutor/harmonizer.hpp"
#include "sqltutor/pool.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

constexpr int kSchemaVersion = 1;

struct TaskConfig {
  WeightsConfig weights;
  std::array<bool, kRuleCount> rules = HarmonizeOptions{}.enabled;
  std::optional<double> theta;
  Verbosity verbosity = Verbosity::Abstract;
  std::size_t hint_cap = 10;

  PoolConfig pool_config() const { return {weights, theta}; }
  bool operator==(const TaskConfig&) const = default;
};

struct SubmissionRecord {
  std::string timestamp;
  std::string student;
  std::string task;
  std::string verdict;  // verdict name; empty in replay input that is not graded yet
  std::string sql;

  bool operator==(const SubmissionRecord&) const = default;
};

/// Tab-separated: timestamp, student, task, verdict, sql. Backslash, tab,
/// newline and carriage return inside fields are escaped as \\ \t \n \r.
std::string format_log_line(const SubmissionRecord& record);
/// Throws BundleError on a malformed line.
SubmissionRecord parse_log_line(const std::string& line);
std::vector<SubmissionRecord> parse_log(const std::string& text);

struct Flip {
  std::int64_t id;
  Origin origin;
  EntryStatus status;
  Verdict before;
  Verdict after;
};

struct SubmitResult {
  FeedbackReport report;
  std::optional<PoolEvent> event;
  SubmissionRecord record;
};

class Task {
 public:
  /// Validates the schema and data and requires the lecturer solution to
  /// run on them. Throws SchemaError, ParseError, ProvisionError or
  /// BundleError.
  static Task create(std::string id, std::string description, std::string schema_sql,
                     std::string seed_sql, std::string hidden_sql, std::string lecturer_sql,
                     bool output_order_required, TaskConfig config = {});

  /// Throws BundleError on a missing or malformed bundle.
  static Task load(const std::filesystem::path& dir);
  /// Deterministic: saving an unchanged loaded task rewrites identical bytes.
  void save(const std::filesystem::path& dir) const;

  const std::string& id() const { return id_; }
  const std::string& description() const { return description_; }
  const std::string& schema_sql() const { return data_.schema_sql; }
  const TaskData& data() const { return data_; }
  const SchemaDef& schema() const { return schema_; }
  bool output_order_required() const { return order_required_; }
  const TaskConfig& config() const { return config_; }
  const ReferencePool& pool() const { return pool_; }
  const std::vector<SubmissionRecord>& log() const { return log_; }

  HarmonizeOptions harmonize_options() const;
  CanonicalQuery canonicalize(const std::string& sql) const;

  /// Full pipeline without side effects.
  FeedbackReport generate_feedback(const std::string& sql, FeedbackMode mode) const;

  /// Grades, appends to the log and feeds Correct submissions to the pool.
  SubmitResult submit(const std::string& student, const std::string& sql, FeedbackMode mode,
                      const std::string& timestamp);
  /// Second half of submit() for a report produced by generate_feedback().
  SubmitResult commit(const std::string& student, const std::string& sql,
                      FeedbackReport report, const std::string& timestamp);

  ReviewResult review(std::int64_t id, Decision decision, Quality quality = Quality::Good);

  /// Applies `rows_sql` to the hidden test data and re-grades every entry
  /// except deleted ones. The lecturer solution flips when it stops
  /// returning rows. The change is kept.
  std::vector<Flip> recheck(const std::string& rows_sql);

  /// Correct submissions from the log, in order.
  std::vector<std::string> correct_corpus() const;
  std::vector<std::pair<std::size_t, std::size_t>> curve(
      const std::vector<std::size_t>& thresholds) const;
  std::size_t harmonized_count() const;
  LearningMetrics metrics(FeedbackMode mode) const;

 private:
  Task() : pool_("", {}) {}
  Verdict grade(Sandbox& sandbox, const std::string& sql) const;
  Verdict lecturer_health(Sandbox& sandbox) const;

  std::string id_;
  std::string description_;
  TaskData data_;
  SchemaDef schema_;
  bool order_required_ = false;
  TaskConfig config_;
  ReferencePool pool_;
  std::vector<SubmissionRecord> log_;
};

/// Suggested seed rows for a schema: 4 rows per table (up to 8 when the
/// solution would otherwise return nothing), foreign keys pointing at
/// existing parent rows, and for every comparison between a column and a
/// literal in the solution one row that satisfies it and one that does not.
/// Throws SchemaError or ParseError on a bad schema.
std::string suggest_seed(const std::string& schema_sql, const std::string& solution_sql);

}  // namespace sqltutor
