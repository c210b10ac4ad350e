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


// Dynamic checking: executes queries in an isolated embedded database and
// compares result sets.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sqltutor {

struct Cell {
  enum class Kind { Null, Integer, Real, Text, Blob };
  Kind kind = Kind::Null;
  std::int64_t integer = 0;
  double real = 0;
  std::string text;  // Text and Blob

  static Cell null() { return {}; }
  static Cell of(std::int64_t v);
  static Cell of(double v);
  static Cell of(std::string v);

  std::string to_string() const;
};

/// Total order used for multiset comparison: NULL first, numbers by value
/// (integers and reals compare equal when numerically equal), then text,
/// then blobs. NULL equals NULL.
int compare_cells(const Cell& a, const Cell& b);

using Row = std::vector<Cell>;

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  bool ordered = false;

  std::size_t column_count() const { return columns.size(); }
};

/// Task data: DDL, seed rows and hidden test rows, all SQL scripts.
struct TaskData {
  std::string schema_sql;
  std::string seed_sql;
  std::string hidden_sql;
};

/// One in-memory database per instance. Graded statements run with
/// query_only enabled and must be a single read-only statement.
class Sandbox {
 public:
  /// Throws ProvisionError when any script fails.
  explicit Sandbox(const TaskData& data);
  ~Sandbox();
  Sandbox(Sandbox&&) noexcept;
  Sandbox& operator=(Sandbox&&) noexcept;
  Sandbox(const Sandbox&) = delete;
  Sandbox& operator=(const Sandbox&) = delete;

  /// Runs one SELECT. The text is parsed and executed in the engine's
  /// dialect; text the parser rejects is handed to the engine verbatim.
  /// Throws ExecError with the engine's message.
  ResultSet run_select(const std::string& text);

  /// Applies a data script outside the read-only guard (lecturer changes).
  /// Throws ProvisionError.
  void apply(const std::string& script);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct CompareOptions {
  bool ordered = false;               // compare as sequences
  bool ignore_column_order = false;   // accept any column permutation
};

struct Comparison {
  bool equal = true;
  bool column_count_mismatch = false;
  bool order_mismatch = false;
  std::vector<Row> missing;  // in the reference, not in the submission
  std::vector<Row> extra;    // in the submission, not in the reference

  std::string summary() const;
};

Comparison compare(const ResultSet& reference, const ResultSet& submission,
                   const CompareOptions& options = {});

enum class VerdictKind { Correct, WrongResult, NonExecutable, Rejected };

std::string_view verdict_name(VerdictKind kind);
VerdictKind verdict_from_name(std::string_view name);

struct Verdict {
  VerdictKind kind = VerdictKind::Rejected;
  std::string detail;  // diff summary, engine message or rejection reason

  bool operator==(const Verdict&) const = default;
};

/// Grades `submission` against `reference_sql` on a fresh sandbox. Result
/// order only matters when output_order_required is set and the reference
/// orders its output; otherwise rows compare as multisets and columns may
/// appear in any order.
Verdict verdict(const TaskData& data, const std::string& reference_sql,
                bool output_order_required, const std::string& submission);

/// Same, on an already provisioned sandbox.
Verdict verdict(Sandbox& sandbox, const std::string& reference_sql,
                bool output_order_required, const std::string& submission);

}  // namespace sqltutor
