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


#include "sqltutor/checker.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "sqltutor/errors.hpp"
#include "sqltutor/parser.hpp"

namespace sqltutor {

namespace {

constexpr int kProgressOps = 1000;
constexpr long kMaxProgressCalls = 200'000;  // ~2e8 VM instructions
constexpr std::size_t kMaxPermutationTries = 5040;

int progress_cb(void* p) {
  auto* calls = static_cast<long*>(p);
  return ++*calls > kMaxProgressCalls ? 1 : 0;
}

bool blank(const char* s) {
  for (; *s; ++s)
    if (!std::isspace(static_cast<unsigned char>(*s)) && *s != ';') return false;
  return true;
}

int rank(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Null: return 0;
    case Cell::Kind::Integer:
    case Cell::Kind::Real: return 1;
    case Cell::Kind::Text: return 2;
    case Cell::Kind::Blob: return 3;
  }
  return 4;
}

int compare_numbers(const Cell& a, const Cell& b) {
  if (a.kind == Cell::Kind::Integer && b.kind == Cell::Kind::Integer)
    return a.integer < b.integer ? -1 : a.integer > b.integer ? 1 : 0;
  long double x = a.kind == Cell::Kind::Integer ? static_cast<long double>(a.integer) : a.real;
  long double y = b.kind == Cell::Kind::Integer ? static_cast<long double>(b.integer) : b.real;
  return x < y ? -1 : x > y ? 1 : 0;
}

int compare_rows(const Row& a, const Row& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (int c = compare_cells(a[i], b[i])) return c;
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

bool rows_less(const Row& a, const Row& b) { return compare_rows(a, b) < 0; }

void multiset_diff(std::vector<Row> ref, std::vector<Row> sub, Comparison& out) {
  std::sort(ref.begin(), ref.end(), rows_less);
  std::sort(sub.begin(), sub.end(), rows_less);
  std::size_t i = 0, j = 0;
  while (i < ref.size() && j < sub.size()) {
    int c = compare_rows(ref[i], sub[j]);
    if (c == 0) {
      ++i;
      ++j;
    } else if (c < 0) {
      out.missing.push_back(ref[i++]);
    } else {
      out.extra.push_back(sub[j++]);
    }
  }
  for (; i < ref.size(); ++i) out.missing.push_back(ref[i]);
  for (; j < sub.size(); ++j) out.extra.push_back(sub[j]);
}

bool sequence_equal(const std::vector<Row>& a, const std::vector<Row>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (compare_rows(a[i], b[i]) != 0) return false;
  return true;
}

Comparison compare_fixed(const std::vector<Row>& ref, const std::vector<Row>& sub, bool ordered) {
  Comparison out;
  multiset_diff(ref, sub, out);
  if (!out.missing.empty() || !out.extra.empty()) {
    out.equal = false;
  } else if (ordered && !sequence_equal(ref, sub)) {
    out.equal = false;
    out.order_mismatch = true;
  }
  return out;
}

std::vector<Row> permute(const std::vector<Row>& rows, const std::vector<std::size_t>& perm) {
  std::vector<Row> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    Row p;
    for (std::size_t j : perm) p.push_back(r[j]);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Cell> column_signature(const std::vector<Row>& rows, std::size_t col) {
  std::vector<Cell> sig;
  for (const auto& r : rows) sig.push_back(r[col]);
  std::sort(sig.begin(), sig.end(),
            [](const Cell& a, const Cell& b) { return compare_cells(a, b) < 0; });
  return sig;
}

bool same_signature(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (compare_cells(a[i], b[i]) != 0) return false;
  return true;
}

}  // namespace

Cell Cell::of(std::int64_t v) {
  Cell c;
  c.kind = Kind::Integer;
  c.integer = v;
  return c;
}

Cell Cell::of(double v) {
  Cell c;
  c.kind = Kind::Real;
  c.real = v;
  return c;
}

Cell Cell::of(std::string v) {
  Cell c;
  c.kind = Kind::Text;
  c.text = std::move(v);
  return c;
}

std::string Cell::to_string() const {
  switch (kind) {
    case Kind::Null: return "NULL";
    case Kind::Integer: return std::to_string(integer);
    case Kind::Real: {
      std::ostringstream os;
      os.precision(15);
      os << real;
      return os.str();
    }
    case Kind::Text: return "'" + text + "'";
    case Kind::Blob: return "<blob " + std::to_string(text.size()) + " bytes>";
  }
  return {};
}

int compare_cells(const Cell& a, const Cell& b) {
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (ra) {
    case 0: return 0;
    case 1: return compare_numbers(a, b);
    default: return a.text < b.text ? -1 : a.text > b.text ? 1 : 0;
  }
}

// --- sandbox --------------------------------------------------------------------

struct Sandbox::Impl {
  sqlite3* db = nullptr;
  long progress_calls = 0;

  ~Impl() {
    if (db) sqlite3_close(db);
  }

  void exec(const std::string& sql, const char* what) {
    char* err = nullptr;
    if (sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : sqlite3_errmsg(db);
      sqlite3_free(err);
      throw ProvisionError(std::string(what) + ": " + msg);
    }
  }

  void query_only(bool on) { exec(on ? "PRAGMA query_only=ON" : "PRAGMA query_only=OFF", "pragma"); }
};

Sandbox::Sandbox(const TaskData& data) : impl_(std::make_unique<Impl>()) {
  if (sqlite3_open_v2(":memory:", &impl_->db, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE,
                      nullptr) != SQLITE_OK)
    throw ProvisionError("cannot open in-memory database");
  impl_->exec("PRAGMA foreign_keys=ON", "pragma");
  impl_->exec(data.schema_sql, "schema");
  impl_->exec(data.seed_sql, "seed data");
  impl_->exec(data.hidden_sql, "hidden test data");
  impl_->query_only(true);
}

Sandbox::~Sandbox() = default;
Sandbox::Sandbox(Sandbox&&) noexcept = default;
Sandbox& Sandbox::operator=(Sandbox&&) noexcept = default;

void Sandbox::apply(const std::string& script) {
  impl_->query_only(false);
  try {
    impl_->exec(script, "test data");
  } catch (...) {
    impl_->query_only(true);
    throw;
  }
  impl_->query_only(true);
}

ResultSet Sandbox::run_select(const std::string& text) {
  std::string sql = text;
  ResultSet out;
  try {
    Query tree = parse(text);
    sql = to_sql(tree, Dialect::Sqlite);
    out.ordered = !tree.order_by.empty();
  } catch (const ParseError&) {
  }
  sqlite3* db = impl_->db;
  sqlite3_stmt* stmt = nullptr;
  const char* tail = nullptr;
  if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt, &tail) != SQLITE_OK)
    throw ExecError(sqlite3_errmsg(db));
  std::unique_ptr<sqlite3_stmt, int (*)(sqlite3_stmt*)> guard(stmt, sqlite3_finalize);
  if (!stmt) throw ExecError("empty statement");
  if (tail && !blank(tail)) throw ExecError("only a single statement is allowed");
  if (!sqlite3_stmt_readonly(stmt)) throw ExecError("statement is not read-only");

  const int n = sqlite3_column_count(stmt);
  for (int i = 0; i < n; ++i) {
    const char* name = sqlite3_column_name(stmt, i);
    out.columns.push_back(name ? name : "");
  }
  impl_->progress_calls = 0;
  sqlite3_progress_handler(db, kProgressOps, progress_cb, &impl_->progress_calls);
  int rc;
  while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
    Row row;
    for (int i = 0; i < n; ++i) {
      switch (sqlite3_column_type(stmt, i)) {
        case SQLITE_INTEGER: row.push_back(Cell::of(static_cast<std::int64_t>(sqlite3_column_int64(stmt, i)))); break;
        case SQLITE_FLOAT: row.push_back(Cell::of(sqlite3_column_double(stmt, i))); break;
        case SQLITE_TEXT:
          row.push_back(Cell::of(std::string(reinterpret_cast<const char*>(sqlite3_column_text(stmt, i)),
                                             static_cast<std::size_t>(sqlite3_column_bytes(stmt, i)))));
          break;
        case SQLITE_BLOB: {
          Cell c;
          c.kind = Cell::Kind::Blob;
          const auto* p = static_cast<const char*>(sqlite3_column_blob(stmt, i));
          c.text.assign(p ? p : "", static_cast<std::size_t>(sqlite3_column_bytes(stmt, i)));
          row.push_back(std::move(c));
          break;
        }
        default: row.push_back(Cell::null()); break;
      }
    }
    out.rows.push_back(std::move(row));
  }
  sqlite3_progress_handler(db, 0, nullptr, nullptr);
  if (rc != SQLITE_DONE) {
    if (rc == SQLITE_INTERRUPT) throw ExecError("query exceeded the execution budget");
    throw ExecError(sqlite3_errmsg(db));
  }
  return out;
}

// --- comparison -----------------------------------------------------------------

std::string Comparison::summary() const {
  if (equal) return "result sets are equal";
  if (column_count_mismatch) return "different number of columns";
  if (order_mismatch) return "rows are correct but in the wrong order";
  std::ostringstream os;
  bool first = true;
  if (!missing.empty()) {
    os << missing.size() << " expected row(s) missing";
    first = false;
  }
  if (!extra.empty()) os << (first ? "" : ", ") << extra.size() << " unexpected row(s)";
  return os.str();
}

Comparison compare(const ResultSet& reference, const ResultSet& submission,
                   const CompareOptions& options) {
  if (reference.column_count() != submission.column_count()) {
    Comparison out;
    out.equal = false;
    out.column_count_mismatch = true;
    return out;
  }
  Comparison direct = compare_fixed(reference.rows, submission.rows, options.ordered);
  if (direct.equal || !options.ignore_column_order || reference.column_count() < 2)
    return direct;

  const std::size_t m = reference.column_count();
  std::vector<std::vector<std::size_t>> candidates(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto sig = column_signature(reference.rows, i);
    for (std::size_t j = 0; j < m; ++j)
      if (same_signature(sig, column_signature(submission.rows, j))) candidates[i].push_back(j);
    if (candidates[i].empty()) return direct;
  }
  std::vector<std::size_t> perm(m);
  std::vector<bool> taken(m, false);
  std::size_t tries = 0;
  std::optional<Comparison> found;
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (found || tries >= kMaxPermutationTries) return;
    if (i == m) {
      ++tries;
      Comparison c = compare_fixed(reference.rows, permute(submission.rows, perm), options.ordered);
      if (c.equal) found = c;
      return;
    }
    for (std::size_t j : candidates[i]) {
      if (taken[j]) continue;
      taken[j] = true;
      perm[i] = j;
      search(i + 1);
      taken[j] = false;
    }
  };
  search(0);
  return found ? *found : direct;
}

// --- verdicts -------------------------------------------------------------------

std::string_view verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Correct: return "Correct";
    case VerdictKind::WrongResult: return "WrongResult";
    case VerdictKind::NonExecutable: return "NonExecutable";
    case VerdictKind::Rejected: return "Rejected";
  }
  return "Rejected";
}

VerdictKind verdict_from_name(std::string_view name) {
  for (auto k : {VerdictKind::Correct, VerdictKind::WrongResult, VerdictKind::NonExecutable,
                 VerdictKind::Rejected})
    if (verdict_name(k) == name) return k;
  throw Error("unknown verdict: " + std::string(name));
}

namespace {

std::optional<Verdict> reject(const std::string& submission) {
  StatementClass cls = classify(submission);
  if (cls == StatementClass::SingleSelect) return std::nullopt;
  return Verdict{VerdictKind::Rejected, "only a single SELECT statement is accepted (" +
                                            std::string(statement_class_name(cls)) + ")"};
}

}  // namespace

Verdict verdict(Sandbox& sandbox, const std::string& reference_sql, bool output_order_required,
                const std::string& submission) {
  if (auto r = reject(submission)) return *r;
  ResultSet ref;
  try {
    ref = sandbox.run_select(reference_sql);
  } catch (const ExecError& e) {
    return {VerdictKind::NonExecutable, std::string("reference solution failed: ") + e.what()};
  }
  ResultSet sub;
  try {
    sub = sandbox.run_select(submission);
  } catch (const ExecError& e) {
    return {VerdictKind::NonExecutable, e.what()};
  }
  CompareOptions options;
  options.ordered = output_order_required && ref.ordered;
  options.ignore_column_order = !output_order_required;
  Comparison c = compare(ref, sub, options);
  if (c.equal) return {VerdictKind::Correct, {}};
  return {VerdictKind::WrongResult, c.summary()};
}

Verdict verdict(const TaskData& data, const std::string& reference_sql,
                bool output_order_required, const std::string& submission) {
  if (auto r = reject(submission)) return *r;
  Sandbox sandbox(data);
  return verdict(sandbox, reference_sql, output_order_required, submission);
}

}  // namespace sqltutor
