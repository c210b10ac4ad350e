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

// Syntax tree for the supported SELECT subset.
//
// All node types are plain values: copying a Query deep-copies every nested
// subquery, and operator== is structural equality. Identifiers are stored
// lower-cased, function names and CAST target types upper-cased, and string
// literals hold their unescaped contents regardless of the quote style used
// in the source text.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqltutor {

/// Owning pointer with deep-copy semantics.
template <class T>
class Box {
 public:
  Box() = default;
  explicit Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other)
      : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other)
      ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  explicit operator bool() const { return ptr_ != nullptr; }
  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }
  T* get() { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) {
    if (!a.ptr_ || !b.ptr_) return !a.ptr_ && !b.ptr_;
    return *a.ptr_ == *b.ptr_;
  }

 private:
  std::unique_ptr<T> ptr_;
};

struct Query;

enum class ExprKind { Column, Literal, Star, Function, Binary, Unary, Subquery };
enum class LiteralKind { Integer, Decimal, String, Null };

struct ScalarExpr {
  ExprKind kind = ExprKind::Literal;
  std::string qualifier;  // Column, Star
  // Column: column name; Literal: literal text; Function: upper-case name;
  // Binary/Unary: operator symbol.
  std::string name;
  LiteralKind literal = LiteralKind::Null;
  bool distinct = false;   // COUNT(DISTINCT x)
  std::string cast_type;   // CAST(x AS <type>)
  std::vector<ScalarExpr> args;
  Box<Query> subquery;     // Subquery

  bool operator==(const ScalarExpr&) const = default;

  static ScalarExpr column(std::string qualifier, std::string name);
  static ScalarExpr integer(std::int64_t value);
  static ScalarExpr string_literal(std::string value);
  static ScalarExpr null_literal();
  static ScalarExpr star(std::string qualifier = {});
  static ScalarExpr function(std::string name, std::vector<ScalarExpr> args);
  static ScalarExpr binary(std::string op, ScalarExpr lhs, ScalarExpr rhs);
  static ScalarExpr scalar_subquery(Query query);

  bool is_column() const { return kind == ExprKind::Column; }
  bool is_aggregate_call() const;
};

enum class PredOp {
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Like,
  In,
  Between,
  IsNull,
  Exists,
  Chain,  // a < b < c
  Truth,  // bare scalar used as a condition, e.g. ISNULL(x)
};

std::string_view pred_op_symbol(PredOp op);
bool is_comparison(PredOp op);
/// Operator obtained by swapping the operands (a < b  <=>  b > a).
PredOp flip_comparison(PredOp op);

/// One atomic condition. Operand layout by operator:
///   comparisons and LIKE: [lhs, rhs]
///   IN:      [lhs, item...]; a single Subquery item is the IN-subquery form
///   BETWEEN: [value, low, high]
///   IS NULL: [value]
///   EXISTS:  [Subquery]
///   Chain:   [e0, e1, ..., en] with chain[i] relating e_i and e_{i+1}
///   Truth:   [expr]
struct Predicate {
  PredOp op = PredOp::Eq;
  std::vector<ScalarExpr> args;
  std::vector<PredOp> chain;

  bool operator==(const Predicate&) const = default;
};

enum class BoolKind { And, Or, Not, Atom };

struct BoolExpr {
  BoolKind kind = BoolKind::Atom;
  std::vector<BoolExpr> children;
  Predicate atom;

  bool operator==(const BoolExpr&) const = default;

  static BoolExpr make_atom(Predicate p);
  static BoolExpr make_not(BoolExpr child);
  /// n-ary connective; a single child is returned unwrapped and nested
  /// connectives of the same kind are flattened.
  static BoolExpr make_and(std::vector<BoolExpr> children);
  static BoolExpr make_or(std::vector<BoolExpr> children);
};

enum class FromKind { Table, Derived, Join };
enum class JoinKind { Inner, Left, Right, Cross, Comma };

std::string_view join_keyword(JoinKind kind);

struct FromNode {
  FromKind kind = FromKind::Table;
  std::string name;   // Table
  std::string alias;  // Table (optional), Derived (required)
  Box<Query> subquery;
  JoinKind join = JoinKind::Inner;
  std::vector<FromNode> operands;  // Join: exactly two
  std::optional<BoolExpr> condition;

  bool operator==(const FromNode&) const = default;

  static FromNode table(std::string name, std::string alias = {});
  static FromNode derived(Query query, std::string alias);
  static FromNode joined(JoinKind kind, FromNode lhs, FromNode rhs,
                         std::optional<BoolExpr> condition = std::nullopt);

  /// Name under which columns of this source are qualified.
  const std::string& exposed_name() const {
    return alias.empty() ? name : alias;
  }
};

struct SelectItem {
  ScalarExpr expr;
  std::string alias;

  bool operator==(const SelectItem&) const = default;
};

struct OrderItem {
  ScalarExpr expr;
  bool descending = false;
  bool explicit_asc = false;  // source spelled out ASC

  bool operator==(const OrderItem&) const = default;
};

struct Query {
  bool distinct = false;
  std::vector<SelectItem> select;
  std::optional<FromNode> from;
  std::optional<BoolExpr> where;
  std::vector<ScalarExpr> group_by;
  std::optional<BoolExpr> having;
  std::vector<OrderItem> order_by;
  std::optional<std::int64_t> limit;

  bool operator==(const Query&) const = default;
};

enum class Clause { Select, From, Where, GroupBy, Having, OrderBy, Limit };

std::string_view clause_name(Clause clause);

// --- serialization --------------------------------------------------------

enum class Dialect {
  Canonical,  // round-trips through parse()
  Sqlite,     // executable by the embedded engine (see dialect notes in ast.cpp)
};

std::string to_sql(const Query& query, Dialect dialect = Dialect::Canonical);
std::string to_sql(const ScalarExpr& expr, Dialect dialect = Dialect::Canonical);
std::string to_sql(const Predicate& atom, Dialect dialect = Dialect::Canonical);
std::string to_sql(const BoolExpr& expr, Dialect dialect = Dialect::Canonical);
std::string to_sql(const FromNode& node, Dialect dialect = Dialect::Canonical);

// --- traversal helpers ----------------------------------------------------

/// Leaf sources (tables and derived tables) in left-to-right order.
std::vector<const FromNode*> leaf_sources(const FromNode& node);
std::vector<FromNode*> leaf_sources(FromNode& node);

bool contains_aggregate(const ScalarExpr& expr);
bool contains_aggregate(const BoolExpr& expr);

}  // namespace sqltutor
