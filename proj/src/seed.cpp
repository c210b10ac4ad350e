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


#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "sqltutor/errors.hpp"
#include "sqltutor/parser.hpp"
#include "sqltutor/scope.hpp"
#include "sqltutor/task.hpp"

namespace sqltutor {

namespace {

// Literal-valued cell; Null when unset.
struct Value {
  bool null = true;
  bool text = false;
  double number = 0;
  std::string str;

  static Value num(double v) { return {false, false, v, {}}; }
  static Value txt(std::string s) { return {false, true, 0, std::move(s)}; }

  std::string sql() const {
    if (null) return "NULL";
    if (!text) {
      std::ostringstream ss;
      ss.precision(15);
      ss << number;
      return ss.str();
    }
    std::string out = "'";
    for (char c : str) out += c == '\'' ? std::string("''") : std::string(1, c);
    return out + "'";
  }
};

Value literal_value(const ScalarExpr& e) {
  switch (e.literal) {
    case LiteralKind::Integer:
    case LiteralKind::Decimal: return Value::num(std::stod(e.name));
    case LiteralKind::String: return Value::txt(e.name);
    case LiteralKind::Null: return {};
  }
  return {};
}

bool is_literal(const ScalarExpr& e) {
  if (e.kind == ExprKind::Literal) return true;
  return e.kind == ExprKind::Unary && e.name == "-" && e.args.size() == 1 &&
         e.args[0].kind == ExprKind::Literal;
}

Value literal_of(const ScalarExpr& e) {
  if (e.kind == ExprKind::Unary) {
    Value v = literal_value(e.args[0]);
    v.number = -v.number;
    return v;
  }
  return literal_value(e);
}

Value shifted(const Value& v, double delta) {
  if (v.null) return v;
  if (!v.text) return Value::num(v.number + delta);
  if (delta > 0) return Value::txt(v.str + "z");
  if (delta < 0) return Value::txt(v.str.empty() ? std::string() : v.str.substr(0, v.str.size() - 1));
  return v;
}

std::string like_instance(const std::string& pattern) {
  std::string out;
  for (char c : pattern) out += c == '%' ? std::string() : c == '_' ? std::string("x") : std::string(1, c);
  return out;
}

struct Constraint {
  std::string table;
  std::string column;
  Value match;
  Value miss;
};

class ConstraintCollector {
 public:
  explicit ConstraintCollector(const SchemaDef& schema) : schema_(schema) {}
  std::vector<Constraint> out;

  void query(const Query& q, const Scope* parent) {
    if (q.from) derived(*q.from, parent);
    const Scope scope(q, schema_, parent);
    if (q.from) joins(*q.from, scope);
    for (const auto& s : q.select) expr(s.expr, scope);
    if (q.where) cond(*q.where, scope);
    if (q.having) cond(*q.having, scope);
  }

 private:
  const SchemaDef& schema_;

  void derived(const FromNode& n, const Scope* parent) {
    if (n.kind == FromKind::Derived) query(*n.subquery, parent);
    for (const auto& op : n.operands) derived(op, parent);
  }
  void joins(const FromNode& n, const Scope& scope) {
    for (const auto& op : n.operands) joins(op, scope);
    if (n.condition) cond(*n.condition, scope);
  }
  void expr(const ScalarExpr& e, const Scope& scope) {
    if (e.kind == ExprKind::Subquery) query(*e.subquery, &scope);
    for (const auto& a : e.args) expr(a, scope);
  }
  void cond(const BoolExpr& b, const Scope& scope) {
    if (b.kind != BoolKind::Atom) {
      for (const auto& c : b.children) cond(c, scope);
      return;
    }
    for (const auto& a : b.atom.args) expr(a, scope);
    atom(b.atom, scope);
  }

  std::optional<std::pair<std::string, std::string>> base_column(const ScalarExpr& e,
                                                                 const Scope& scope) {
    if (e.kind != ExprKind::Column) return std::nullopt;
    auto binding = scope.resolve(e);
    if (!binding || binding->info().table.empty()) return std::nullopt;
    return std::make_pair(binding->info().table, e.name);
  }

  void add(const std::pair<std::string, std::string>& col, Value match, Value miss) {
    out.push_back({col.first, col.second, std::move(match), std::move(miss)});
  }

  void atom(const Predicate& p, const Scope& scope) {
    const auto& a = p.args;
    if (a.empty()) return;
    if (p.op == PredOp::IsNull) {
      if (auto col = base_column(a[0], scope)) add(*col, Value{}, Value::num(1));
      return;
    }
    if (p.op == PredOp::Between && a.size() == 3 && is_literal(a[1]) && is_literal(a[2])) {
      if (auto col = base_column(a[0], scope))
        add(*col, literal_of(a[1]), shifted(literal_of(a[2]), 1));
      return;
    }
    if (p.op == PredOp::In && a.size() >= 2 && is_literal(a[1])) {
      if (auto col = base_column(a[0], scope)) {
        Value miss = literal_of(a[1]);
        for (std::size_t i = 1; i < a.size(); ++i)
          if (is_literal(a[i]) && !literal_of(a[i]).text && !miss.text)
            miss.number = std::max(miss.number, literal_of(a[i]).number);
        add(*col, literal_of(a[1]), shifted(miss, miss.text ? 1 : 1000));
      }
      return;
    }
    if (p.op == PredOp::Like && a.size() == 2 && a[1].kind == ExprKind::Literal) {
      if (auto col = base_column(a[0], scope))
        add(*col, Value::txt(like_instance(a[1].name)), Value::txt("#"));
      return;
    }
    if (!is_comparison(p.op) || a.size() != 2) return;
    PredOp op = p.op;
    std::optional<std::pair<std::string, std::string>> col;
    Value v;
    if (is_literal(a[1]) && (col = base_column(a[0], scope))) {
      v = literal_of(a[1]);
    } else if (is_literal(a[0]) && (col = base_column(a[1], scope))) {
      v = literal_of(a[0]);
      op = flip_comparison(op);
    } else {
      return;
    }
    if (v.null) return;
    switch (op) {
      case PredOp::Eq: add(*col, v, shifted(v, 1)); break;
      case PredOp::Ne: add(*col, shifted(v, 1), v); break;
      case PredOp::Lt: add(*col, shifted(v, -1), v); break;
      case PredOp::Le: add(*col, v, shifted(v, 1)); break;
      case PredOp::Gt: add(*col, shifted(v, 1), v); break;
      case PredOp::Ge: add(*col, v, shifted(v, -1)); break;
      default: break;
    }
  }
};

std::vector<const TableDef*> parents_first(const SchemaDef& schema) {
  std::vector<const TableDef*> out;
  std::set<std::string> placed;
  std::vector<const TableDef*> pending;
  for (const auto& t : schema.tables) pending.push_back(&t);
  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const bool ready = std::all_of(
          (*it)->foreign_keys.begin(), (*it)->foreign_keys.end(), [&](const ForeignKey& fk) {
            return placed.count(fk.ref_table) || fk.ref_table == (*it)->name ||
                   !schema.find_table(fk.ref_table);
          });
      if (ready) {
        placed.insert((*it)->name);
        out.push_back(*it);
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
    if (!progress) {  // cycle: break it in declaration order
      placed.insert(pending.front()->name);
      out.push_back(pending.front());
      pending.erase(pending.begin());
    }
  }
  return out;
}

Value default_value(const TableDef& t, const ColumnDef& c, std::size_t row) {
  const double n = static_cast<double>(row + 1);
  switch (c.type) {
    case ColumnType::Integer: return Value::num(n * 10);
    case ColumnType::Decimal: return Value::num(n * 10 + 0.5);
    case ColumnType::Boolean: return Value::num(static_cast<double>(row % 2));
    case ColumnType::Date: return Value::txt("2024-01-" + std::string(row + 1 < 10 ? "0" : "") +
                                             std::to_string(row + 1));
    case ColumnType::Text: break;
  }
  return Value::txt(t.name + "_" + c.name + "_" + std::to_string(row + 1));
}

using Rows = std::vector<std::vector<Value>>;

std::string generate(const SchemaDef& schema, const std::vector<Constraint>& constraints,
                     std::size_t rows_per_table, bool all_match_beyond_four) {
  std::map<std::string, Rows> data;
  std::ostringstream script;
  for (const TableDef* t : parents_first(schema)) {
    Rows rows(rows_per_table, std::vector<Value>(t->columns.size()));
    for (std::size_t c = 0; c < t->columns.size(); ++c) {
      const ColumnDef& col = t->columns[c];
      for (std::size_t r = 0; r < rows_per_table; ++r) rows[r][c] = default_value(*t, col, r);
      const bool pk = std::find(t->primary_key.begin(), t->primary_key.end(), col.name) !=
                      t->primary_key.end();
      if (pk && col.type == ColumnType::Integer)
        for (std::size_t r = 0; r < rows_per_table; ++r)
          rows[r][c] = Value::num(static_cast<double>(r + 1));
      for (const auto& k : constraints) {
        if (k.table != t->name || k.column != col.name) continue;
        for (std::size_t r = 0; r < rows_per_table; ++r) {
          const bool match = r % 2 == 0 || (all_match_beyond_four && r >= 4);
          const Value& v = match ? k.match : k.miss;
          if (v.null && (col.not_null || pk)) continue;
          rows[r][c] = v;
        }
      }
      for (const auto& fk : t->foreign_keys) {
        if (fk.column != col.name) continue;
        auto parent = data.find(fk.ref_table);
        const TableDef* pt = schema.find_table(fk.ref_table);
        if (parent == data.end() || !pt || parent->second.empty()) continue;
        std::size_t pc = 0;
        while (pc < pt->columns.size() && pt->columns[pc].name != fk.ref_column) ++pc;
        if (pc == pt->columns.size()) continue;
        for (std::size_t r = 0; r < rows_per_table; ++r)
          rows[r][c] = parent->second[r % parent->second.size()][pc];
      }
    }
    // Constraints and FKs may repeat key values; keep single-column keys unique.
    if (t->primary_key.size() == 1) {
      std::size_t kc = 0;
      while (kc < t->columns.size() && t->columns[kc].name != t->primary_key[0]) ++kc;
      if (kc < t->columns.size()) {
        // An INTEGER PRIMARY KEY is the rowid and only takes integers.
        const bool rowid = t->columns[kc].type == ColumnType::Integer;
        std::set<std::string> seen;
        for (std::size_t r = 0; r < rows_per_table; ++r) {
          Value& v = rows[r][kc];
          const bool integral = !v.null && !v.text && v.number == std::floor(v.number);
          if (rowid && !integral) v = Value::num(static_cast<double>(r + 1));
          for (double bump = 100; v.null || !seen.insert(v.sql()).second; bump += 1)
            v = v.text || v.null ? Value::txt(t->name + "_" + std::to_string(r) + "_" +
                                              std::to_string(static_cast<int>(bump)))
                                 : Value::num(v.number + bump);
        }
      }
    }
    for (const auto& row : rows) {
      script << "INSERT INTO " << t->name << " (";
      for (std::size_t c = 0; c < t->columns.size(); ++c)
        script << (c ? ", " : "") << t->columns[c].name;
      script << ") VALUES (";
      for (std::size_t c = 0; c < row.size(); ++c) script << (c ? ", " : "") << row[c].sql();
      script << ");\n";
    }
    data[t->name] = std::move(rows);
  }
  return script.str();
}

}  // namespace

std::string suggest_seed(const std::string& schema_sql, const std::string& solution_sql) {
  const SchemaDef schema = parse_schema(schema_sql);
  std::vector<Constraint> constraints;
  try {
    ConstraintCollector collector(schema);
    collector.query(parse(solution_sql, schema), nullptr);
    constraints = std::move(collector.out);
  } catch (const ParseError&) {
  }
  const std::string four = generate(schema, constraints, 4, false);
  try {
    Sandbox sandbox(TaskData{schema_sql, four, ""});
    if (!sandbox.run_select(solution_sql).rows.empty()) return four;
    return generate(schema, constraints, 8, true);
  } catch (const Error&) {
    return four;
  }
}

}  // namespace sqltutor
