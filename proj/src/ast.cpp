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

#include "sqltutor/ast.hpp"

#include <algorithm>
#include <array>

namespace sqltutor {

// --- factories --------------------------------------------------------------

ScalarExpr ScalarExpr::column(std::string qualifier, std::string name) {
  ScalarExpr e;
  e.kind = ExprKind::Column;
  e.qualifier = std::move(qualifier);
  e.name = std::move(name);
  return e;
}

ScalarExpr ScalarExpr::integer(std::int64_t value) {
  ScalarExpr e;
  e.kind = ExprKind::Literal;
  e.literal = LiteralKind::Integer;
  e.name = std::to_string(value);
  return e;
}

ScalarExpr ScalarExpr::string_literal(std::string value) {
  ScalarExpr e;
  e.kind = ExprKind::Literal;
  e.literal = LiteralKind::String;
  e.name = std::move(value);
  return e;
}

ScalarExpr ScalarExpr::null_literal() {
  ScalarExpr e;
  e.kind = ExprKind::Literal;
  e.literal = LiteralKind::Null;
  e.name = "NULL";
  return e;
}

ScalarExpr ScalarExpr::star(std::string qualifier) {
  ScalarExpr e;
  e.kind = ExprKind::Star;
  e.qualifier = std::move(qualifier);
  return e;
}

ScalarExpr ScalarExpr::function(std::string name, std::vector<ScalarExpr> args) {
  ScalarExpr e;
  e.kind = ExprKind::Function;
  e.name = std::move(name);
  e.args = std::move(args);
  return e;
}

ScalarExpr ScalarExpr::binary(std::string op, ScalarExpr lhs, ScalarExpr rhs) {
  ScalarExpr e;
  e.kind = ExprKind::Binary;
  e.name = std::move(op);
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

ScalarExpr ScalarExpr::scalar_subquery(Query query) {
  ScalarExpr e;
  e.kind = ExprKind::Subquery;
  e.subquery = Box<Query>(std::move(query));
  return e;
}

namespace {

bool is_aggregate_name(std::string_view name) {
  static constexpr std::array<std::string_view, 6> kAggregates = {
      "COUNT", "SUM", "AVG", "MIN", "MAX", "GROUP_CONCAT"};
  return std::find(kAggregates.begin(), kAggregates.end(), name) !=
         kAggregates.end();
}

}  // namespace

bool ScalarExpr::is_aggregate_call() const {
  return kind == ExprKind::Function && is_aggregate_name(name);
}

BoolExpr BoolExpr::make_atom(Predicate p) {
  BoolExpr b;
  b.kind = BoolKind::Atom;
  b.atom = std::move(p);
  return b;
}

BoolExpr BoolExpr::make_not(BoolExpr child) {
  BoolExpr b;
  b.kind = BoolKind::Not;
  b.children.push_back(std::move(child));
  return b;
}

namespace {

BoolExpr make_nary(BoolKind kind, std::vector<BoolExpr> children) {
  std::vector<BoolExpr> flat;
  for (auto& c : children) {
    if (c.kind == kind) {
      for (auto& g : c.children) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  BoolExpr b;
  b.kind = kind;
  b.children = std::move(flat);
  return b;
}

}  // namespace

BoolExpr BoolExpr::make_and(std::vector<BoolExpr> children) {
  return make_nary(BoolKind::And, std::move(children));
}

BoolExpr BoolExpr::make_or(std::vector<BoolExpr> children) {
  return make_nary(BoolKind::Or, std::move(children));
}

FromNode FromNode::table(std::string name, std::string alias) {
  FromNode n;
  n.kind = FromKind::Table;
  n.name = std::move(name);
  n.alias = std::move(alias);
  return n;
}

FromNode FromNode::derived(Query query, std::string alias) {
  FromNode n;
  n.kind = FromKind::Derived;
  n.subquery = Box<Query>(std::move(query));
  n.alias = std::move(alias);
  return n;
}

FromNode FromNode::joined(JoinKind kind, FromNode lhs, FromNode rhs,
                          std::optional<BoolExpr> condition) {
  FromNode n;
  n.kind = FromKind::Join;
  n.join = kind;
  n.operands.push_back(std::move(lhs));
  n.operands.push_back(std::move(rhs));
  n.condition = std::move(condition);
  return n;
}

// --- names ------------------------------------------------------------------

std::string_view pred_op_symbol(PredOp op) {
  switch (op) {
    case PredOp::Eq: return "=";
    case PredOp::Ne: return "<>";
    case PredOp::Lt: return "<";
    case PredOp::Le: return "<=";
    case PredOp::Gt: return ">";
    case PredOp::Ge: return ">=";
    case PredOp::Like: return "LIKE";
    case PredOp::In: return "IN";
    case PredOp::Between: return "BETWEEN";
    case PredOp::IsNull: return "IS NULL";
    case PredOp::Exists: return "EXISTS";
    case PredOp::Chain: return "CHAIN";
    case PredOp::Truth: return "TRUTH";
  }
  return "?";
}

bool is_comparison(PredOp op) {
  switch (op) {
    case PredOp::Eq:
    case PredOp::Ne:
    case PredOp::Lt:
    case PredOp::Le:
    case PredOp::Gt:
    case PredOp::Ge:
      return true;
    default:
      return false;
  }
}

PredOp flip_comparison(PredOp op) {
  switch (op) {
    case PredOp::Lt: return PredOp::Gt;
    case PredOp::Le: return PredOp::Ge;
    case PredOp::Gt: return PredOp::Lt;
    case PredOp::Ge: return PredOp::Le;
    default: return op;
  }
}

std::string_view join_keyword(JoinKind kind) {
  switch (kind) {
    case JoinKind::Inner: return "INNER JOIN";
    case JoinKind::Left: return "LEFT JOIN";
    case JoinKind::Right: return "RIGHT JOIN";
    case JoinKind::Cross: return "CROSS JOIN";
    case JoinKind::Comma: return ",";
  }
  return "?";
}

std::string_view clause_name(Clause clause) {
  switch (clause) {
    case Clause::Select: return "select";
    case Clause::From: return "from";
    case Clause::Where: return "where";
    case Clause::GroupBy: return "group_by";
    case Clause::Having: return "having";
    case Clause::OrderBy: return "order_by";
    case Clause::Limit: return "limit";
  }
  return "?";
}

// --- traversal ----------------------------------------------------------------

namespace {

template <class Node, class Out>
void collect_leaves(Node& node, Out& out) {
  if (node.kind == FromKind::Join) {
    for (auto& op : node.operands) collect_leaves(op, out);
  } else {
    out.push_back(&node);
  }
}

}  // namespace

std::vector<const FromNode*> leaf_sources(const FromNode& node) {
  std::vector<const FromNode*> out;
  collect_leaves(node, out);
  return out;
}

std::vector<FromNode*> leaf_sources(FromNode& node) {
  std::vector<FromNode*> out;
  collect_leaves(node, out);
  return out;
}

bool contains_aggregate(const ScalarExpr& expr) {
  if (expr.is_aggregate_call()) return true;
  if (expr.kind == ExprKind::Subquery) return false;
  return std::any_of(expr.args.begin(), expr.args.end(),
                     [](const ScalarExpr& a) { return contains_aggregate(a); });
}

bool contains_aggregate(const BoolExpr& expr) {
  if (expr.kind == BoolKind::Atom)
    return std::any_of(expr.atom.args.begin(), expr.atom.args.end(),
                       [](const ScalarExpr& a) { return contains_aggregate(a); });
  return std::any_of(expr.children.begin(), expr.children.end(),
                     [](const BoolExpr& c) { return contains_aggregate(c); });
}

// --- serialization ------------------------------------------------------------
//
// The Sqlite dialect differs from the canonical text in four places, all of
// them constructs the embedded engine either lacks or reads differently:
//   * chained comparisons a < b < c are expanded to (a < b AND b < c);
//   * RIGHT JOIN becomes LEFT JOIN with swapped operands, and an unqualified
//     star over such a FROM is spelled as qualified stars in source order so
//     the output column order is unchanged;
//   * HAVING without GROUP BY and without aggregates is evaluated as WHERE;
//   * string literals always use single quotes (also true canonically).

namespace {

std::string quote_string(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

int binary_precedence(const std::string& op) {
  if (op == "*" || op == "/" || op == "%") return 2;
  if (op == "||") return 0;
  return 1;
}

bool has_right_join(const FromNode& node) {
  if (node.kind != FromKind::Join) return false;
  if (node.join == JoinKind::Right) return true;
  return has_right_join(node.operands[0]) || has_right_join(node.operands[1]);
}

std::string bool_child(const BoolExpr& child, Dialect dialect) {
  std::string s = to_sql(child, dialect);
  if (child.kind == BoolKind::And || child.kind == BoolKind::Or)
    return "(" + s + ")";
  return s;
}

std::string join_operand(const FromNode& node, Dialect dialect) {
  std::string s = to_sql(node, dialect);
  if (node.kind == FromKind::Join) return "(" + s + ")";
  return s;
}

std::string join_items(const std::vector<ScalarExpr>& items, Dialect dialect) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += to_sql(items[i], dialect);
  }
  return out;
}

}  // namespace

std::string to_sql(const ScalarExpr& e, Dialect dialect) {
  switch (e.kind) {
    case ExprKind::Column:
      return e.qualifier.empty() ? e.name : e.qualifier + "." + e.name;
    case ExprKind::Literal:
      if (e.literal == LiteralKind::String) return quote_string(e.name);
      if (e.literal == LiteralKind::Null) return "NULL";
      return e.name;
    case ExprKind::Star:
      return e.qualifier.empty() ? "*" : e.qualifier + ".*";
    case ExprKind::Function: {
      if (e.name == "CAST" && e.args.size() == 1)
        return "CAST(" + to_sql(e.args[0], dialect) + " AS " + e.cast_type + ")";
      // ISNULL is a postfix keyword in SQLite, not a function.
      if (dialect == Dialect::Sqlite && e.name == "ISNULL" && e.args.size() == 1)
        return "(" + to_sql(e.args[0], dialect) + " IS NULL)";
      std::string out = e.name + "(";
      if (e.distinct) out += "DISTINCT ";
      out += join_items(e.args, dialect);
      return out + ")";
    }
    case ExprKind::Binary: {
      const int prec = binary_precedence(e.name);
      auto side = [&](const ScalarExpr& child, bool right) {
        std::string s = to_sql(child, dialect);
        if (child.kind == ExprKind::Binary) {
          const int cp = binary_precedence(child.name);
          if (cp < prec || (right && cp == prec)) return "(" + s + ")";
        }
        return s;
      };
      return side(e.args[0], false) + " " + e.name + " " + side(e.args[1], true);
    }
    case ExprKind::Unary: {
      const ScalarExpr& operand = e.args[0];
      if (operand.kind == ExprKind::Column || operand.kind == ExprKind::Function)
        return e.name + to_sql(operand, dialect);
      return e.name + "(" + to_sql(operand, dialect) + ")";
    }
    case ExprKind::Subquery:
      return "(" + to_sql(*e.subquery, dialect) + ")";
  }
  return {};
}

std::string to_sql(const Predicate& p, Dialect dialect) {
  const auto& a = p.args;
  switch (p.op) {
    case PredOp::Like:
    case PredOp::Eq:
    case PredOp::Ne:
    case PredOp::Lt:
    case PredOp::Le:
    case PredOp::Gt:
    case PredOp::Ge:
      return to_sql(a[0], dialect) + " " + std::string(pred_op_symbol(p.op)) +
             " " + to_sql(a[1], dialect);
    case PredOp::In: {
      if (a.size() == 2 && a[1].kind == ExprKind::Subquery)
        return to_sql(a[0], dialect) + " IN " + to_sql(a[1], dialect);
      std::vector<ScalarExpr> items(a.begin() + 1, a.end());
      return to_sql(a[0], dialect) + " IN (" + join_items(items, dialect) + ")";
    }
    case PredOp::Between:
      return to_sql(a[0], dialect) + " BETWEEN " + to_sql(a[1], dialect) +
             " AND " + to_sql(a[2], dialect);
    case PredOp::IsNull:
      return to_sql(a[0], dialect) + " IS NULL";
    case PredOp::Exists:
      return "EXISTS " + to_sql(a[0], dialect);
    case PredOp::Chain: {
      std::string out;
      if (dialect == Dialect::Sqlite) {
        out = "(";
        for (std::size_t i = 0; i < p.chain.size(); ++i) {
          if (i) out += " AND ";
          out += to_sql(a[i], dialect) + " " +
                 std::string(pred_op_symbol(p.chain[i])) + " " +
                 to_sql(a[i + 1], dialect);
        }
        return out + ")";
      }
      out = to_sql(a[0], dialect);
      for (std::size_t i = 0; i < p.chain.size(); ++i)
        out += " " + std::string(pred_op_symbol(p.chain[i])) + " " +
               to_sql(a[i + 1], dialect);
      return out;
    }
    case PredOp::Truth:
      return to_sql(a[0], dialect);
  }
  return {};
}

std::string to_sql(const BoolExpr& b, Dialect dialect) {
  switch (b.kind) {
    case BoolKind::Atom:
      return to_sql(b.atom, dialect);
    case BoolKind::Not:
      return "NOT " + bool_child(b.children[0], dialect);
    case BoolKind::And:
    case BoolKind::Or: {
      const char* sep = b.kind == BoolKind::And ? " AND " : " OR ";
      std::string out;
      for (std::size_t i = 0; i < b.children.size(); ++i) {
        if (i) out += sep;
        out += bool_child(b.children[i], dialect);
      }
      return out;
    }
  }
  return {};
}

std::string to_sql(const FromNode& n, Dialect dialect) {
  switch (n.kind) {
    case FromKind::Table:
      return n.alias.empty() ? n.name : n.name + " " + n.alias;
    case FromKind::Derived:
      return "(" + to_sql(*n.subquery, dialect) + ") " + n.alias;
    case FromKind::Join: {
      const FromNode* lhs = &n.operands[0];
      const FromNode* rhs = &n.operands[1];
      JoinKind kind = n.join;
      const bool swapped = dialect == Dialect::Sqlite && kind == JoinKind::Right;
      if (swapped) {
        std::swap(lhs, rhs);
        kind = JoinKind::Left;
      }
      // Left-deep chains parse back without parentheses on the left operand.
      std::string out = swapped ? join_operand(*lhs, dialect) : to_sql(*lhs, dialect);
      if (kind == JoinKind::Comma)
        out += ", ";
      else
        out += " " + std::string(join_keyword(kind)) + " ";
      out += join_operand(*rhs, dialect);
      if (n.condition) out += " ON " + to_sql(*n.condition, dialect);
      return out;
    }
  }
  return {};
}

std::string to_sql(const Query& q, Dialect dialect) {
  std::string out = "SELECT ";
  if (q.distinct) out += "DISTINCT ";
  const bool expand_star = dialect == Dialect::Sqlite && q.from &&
                           has_right_join(*q.from);
  for (std::size_t i = 0; i < q.select.size(); ++i) {
    if (i) out += ", ";
    const SelectItem& item = q.select[i];
    if (expand_star && item.expr.kind == ExprKind::Star &&
        item.expr.qualifier.empty()) {
      const auto leaves = leaf_sources(*q.from);
      for (std::size_t j = 0; j < leaves.size(); ++j) {
        if (j) out += ", ";
        out += leaves[j]->exposed_name() + ".*";
      }
    } else {
      out += to_sql(item.expr, dialect);
    }
    if (!item.alias.empty()) out += " AS " + item.alias;
  }
  if (q.from) out += " FROM " + to_sql(*q.from, dialect);

  std::optional<BoolExpr> where = q.where;
  std::optional<BoolExpr> having = q.having;
  if (dialect == Dialect::Sqlite && having && q.group_by.empty() &&
      !contains_aggregate(*having) &&
      std::none_of(q.select.begin(), q.select.end(), [](const SelectItem& s) {
        return contains_aggregate(s.expr);
      })) {
    where = where ? BoolExpr::make_and({*where, *having}) : *having;
    having.reset();
  }
  if (where) out += " WHERE " + to_sql(*where, dialect);
  if (!q.group_by.empty()) out += " GROUP BY " + join_items(q.group_by, dialect);
  if (having) out += " HAVING " + to_sql(*having, dialect);
  if (!q.order_by.empty()) {
    out += " ORDER BY ";
    for (std::size_t i = 0; i < q.order_by.size(); ++i) {
      if (i) out += ", ";
      out += to_sql(q.order_by[i].expr, dialect);
      if (q.order_by[i].descending)
        out += " DESC";
      else if (q.order_by[i].explicit_asc)
        out += " ASC";
    }
  }
  if (q.limit) out += " LIMIT " + std::to_string(*q.limit);
  return out;
}

}  // namespace sqltutor
