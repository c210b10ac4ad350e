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

#include "sqltutor/parser.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "lexer.hpp"
#include "sqltutor/errors.hpp"
#include "sqltutor/scope.hpp"

namespace sqltutor {

using detail::Token;
using detail::TokenKind;

std::string_view statement_class_name(StatementClass c) {
  switch (c) {
    case StatementClass::SingleSelect: return "single_select";
    case StatementClass::NonSelect: return "non_select";
    case StatementClass::MultiStatement: return "multi_statement";
  }
  return "?";
}

StatementClass classify(std::string_view text) {
  std::vector<Token> tokens;
  try {
    tokens = detail::tokenize(text);
  } catch (const Error&) {
    // Unterminated literal: classify by the leading word only; parse() will
    // report the exact position.
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos &&
        detail::to_upper(text.substr(first, 6)) == "SELECT")
      return StatementClass::SingleSelect;
    return StatementClass::NonSelect;
  }
  // Split into statements on top-level semicolons; empty statements are
  // ignored so that a trailing semicolon is harmless.
  std::vector<std::vector<const Token*>> statements(1);
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::End) break;
    if (t.is_symbol(";")) {
      statements.emplace_back();
      continue;
    }
    statements.back().push_back(&t);
  }
  statements.erase(std::remove_if(statements.begin(), statements.end(),
                                  [](const auto& s) { return s.empty(); }),
                   statements.end());
  if (statements.empty()) return StatementClass::NonSelect;
  if (statements.size() > 1) return StatementClass::MultiStatement;
  const auto& stmt = statements.front();
  std::size_t k = 0;
  while (k < stmt.size() && stmt[k]->is_symbol("(")) ++k;
  if (k < stmt.size() && stmt[k]->is_word("SELECT")) return StatementClass::SingleSelect;
  return StatementClass::NonSelect;
}

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "select", "from",  "where",  "group", "by",     "having",   "order",
    "limit",  "join",  "inner",  "left",  "right",  "cross",    "outer",
    "full",   "on",    "and",    "or",    "not",    "as",       "asc",
    "desc",   "in",    "between", "like", "is",     "null",     "distinct",
    "exists", "union", "all",    "offset", "using", "natural", "intersect",
    "except", "case",  "when",   "then",  "else",   "end"};

bool is_reserved(const Token& t) {
  return t.kind == TokenKind::Ident && kReserved.count(t.text) > 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Query parse_statement() {
    if (peek().kind == TokenKind::End) fail("SELECT");
    Query q = parse_query();
    while (accept_symbol(";")) {
    }
    if (peek().kind != TokenKind::End) fail("end of statement");
    return q;
  }

 private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(idx_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[idx_];
    if (idx_ + 1 < toks_.size()) ++idx_;
    return t;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().pos, expected);
  }
  bool accept_word(std::string_view w) {
    if (peek().is_word(w)) {
      next();
      return true;
    }
    return false;
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail(std::string(w));
  }
  bool accept_symbol(std::string_view s) {
    if (peek().is_symbol(s)) {
      next();
      return true;
    }
    return false;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("'" + std::string(s) + "'");
  }

  std::string parse_identifier(const char* what) {
    const Token& t = peek();
    if (t.kind == TokenKind::QuotedIdent ||
        (t.kind == TokenKind::Ident && !is_reserved(t))) {
      next();
      return t.text;
    }
    fail(what);
  }

  std::string parse_optional_alias() {
    if (accept_word("AS")) return parse_identifier("alias");
    const Token& t = peek();
    if (t.kind == TokenKind::QuotedIdent ||
        (t.kind == TokenKind::Ident && !is_reserved(t))) {
      next();
      return t.text;
    }
    return {};
  }

  // --- query ------------------------------------------------------------------

  Query parse_query() {
    // A fully parenthesized SELECT is accepted at statement level.
    if (peek().is_symbol("(") && peek(1).is_word("SELECT")) {
      next();
      Query q = parse_query();
      expect_symbol(")");
      return q;
    }
    expect_word("SELECT");
    Query q;
    if (accept_word("DISTINCT")) {
      q.distinct = true;
    } else {
      accept_word("ALL");
    }
    do {
      q.select.push_back(parse_select_item());
    } while (accept_symbol(","));

    if (accept_word("FROM")) q.from = parse_from();
    if (accept_word("WHERE")) q.where = parse_or();
    if (accept_word("GROUP")) {
      expect_word("BY");
      do {
        q.group_by.push_back(parse_scalar());
      } while (accept_symbol(","));
    }
    if (accept_word("HAVING")) q.having = parse_or();
    if (accept_word("ORDER")) {
      expect_word("BY");
      do {
        OrderItem item;
        item.expr = parse_scalar();
        if (accept_word("DESC")) {
          item.descending = true;
        } else if (accept_word("ASC")) {
          item.explicit_asc = true;
        }
        q.order_by.push_back(std::move(item));
      } while (accept_symbol(","));
    }
    if (accept_word("LIMIT")) {
      const Token& t = peek();
      if (t.kind != TokenKind::Number) fail("non-negative integer");
      std::int64_t value = 0;
      const auto* b = t.text.data();
      const auto res = std::from_chars(b, b + t.text.size(), value);
      if (res.ec != std::errc() || res.ptr != b + t.text.size() || value < 0)
        fail("non-negative integer");
      next();
      q.limit = value;
    }
    return q;
  }

  SelectItem parse_select_item() {
    SelectItem item;
    if (peek().is_symbol("*")) {
      next();
      item.expr = ScalarExpr::star();
      return item;
    }
    if ((peek().kind == TokenKind::Ident || peek().kind == TokenKind::QuotedIdent) &&
        peek(1).is_symbol(".") && peek(2).is_symbol("*")) {
      item.expr = ScalarExpr::star(next().text);
      next();
      next();
      return item;
    }
    item.expr = parse_scalar();
    item.alias = parse_optional_alias();
    return item;
  }

  // --- FROM ---------------------------------------------------------------------

  FromNode parse_from() {
    FromNode lhs = parse_from_primary();
    for (;;) {
      JoinKind kind;
      if (accept_symbol(",")) {
        kind = JoinKind::Comma;
      } else if (accept_word("JOIN")) {
        kind = JoinKind::Inner;
      } else if (accept_word("INNER")) {
        expect_word("JOIN");
        kind = JoinKind::Inner;
      } else if (peek().is_word("LEFT") || peek().is_word("RIGHT")) {
        kind = next().is_word("LEFT") ? JoinKind::Left : JoinKind::Right;
        accept_word("OUTER");
        expect_word("JOIN");
      } else if (accept_word("CROSS")) {
        expect_word("JOIN");
        kind = JoinKind::Cross;
      } else {
        break;
      }
      FromNode rhs = parse_from_primary();
      std::optional<BoolExpr> cond;
      if (kind == JoinKind::Inner || kind == JoinKind::Left ||
          kind == JoinKind::Right) {
        expect_word("ON");
        cond = parse_or();
      }
      lhs = FromNode::joined(kind, std::move(lhs), std::move(rhs), std::move(cond));
    }
    return lhs;
  }

  FromNode parse_from_primary() {
    if (peek().is_symbol("(")) {
      if (peek(1).is_word("SELECT")) {
        next();
        Query sub = parse_query();
        expect_symbol(")");
        std::string alias = parse_optional_alias();
        if (alias.empty()) fail("alias for derived table");
        return FromNode::derived(std::move(sub), std::move(alias));
      }
      next();
      FromNode inner = parse_from();
      expect_symbol(")");
      return inner;
    }
    std::string name = parse_identifier("table name");
    std::string alias = parse_optional_alias();
    return FromNode::table(std::move(name), std::move(alias));
  }

  // --- conditions -----------------------------------------------------------

  BoolExpr parse_or() {
    std::vector<BoolExpr> parts;
    parts.push_back(parse_and());
    while (accept_word("OR")) parts.push_back(parse_and());
    return BoolExpr::make_or(std::move(parts));
  }

  BoolExpr parse_and() {
    std::vector<BoolExpr> parts;
    parts.push_back(parse_not());
    while (accept_word("AND")) parts.push_back(parse_not());
    return BoolExpr::make_and(std::move(parts));
  }

  BoolExpr parse_not() {
    if (peek().is_word("NOT") && !peek(1).is_word("EXISTS")) {
      next();
      return BoolExpr::make_not(parse_not());
    }
    if (peek().is_word("NOT")) {
      next();
      return BoolExpr::make_not(parse_bool_primary());
    }
    return parse_bool_primary();
  }

  static bool starts_predicate_tail(const Token& t) {
    if (t.kind == TokenKind::Symbol) {
      static const std::set<std::string, std::less<>> kOps = {
          "=", "==", "<>", "!=", "<", "<=", ">", ">=", "+", "-", "*", "/", "%", "||"};
      return kOps.count(t.text) > 0;
    }
    return t.is_word("IN") || t.is_word("LIKE") || t.is_word("BETWEEN") ||
           t.is_word("IS") || t.is_word("NOT");
  }

  BoolExpr parse_bool_primary() {
    if (peek().is_symbol("(") && !peek(1).is_word("SELECT")) {
      const std::size_t save = idx_;
      try {
        next();
        BoolExpr inner = parse_or();
        expect_symbol(")");
        if (!starts_predicate_tail(peek())) return inner;
      } catch (const ParseError&) {
      }
      idx_ = save;
    }
    return parse_predicate();
  }

  static std::optional<PredOp> comparison_op(const Token& t) {
    if (t.kind != TokenKind::Symbol) return std::nullopt;
    if (t.text == "=" || t.text == "==") return PredOp::Eq;
    if (t.text == "<>" || t.text == "!=") return PredOp::Ne;
    if (t.text == "<") return PredOp::Lt;
    if (t.text == "<=") return PredOp::Le;
    if (t.text == ">") return PredOp::Gt;
    if (t.text == ">=") return PredOp::Ge;
    return std::nullopt;
  }

  // Returns the atom, or NOT(atom) for the negated spellings
  // (x NOT LIKE y, x NOT IN (...), x NOT BETWEEN a AND b, x IS NOT NULL).
  BoolExpr parse_predicate() {
    Predicate p;
    if (accept_word("EXISTS")) {
      if (!peek().is_symbol("(") || !peek(1).is_word("SELECT")) fail("subquery after EXISTS");
      p.op = PredOp::Exists;
      p.args.push_back(parse_scalar_primary());
      return BoolExpr::make_atom(std::move(p));
    }
    ScalarExpr lhs = parse_scalar();
    if (auto op = comparison_op(peek())) {
      next();
      ScalarExpr rhs = parse_scalar();
      if (auto op2 = comparison_op(peek())) {
        p.op = PredOp::Chain;
        p.args = {std::move(lhs), std::move(rhs)};
        p.chain = {*op};
        op = op2;
        while (op) {
          next();
          p.chain.push_back(*op);
          p.args.push_back(parse_scalar());
          op = comparison_op(peek());
        }
        return BoolExpr::make_atom(std::move(p));
      }
      p.op = *op;
      p.args = {std::move(lhs), std::move(rhs)};
      return BoolExpr::make_atom(std::move(p));
    }
    const bool negated = accept_word("NOT");
    if (accept_word("LIKE")) {
      p.op = PredOp::Like;
      p.args = {std::move(lhs), parse_scalar()};
    } else if (accept_word("IN")) {
      p.op = PredOp::In;
      p.args.push_back(std::move(lhs));
      if (peek().is_symbol("(") && peek(1).is_word("SELECT")) {
        p.args.push_back(parse_scalar_primary());
      } else {
        expect_symbol("(");
        do {
          p.args.push_back(parse_scalar());
        } while (accept_symbol(","));
        expect_symbol(")");
      }
    } else if (accept_word("BETWEEN")) {
      p.op = PredOp::Between;
      p.args.push_back(std::move(lhs));
      p.args.push_back(parse_scalar());
      expect_word("AND");
      p.args.push_back(parse_scalar());
    } else if (!negated && accept_word("IS")) {
      const bool is_not = accept_word("NOT");
      expect_word("NULL");
      p.op = PredOp::IsNull;
      p.args = {std::move(lhs)};
      if (is_not) return BoolExpr::make_not(BoolExpr::make_atom(std::move(p)));
      return BoolExpr::make_atom(std::move(p));
    } else if (negated) {
      fail("LIKE, IN or BETWEEN after NOT");
    } else {
      p.op = PredOp::Truth;
      p.args = {std::move(lhs)};
      return BoolExpr::make_atom(std::move(p));
    }
    if (negated) return BoolExpr::make_not(BoolExpr::make_atom(std::move(p)));
    return BoolExpr::make_atom(std::move(p));
  }
  // --- scalar expressions -------------------------------------------------------

  ScalarExpr parse_scalar() { return parse_concat(); }

  ScalarExpr parse_concat() {
    ScalarExpr lhs = parse_additive();
    while (peek().is_symbol("||")) {
      next();
      lhs = ScalarExpr::binary("||", std::move(lhs), parse_additive());
    }
    return lhs;
  }

  ScalarExpr parse_additive() {
    ScalarExpr lhs = parse_multiplicative();
    while (peek().is_symbol("+") || peek().is_symbol("-")) {
      const std::string op = next().text;
      lhs = ScalarExpr::binary(op, std::move(lhs), parse_multiplicative());
    }
    return lhs;
  }

  ScalarExpr parse_multiplicative() {
    ScalarExpr lhs = parse_unary();
    while (peek().is_symbol("*") || peek().is_symbol("/") || peek().is_symbol("%")) {
      const std::string op = next().text;
      lhs = ScalarExpr::binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  ScalarExpr parse_unary() {
    if (peek().is_symbol("-") && peek(1).kind == TokenKind::Number) {
      next();
      ScalarExpr lit = parse_number(next());
      lit.name = "-" + lit.name;
      return lit;
    }
    if (peek().is_symbol("-") || peek().is_symbol("+")) {
      const std::string op = next().text;
      ScalarExpr operand = parse_unary();
      if (op == "+") return operand;
      ScalarExpr e;
      e.kind = ExprKind::Unary;
      e.name = op;
      e.args.push_back(std::move(operand));
      return e;
    }
    return parse_scalar_primary();
  }

  static ScalarExpr parse_number(const Token& t) {
    ScalarExpr e;
    e.kind = ExprKind::Literal;
    const bool decimal = t.text.find_first_of(".eE") != std::string::npos;
    e.literal = decimal ? LiteralKind::Decimal : LiteralKind::Integer;
    if (decimal) {
      e.name = t.text;
      if (e.name.front() == '.') e.name = "0" + e.name;
    } else {
      // Strip leading zeros so that 007 and 7 compare equal.
      const auto nz = t.text.find_first_not_of('0');
      e.name = nz == std::string::npos ? "0" : t.text.substr(nz);
    }
    return e;
  }

  ScalarExpr parse_scalar_primary() {
    const Token& t = peek();
    if (t.is_symbol("(")) {
      next();
      if (peek().is_word("SELECT")) {
        Query sub = parse_query();
        expect_symbol(")");
        return ScalarExpr::scalar_subquery(std::move(sub));
      }
      ScalarExpr inner = parse_scalar();
      expect_symbol(")");
      return inner;
    }
    if (t.kind == TokenKind::Number) return parse_number(next());
    if (t.kind == TokenKind::String) return ScalarExpr::string_literal(next().text);
    if (t.is_word("NULL")) {
      next();
      return ScalarExpr::null_literal();
    }
    if (t.kind == TokenKind::QuotedIdent ||
        (t.kind == TokenKind::Ident && !is_reserved(t))) {
      const std::string word = next().text;
      if (peek().is_symbol("(")) return parse_call(word);
      if (peek().is_symbol(".")) {
        next();
        if (accept_symbol("*")) return ScalarExpr::star(word);
        return ScalarExpr::column(word, parse_identifier("column name"));
      }
      return ScalarExpr::column({}, word);
    }
    fail("expression");
  }

  ScalarExpr parse_call(const std::string& lower_name) {
    expect_symbol("(");
    ScalarExpr e;
    e.kind = ExprKind::Function;
    e.name = detail::to_upper(lower_name);
    if (e.name == "CAST") {
      e.args.push_back(parse_scalar());
      expect_word("AS");
      std::string type = detail::to_upper(parse_identifier("type name"));
      if (accept_symbol("(")) {
        type += "(";
        bool first = true;
        while (!peek().is_symbol(")")) {
          if (peek().kind == TokenKind::End) fail("')'");
          if (!first && peek().is_symbol(",")) {
            next();
            type += ",";
            continue;
          }
          type += next().text;
          first = false;
        }
        next();
        type += ")";
      }
      e.cast_type = type;
      expect_symbol(")");
      return e;
    }
    if (accept_symbol(")")) return e;
    if (accept_word("DISTINCT")) e.distinct = true;
    do {
      if (peek().is_symbol("*")) {
        next();
        e.args.push_back(ScalarExpr::star());
      } else {
        e.args.push_back(parse_scalar());
      }
    } while (accept_symbol(","));
    expect_symbol(")");
    return e;
  }
};

}  // namespace

Query parse(std::string_view text) {
  Parser parser(detail::tokenize(text));
  return parser.parse_statement();
}

Query parse(std::string_view text, const SchemaDef& /*schema*/) {
  return parse(text);
}

// --- column resolution report ---------------------------------------------------

std::vector<std::string> unresolved_columns(const Query& query,
                                            const SchemaDef& schema) {
  std::vector<std::string> out;
  Query copy = query;
  for_each_column(copy, schema, [&](ColumnVisit& v) {
    if (v.select_alias) return;
    if (!v.scope.resolve(*v.column)) out.push_back(to_sql(*v.column));
  });
  return out;
}

// --- node extraction -------------------------------------------------------------

std::string_view node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Keyword: return "keyword";
    case NodeKind::Table: return "table";
    case NodeKind::Attribute: return "attribute";
    case NodeKind::Value: return "value";
    case NodeKind::Function: return "function";
  }
  return "?";
}

namespace {

class NodeCollector {
 public:
  std::vector<TreeNode> out;

  void query(const Query& q, std::optional<Clause> forced) {
    auto tag = [&](Clause c) { return forced.value_or(c); };
    if (q.distinct) emit(tag(Clause::Select), NodeKind::Keyword, "DISTINCT");
    for (const auto& item : q.select) expr(item.expr, tag(Clause::Select));
    if (q.from) from(*q.from, tag(Clause::From));
    if (q.where) cond(*q.where, tag(Clause::Where));
    for (const auto& g : q.group_by) expr(g, tag(Clause::GroupBy));
    if (q.having) cond(*q.having, tag(Clause::Having));
    for (const auto& o : q.order_by) {
      expr(o.expr, tag(Clause::OrderBy));
      if (o.descending)
        emit(tag(Clause::OrderBy), NodeKind::Keyword, "DESC");
      else if (o.explicit_asc)
        emit(tag(Clause::OrderBy), NodeKind::Keyword, "ASC");
    }
    if (q.limit) emit(tag(Clause::Limit), NodeKind::Value, std::to_string(*q.limit));
  }

 private:
  void emit(Clause c, NodeKind k, std::string token) {
    out.push_back(TreeNode{c, k, std::move(token)});
  }

  void from(const FromNode& n, Clause c) {
    switch (n.kind) {
      case FromKind::Table:
        emit(c, NodeKind::Table, n.name);
        return;
      case FromKind::Derived:
        emit(c, NodeKind::Keyword, "SUBQUERY");
        query(*n.subquery, c);
        return;
      case FromKind::Join:
        from(n.operands[0], c);
        emit(c, NodeKind::Keyword,
             n.join == JoinKind::Comma ? "COMMA" : std::string(join_keyword(n.join)));
        from(n.operands[1], c);
        if (n.condition) cond(*n.condition, c);
        return;
    }
  }

  void cond(const BoolExpr& b, Clause c) {
    switch (b.kind) {
      case BoolKind::Atom:
        atom(b.atom, c);
        return;
      case BoolKind::Not:
        emit(c, NodeKind::Keyword, "NOT");
        cond(b.children[0], c);
        return;
      case BoolKind::And:
      case BoolKind::Or:
        for (std::size_t i = 0; i < b.children.size(); ++i) {
          if (i) emit(c, NodeKind::Keyword, b.kind == BoolKind::And ? "AND" : "OR");
          cond(b.children[i], c);
        }
        return;
    }
  }

  void atom(const Predicate& p, Clause c) {
    const std::string sym(pred_op_symbol(p.op));
    switch (p.op) {
      case PredOp::IsNull:
        expr(p.args[0], c);
        emit(c, NodeKind::Keyword, sym);
        return;
      case PredOp::Exists:
        emit(c, NodeKind::Keyword, sym);
        expr(p.args[0], c);
        return;
      case PredOp::Truth:
        expr(p.args[0], c);
        return;
      case PredOp::Chain:
        expr(p.args[0], c);
        for (std::size_t i = 0; i < p.chain.size(); ++i) {
          emit(c, NodeKind::Keyword, std::string(pred_op_symbol(p.chain[i])));
          expr(p.args[i + 1], c);
        }
        return;
      default:
        expr(p.args[0], c);
        emit(c, NodeKind::Keyword, sym);
        for (std::size_t i = 1; i < p.args.size(); ++i) expr(p.args[i], c);
        return;
    }
  }

  void expr(const ScalarExpr& e, Clause c) {
    switch (e.kind) {
      case ExprKind::Column:
      case ExprKind::Star:
        emit(c, NodeKind::Attribute, to_sql(e));
        return;
      case ExprKind::Literal:
        emit(c, NodeKind::Value, to_sql(e));
        return;
      case ExprKind::Function:
        emit(c, NodeKind::Function, e.name);
        if (e.distinct) emit(c, NodeKind::Keyword, "DISTINCT");
        for (const auto& a : e.args) expr(a, c);
        if (!e.cast_type.empty()) emit(c, NodeKind::Keyword, "AS " + e.cast_type);
        return;
      case ExprKind::Binary:
        expr(e.args[0], c);
        emit(c, NodeKind::Keyword, e.name);
        expr(e.args[1], c);
        return;
      case ExprKind::Unary:
        emit(c, NodeKind::Keyword, e.name);
        expr(e.args[0], c);
        return;
      case ExprKind::Subquery:
        emit(c, NodeKind::Keyword, "SUBQUERY");
        query(*e.subquery, c);
        return;
    }
  }
};

}  // namespace

std::vector<TreeNode> extract_nodes(const Query& query) {
  NodeCollector collector;
  collector.query(query, std::nullopt);
  return std::move(collector.out);
}

}  // namespace sqltutor
