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


#include "sqltutor/schema.hpp"

#include <algorithm>

#include <set>

#include "lexer.hpp"
#include "sqltutor/errors.hpp"

namespace sqltutor {

using detail::Token;
using detail::TokenKind;

std::string_view column_type_name(ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return "integer";
    case ColumnType::Decimal: return "decimal";
    case ColumnType::Text: return "text";
    case ColumnType::Date: return "date";
    case ColumnType::Boolean: return "boolean";
  }
  return "?";
}

ColumnType column_type_from_decl(std::string_view decl) {
  const std::string t = detail::to_upper(decl);
  auto has = [&](std::string_view s) { return t.find(s) != std::string::npos; };
  if (has("BOOL")) return ColumnType::Boolean;
  if (has("INT")) return ColumnType::Integer;
  if (has("DEC") || has("NUM") || has("REAL") || has("FLOA") || has("DOUB"))
    return ColumnType::Decimal;
  if (has("DATE") || has("TIME")) return ColumnType::Date;
  return ColumnType::Text;
}

const ColumnDef* TableDef::find_column(std::string_view column) const {
  for (const auto& c : columns)
    if (c.name == column) return &c;
  return nullptr;
}

const TableDef* SchemaDef::find_table(std::string_view table) const {
  for (const auto& t : tables)
    if (t.name == table) return &t;
  return nullptr;
}

std::optional<ColumnType> SchemaDef::column_type(std::string_view table,
                                                 std::string_view column) const {
  if (const TableDef* t = find_table(table))
    if (const ColumnDef* c = t->find_column(column)) return c->type;
  return std::nullopt;
}

bool SchemaDef::column_not_null(std::string_view table, std::string_view column) const {
  if (const TableDef* t = find_table(table))
    if (const ColumnDef* c = t->find_column(column)) return c->not_null;
  return false;
}

namespace {

class DdlReader {
 public:
  explicit DdlReader(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SchemaDef read() {
    SchemaDef schema;
    while (peek().kind != TokenKind::End) {
      if (peek().is_word("CREATE") && (peek(1).is_word("TABLE") ||
                                       (peek(1).is_word("TEMP") || peek(1).is_word("TEMPORARY")))) {
        next();
        if (!peek().is_word("TABLE")) next();
        next();
        TableDef t = table();
        if (schema.find_table(t.name))
          throw SchemaError("duplicate table '" + t.name + "'");
        schema.tables.push_back(std::move(t));
      } else {
        skip_statement();
      }
    }
    return schema;
  }

 private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(idx_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[idx_];
    if (idx_ + 1 < toks_.size()) ++idx_;
    return t;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(peek().pos, what);
  }
  void expect_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) fail("'" + std::string(s) + "'");
    next();
  }
  std::string name() {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident && t.kind != TokenKind::QuotedIdent &&
        t.kind != TokenKind::String)
      fail("identifier");
    next();
    return detail::to_lower(t.text);
  }

  void skip_statement() {
    while (peek().kind != TokenKind::End && !peek().is_symbol(";")) next();
    if (peek().is_symbol(";")) next();
  }

  // Skips a balanced parenthesized group starting at '('.
  void skip_group() {
    int depth = 0;
    do {
      if (peek().kind == TokenKind::End) fail("')'");
      if (peek().is_symbol("(")) ++depth;
      if (peek().is_symbol(")")) --depth;
      next();
    } while (depth > 0);
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out;
    expect_symbol("(");
    do {
      out.push_back(name());
      if (peek().is_symbol(",")) {
        next();
        continue;
      }
      break;
    } while (true);
    expect_symbol(")");
    return out;
  }

  TableDef table() {
    TableDef t;
    if (peek().is_word("IF")) {
      next();
      next();  // NOT
      next();  // EXISTS
    }
    t.name = name();
    expect_symbol("(");
    std::set<std::string> seen;
    for (;;) {
      if (peek().is_word("PRIMARY")) {
        next();
        next();  // KEY
        t.primary_key = name_list();
      } else if (peek().is_word("FOREIGN")) {
        next();
        next();  // KEY
        auto cols = name_list();
        if (!peek().is_word("REFERENCES")) fail("REFERENCES");
        next();
        std::string ref = name();
        std::vector<std::string> ref_cols;
        if (peek().is_symbol("(")) ref_cols = name_list();
        for (std::size_t i = 0; i < cols.size(); ++i)
          t.foreign_keys.push_back(
              {cols[i], ref, i < ref_cols.size() ? ref_cols[i] : std::string()});
      } else if (peek().is_word("UNIQUE") || peek().is_word("CHECK") ||
                 peek().is_word("CONSTRAINT")) {
        while (!peek().is_symbol(",") && !peek().is_symbol(")")) {
          if (peek().kind == TokenKind::End) fail("')'");
          if (peek().is_symbol("(")) {
            skip_group();
          } else {
            next();
          }
        }
      } else {
        column(t, seen);
      }
      if (peek().is_symbol(",")) {
        next();
        continue;
      }
      expect_symbol(")");
      break;
    }
    for (auto& c : t.columns)
      if (std::find(t.primary_key.begin(), t.primary_key.end(), c.name) != t.primary_key.end())
        c.not_null = true;
    skip_statement();
    return t;
  }

  void column(TableDef& t, std::set<std::string>& seen) {
    ColumnDef c;
    c.name = name();
    if (!seen.insert(c.name).second)
      throw SchemaError("duplicate column '" + c.name + "' in table '" + t.name + "'");
    std::string decl;
    while (peek().kind == TokenKind::Ident && !peek().is_word("PRIMARY") &&
           !peek().is_word("NOT") && !peek().is_word("NULL") &&
           !peek().is_word("REFERENCES") && !peek().is_word("DEFAULT") &&
           !peek().is_word("UNIQUE") && !peek().is_word("CHECK")) {
      decl += next().text + " ";
    }
    if (peek().is_symbol("(")) skip_group();
    c.type = column_type_from_decl(decl);
    while (!peek().is_symbol(",") && !peek().is_symbol(")")) {
      if (peek().kind == TokenKind::End) fail("')'");
      if (peek().is_word("PRIMARY")) {
        next();
        next();  // KEY
        t.primary_key = {c.name};
        c.not_null = true;
      } else if (peek().is_word("NOT") && peek(1).is_word("NULL")) {
        next();
        next();
        c.not_null = true;
      } else if (peek().is_word("REFERENCES")) {
        next();
        std::string ref = name();
        std::string ref_col;
        if (peek().is_symbol("(")) {
          auto cols = name_list();
          if (!cols.empty()) ref_col = cols.front();
        }
        t.foreign_keys.push_back({c.name, ref, ref_col});
      } else if (peek().is_symbol("(")) {
        skip_group();
      } else {
        next();
      }
    }
    t.columns.push_back(std::move(c));
  }
};

}  // namespace

SchemaDef parse_schema(std::string_view ddl) {
  return DdlReader(detail::tokenize(ddl)).read();
}

}  // namespace sqltutor
