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


// Name resolution for column references: which FROM source of which query
// scope a column binds to.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqltutor/ast.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

struct SourceInfo {
  const FromNode* node = nullptr;
  std::string exposed;                // alias, or table name when unaliased
  std::string table;                  // base table name; empty for derived
  std::vector<std::string> columns;   // empty when unknown
  bool columns_known = false;
};

class Scope {
 public:
  Scope(const Query& query, const SchemaDef& schema, const Scope* parent);

  struct Binding {
    const Scope* scope;
    std::size_t source;

    const SourceInfo& info() const { return scope->sources()[source]; }
  };

  /// Binds a Column expression. Returns nullopt when the reference is
  /// ambiguous or names no visible source.
  std::optional<Binding> resolve(const ScalarExpr& column) const;

  const std::vector<SourceInfo>& sources() const { return sources_; }
  const Scope* parent() const { return parent_; }
  const Query& query() const { return *query_; }
  const SchemaDef& schema() const { return *schema_; }

  /// Source exposed under `name` in this scope only.
  std::optional<std::size_t> find_exposed(const std::string& name) const;

 private:
  const Query* query_;
  const SchemaDef* schema_;
  const Scope* parent_;
  std::vector<SourceInfo> sources_;
};

/// Output column names of a query; nullopt if any cannot be determined.
std::optional<std::vector<std::string>> output_columns(const Query& query,
                                                       const SchemaDef& schema);

struct ColumnVisit {
  ScalarExpr* column;
  const Scope& scope;
  Clause clause;
  bool select_alias;  // ORDER BY reference to a select-list alias
  int depth;          // 0 for the outermost query
};

/// Visits every Column expression of the query and all of its subqueries,
/// innermost scopes included, with the scope the reference is resolved in.
/// The callback may rewrite the column expression in place but must not
/// restructure FROM clauses.
void for_each_column(Query& query, const SchemaDef& schema,
                     const std::function<void(ColumnVisit&)>& fn);

}  // namespace sqltutor
