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


#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sqltutor/ast.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

enum class StatementClass { SingleSelect, NonSelect, MultiStatement };

std::string_view statement_class_name(StatementClass c);

/// Statement-level guard. Total: never throws.
StatementClass classify(std::string_view text);

/// Parses one SELECT statement (a trailing semicolon is allowed). Column
/// references are not checked here; see unresolved_columns().
Query parse(std::string_view text);

/// Same as parse(); the schema is accepted for call-site symmetry with the
/// harmonizer and is not needed for syntax.
Query parse(std::string_view text, const SchemaDef& schema);

/// Column references that cannot be bound to any FROM source of their scope
/// (or of an enclosing scope) under the schema, serialized as written.
std::vector<std::string> unresolved_columns(const Query& query,
                                            const SchemaDef& schema);

enum class NodeKind { Keyword, Table, Attribute, Value, Function };

std::string_view node_kind_name(NodeKind kind);

struct TreeNode {
  Clause clause;
  NodeKind kind;
  std::string token;

  bool operator==(const TreeNode&) const = default;
};

/// Flattens the tree into its keywords and values in source order, each
/// tagged with the top-level clause it belongs to. Nodes of subqueries carry
/// the clause of the enclosing query in which the subquery appears.
std::vector<TreeNode> extract_nodes(const Query& query);

}  // namespace sqltutor
