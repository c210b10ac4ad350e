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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqltutor {

enum class ColumnType { Integer, Decimal, Text, Date, Boolean };

std::string_view column_type_name(ColumnType type);
/// Maps a declared SQL type name (INT, VARCHAR(20), ...) onto a ColumnType.
ColumnType column_type_from_decl(std::string_view decl);

struct ForeignKey {
  std::string column;
  std::string ref_table;
  std::string ref_column;
};

struct ColumnDef {
  std::string name;
  ColumnType type = ColumnType::Text;
  bool not_null = false;  // declared NOT NULL or part of the primary key
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;

  const ColumnDef* find_column(std::string_view column) const;
};

/// Table and column catalog used for star expansion, column resolution and
/// the type-guarded harmonization rules. Names are stored lower-cased.
struct SchemaDef {
  std::vector<TableDef> tables;

  const TableDef* find_table(std::string_view table) const;
  std::optional<ColumnType> column_type(std::string_view table,
                                        std::string_view column) const;
  /// False for unknown columns.
  bool column_not_null(std::string_view table, std::string_view column) const;
  bool empty() const { return tables.empty(); }
};

/// Reads the CREATE TABLE statements of a DDL script. Other statements are
/// skipped. Throws SchemaError on duplicate tables or columns and ParseError
/// on malformed CREATE TABLE statements.
SchemaDef parse_schema(std::string_view ddl);

}  // namespace sqltutor
