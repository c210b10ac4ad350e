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


// Join-structure equivalence over a synthetic single-column database in
// which every subset of tables shares exactly one value.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sqltutor/ast.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

constexpr int kMaxSyntheticTables = 16;

struct SyntheticJoinDb {
  int n = 0;
  // tables[i] holds every v in 1..2^n-1 with bit i set, ascending.
  std::vector<std::vector<std::int64_t>> tables;
};

/// Throws TooManyTables unless 1 <= n <= 16.
SyntheticJoinDb build_synthetic_db(int n);

/// "a", "b", ... for synthetic table i.
std::string synthetic_table_name(int i);

/// Distinct source keys in order of first appearance. Base tables are keyed
/// by name; derived tables are opaque and share the key "(subquery)", so
/// several of them act as occurrences of one synthetic table.
std::vector<std::string> source_keys(const FromNode& from);

/// Join-only query over the synthetic tables: every source becomes the
/// synthetic table of its key's position in `key_order`, every join condition
/// becomes x-equalities between the sources its atoms link, the select list
/// is a star. Throws UnmappableCondition when a condition links no pair of
/// sources across the join, and TooManyTables beyond 16 keys.
Query adjust_query(const FromNode& from, const std::vector<std::string>& key_order,
                   const SchemaDef& schema = {});
Query adjust_query(const FromNode& from, const SchemaDef& schema = {});

/// One output row: (synthetic table, occurrence, value) per source in
/// canonical key order; a missing value is an outer-join NULL.
struct JoinCell {
  int table;
  int occurrence;
  std::int64_t value;  // 0 is NULL; synthetic values are positive
  auto operator<=>(const JoinCell&) const = default;
};
using JoinRow = std::vector<JoinCell>;

/// Evaluates an adjusted query. Throws UnmappableCondition when an
/// intermediate result exceeds the row budget.
std::vector<JoinRow> run_adjusted(const Query& adjusted, const SyntheticJoinDb& db);

/// Size of the multiset symmetric difference of both adjusted queries'
/// results on a shared synthetic database keyed by the union of both
/// trees' source orderings.
std::size_t join_distance(const FromNode& a, const FromNode& b, const SchemaDef& schema = {});

}  // namespace sqltutor
