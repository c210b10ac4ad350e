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


// Clause-wise distance between two harmonized queries, closest-reference
// selection and the Levenshtein baseline.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqltutor/ast.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

struct WeightsConfig {
  double w1 = 4;  // used objects
  double w2 = 2;  // structure
  double w3 = 1;  // ordering

  /// Positive and strictly decreasing.
  bool valid() const { return w3 > 0 && w2 > w3 && w1 > w2; }
  bool operator==(const WeightsConfig&) const = default;
};

struct Components {
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  std::int64_t c3 = 0;

  bool zero() const { return c1 == 0 && c2 == 0 && c3 == 0; }
  Components& operator+=(const Components& o) {
    c1 += o.c1;
    c2 += o.c2;
    c3 += o.c3;
    return *this;
  }
  bool operator==(const Components&) const = default;
};

/// Clauses carrying a distance, in report order.
constexpr std::array<Clause, 6> kDistanceClauses{Clause::Select,  Clause::From,
                                                 Clause::Where,   Clause::GroupBy,
                                                 Clause::OrderBy, Clause::Having};

struct DistanceBreakdown {
  std::array<Components, kDistanceClauses.size()> clauses{};
  WeightsConfig weights;
  double total = 0;

  Components& at(Clause c);
  const Components& at(Clause c) const;
  /// Recomputes total from the components and weights.
  void update_total();
  bool zero() const;
  bool operator==(const DistanceBreakdown&) const = default;
};

/// (c1, c3) of two item lists: multiset symmetric difference, and the
/// minimal number of transpositions aligning the common items.
std::pair<std::int64_t, std::int64_t> list_distance(const std::vector<std::string>& a,
                                                    const std::vector<std::string>& b);

/// m minus the number of cycles of a permutation of 0..m-1.
std::int64_t min_transpositions(const std::vector<std::size_t>& perm);

/// Minimum-cost perfect assignment on a square matrix; result[i] is the
/// column assigned to row i.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost);

Components select_distance(const Query& a, const Query& b);
Components from_distance(const Query& a, const Query& b, const WeightsConfig& weights,
                         const SchemaDef& schema = {});
Components where_distance(const Query& a, const Query& b);
Components having_distance(const Query& a, const Query& b);
Components groupby_distance(const Query& a, const Query& b);
Components orderby_distance(const Query& a, const Query& b);

/// Both arguments are harmonized trees.
DistanceBreakdown total_distance(const Query& a, const Query& b,
                                 const WeightsConfig& weights = {},
                                 const SchemaDef& schema = {});

struct ReferenceView {
  std::int64_t id;
  const Query* tree;  // harmonized
};

/// Reference with the smallest total; ties go to the earliest in `refs`.
/// Throws EmptyPool when refs is empty.
std::pair<std::int64_t, DistanceBreakdown> closest_reference(
    const Query& submission, const std::vector<ReferenceView>& refs,
    const WeightsConfig& weights = {}, const SchemaDef& schema = {});

/// Edit distance over Unicode code points of UTF-8 input.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace sqltutor
