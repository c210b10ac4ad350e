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


// Boolean condition normalization: atom orientation and sorted conjunctive
// normal form.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sqltutor/ast.hpp"

namespace sqltutor {

struct CnfLiteral {
  bool negated = false;
  Predicate atom;  // canonicalized

  /// Serialized form used for sorting and comparison, e.g. "NOT a.x = 1".
  std::string key() const;
  bool operator==(const CnfLiteral&) const = default;
};

using CnfClause = std::vector<CnfLiteral>;

/// Conjunction of disjunctions. Literals within a clause and the clauses
/// themselves are sorted by serialized text, without duplicates, and no
/// clause is a superset of another.
struct CnfFormula {
  std::vector<CnfClause> clauses;

  bool operator==(const CnfFormula&) const = default;

  std::size_t and_count() const { return clauses.empty() ? 0 : clauses.size() - 1; }
  std::size_t or_count() const;
  std::size_t literal_count() const;
};

std::string clause_key(const CnfClause& clause);
std::string to_string(const CnfFormula& cnf);

constexpr std::size_t kDefaultAtomCap = 64;

/// Orients comparison atoms so that operands appear in a fixed order
/// (columns, then other expressions, then subqueries, then literals; ties by
/// serialized text), flipping the operator when operands are swapped. IN
/// lists are sorted and deduplicated.
Predicate canonicalize_atom(const Predicate& atom);

/// Throws CnfBlowup when distributing OR over AND would produce more than
/// atom_cap literal occurrences.
CnfFormula to_cnf(const BoolExpr& expr, std::size_t atom_cap = kDefaultAtomCap);

/// Rebuilds a condition tree from a CNF: AND of ORs of (possibly negated)
/// atoms, in the CNF's sorted order.
BoolExpr from_cnf(const CnfFormula& cnf);

constexpr std::size_t kMaxTruthTableAtoms = 20;

/// Two-valued truth-table comparison over the union of both expressions'
/// canonicalized atoms. Throws TooManyAtoms above kMaxTruthTableAtoms.
bool truth_equivalent(const BoolExpr& a, const BoolExpr& b);

}  // namespace sqltutor
