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


#include "sqltutor/logic.hpp"

#include <algorithm>
#include <map>

#include "sqltutor/errors.hpp"

namespace sqltutor {

std::string CnfLiteral::key() const {
  return negated ? "NOT " + to_sql(atom) : to_sql(atom);
}

std::size_t CnfFormula::or_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses) n += c.empty() ? 0 : c.size() - 1;
  return n;
}

std::size_t CnfFormula::literal_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses) n += c.size();
  return n;
}

std::string clause_key(const CnfClause& clause) {
  std::string out;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i) out += " OR ";
    out += clause[i].key();
  }
  return out;
}

std::string to_string(const CnfFormula& cnf) {
  std::string out;
  for (std::size_t i = 0; i < cnf.clauses.size(); ++i) {
    if (i) out += " AND ";
    out += "(" + clause_key(cnf.clauses[i]) + ")";
  }
  return out;
}

namespace {

int operand_rank(const ScalarExpr& e) {
  switch (e.kind) {
    case ExprKind::Column: return 0;
    case ExprKind::Subquery: return 2;
    case ExprKind::Literal: return 3;
    default: return 1;
  }
}

bool operand_less(const ScalarExpr& a, const ScalarExpr& b) {
  const int ra = operand_rank(a);
  const int rb = operand_rank(b);
  if (ra != rb) return ra < rb;
  return to_sql(a) < to_sql(b);
}

}  // namespace

Predicate canonicalize_atom(const Predicate& atom) {
  Predicate out = atom;
  if (is_comparison(out.op) && out.args.size() == 2) {
    if (operand_less(out.args[1], out.args[0])) {
      std::swap(out.args[0], out.args[1]);
      out.op = flip_comparison(out.op);
    }
  } else if (out.op == PredOp::In &&
             !(out.args.size() == 2 && out.args[1].kind == ExprKind::Subquery)) {
    std::sort(out.args.begin() + 1, out.args.end(), operand_less);
    out.args.erase(
        std::unique(out.args.begin() + 1, out.args.end(),
                    [](const ScalarExpr& a, const ScalarExpr& b) { return to_sql(a) == to_sql(b); }),
        out.args.end());
  }
  return out;
}

namespace {

struct KeyedLiteral {
  std::string key;
  CnfLiteral lit;
};

using KeyedClause = std::vector<KeyedLiteral>;

void normalize_clause(KeyedClause& c) {
  std::sort(c.begin(), c.end(),
            [](const KeyedLiteral& a, const KeyedLiteral& b) { return a.key < b.key; });
  c.erase(std::unique(c.begin(), c.end(),
                      [](const KeyedLiteral& a, const KeyedLiteral& b) { return a.key == b.key; }),
          c.end());
}

// sorted-key subset test
bool is_subset(const KeyedClause& small, const KeyedClause& big) {
  std::size_t j = 0;
  for (const auto& lit : small) {
    while (j < big.size() && big[j].key < lit.key) ++j;
    if (j == big.size() || big[j].key != lit.key) return false;
    ++j;
  }
  return true;
}

class CnfBuilder {
 public:
  explicit CnfBuilder(std::size_t cap) : cap_(cap) {}

  std::vector<KeyedClause> build(const BoolExpr& b, bool negate) {
    switch (b.kind) {
      case BoolKind::Atom: {
        CnfLiteral lit{negate, canonicalize_atom(b.atom)};
        std::string key = lit.key();
        return {KeyedClause{KeyedLiteral{std::move(key), std::move(lit)}}};
      }
      case BoolKind::Not:
        return build(b.children[0], !negate);
      case BoolKind::And:
      case BoolKind::Or: {
        const bool conjunction = (b.kind == BoolKind::And) != negate;
        if (conjunction) {
          std::vector<KeyedClause> out;
          for (const auto& c : b.children) {
            auto part = build(c, negate);
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
          }
          return out;
        }
        std::vector<KeyedClause> acc{KeyedClause{}};
        for (const auto& c : b.children) {
          auto part = simplify(build(c, negate));
          std::vector<KeyedClause> next;
          std::size_t occurrences = 0;
          for (const auto& x : acc) {
            for (const auto& y : part) {
              KeyedClause merged = x;
              merged.insert(merged.end(), y.begin(), y.end());
              normalize_clause(merged);
              occurrences += merged.size();
              if (occurrences > cap_)
                throw CnfBlowup("CNF distribution exceeds " + std::to_string(cap_) +
                                " literal occurrences");
              next.push_back(std::move(merged));
            }
          }
          acc = simplify(std::move(next));
        }
        return acc;
      }
    }
    return {};
  }

  static std::vector<KeyedClause> simplify(std::vector<KeyedClause> clauses) {
    for (auto& c : clauses) normalize_clause(c);
    std::sort(clauses.begin(), clauses.end(), [](const KeyedClause& a, const KeyedClause& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return std::lexicographical_compare(
          a.begin(), a.end(), b.begin(), b.end(),
          [](const KeyedLiteral& x, const KeyedLiteral& y) { return x.key < y.key; });
    });
    // Absorption: drop any clause that contains an earlier (smaller) one.
    std::vector<KeyedClause> kept;
    for (auto& c : clauses) {
      const bool absorbed = std::any_of(kept.begin(), kept.end(),
                                        [&](const KeyedClause& k) { return is_subset(k, c); });
      if (!absorbed) kept.push_back(std::move(c));
    }
    return kept;
  }

 private:
  std::size_t cap_;
};

}  // namespace

CnfFormula to_cnf(const BoolExpr& expr, std::size_t atom_cap) {
  CnfBuilder builder(atom_cap);
  auto keyed = CnfBuilder::simplify(builder.build(expr, false));
  std::size_t total = 0;
  for (const auto& c : keyed) total += c.size();
  if (total > atom_cap)
    throw CnfBlowup("CNF has " + std::to_string(total) + " literal occurrences");

  std::vector<std::pair<std::string, CnfClause>> sorted;
  for (auto& kc : keyed) {
    CnfClause clause;
    for (auto& kl : kc) clause.push_back(std::move(kl.lit));
    std::string k = clause_key(clause);
    sorted.emplace_back(std::move(k), std::move(clause));
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  CnfFormula out;
  for (auto& [k, c] : sorted) out.clauses.push_back(std::move(c));
  return out;
}

BoolExpr from_cnf(const CnfFormula& cnf) {
  std::vector<BoolExpr> conjuncts;
  for (const auto& clause : cnf.clauses) {
    std::vector<BoolExpr> disjuncts;
    for (const auto& lit : clause) {
      BoolExpr a = BoolExpr::make_atom(lit.atom);
      disjuncts.push_back(lit.negated ? BoolExpr::make_not(std::move(a)) : std::move(a));
    }
    conjuncts.push_back(BoolExpr::make_or(std::move(disjuncts)));
  }
  return BoolExpr::make_and(std::move(conjuncts));
}

namespace {

void collect_atoms(const BoolExpr& b, std::map<std::string, std::size_t>& ids) {
  if (b.kind == BoolKind::Atom) {
    ids.emplace(to_sql(canonicalize_atom(b.atom)), ids.size());
    return;
  }
  for (const auto& c : b.children) collect_atoms(c, ids);
}

bool evaluate(const BoolExpr& b, const std::map<std::string, std::size_t>& ids,
              std::uint64_t assignment) {
  switch (b.kind) {
    case BoolKind::Atom:
      return (assignment >> ids.at(to_sql(canonicalize_atom(b.atom)))) & 1U;
    case BoolKind::Not:
      return !evaluate(b.children[0], ids, assignment);
    case BoolKind::And:
      return std::all_of(b.children.begin(), b.children.end(),
                         [&](const BoolExpr& c) { return evaluate(c, ids, assignment); });
    case BoolKind::Or:
      return std::any_of(b.children.begin(), b.children.end(),
                         [&](const BoolExpr& c) { return evaluate(c, ids, assignment); });
  }
  return false;
}

}  // namespace

bool truth_equivalent(const BoolExpr& a, const BoolExpr& b) {
  std::map<std::string, std::size_t> ids;
  collect_atoms(a, ids);
  collect_atoms(b, ids);
  if (ids.size() > kMaxTruthTableAtoms)
    throw TooManyAtoms("truth table over " + std::to_string(ids.size()) + " atoms");
  const std::uint64_t rows = std::uint64_t{1} << ids.size();
  for (std::uint64_t v = 0; v < rows; ++v)
    if (evaluate(a, ids, v) != evaluate(b, ids, v)) return false;
  return true;
}

}  // namespace sqltutor
