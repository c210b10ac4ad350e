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


#include "sqltutor/distance.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>

#include "sqltutor/errors.hpp"
#include "sqltutor/join_oracle.hpp"
#include "sqltutor/logic.hpp"

namespace sqltutor {

namespace {

std::size_t clause_index(Clause c) {
  for (std::size_t i = 0; i < kDistanceClauses.size(); ++i)
    if (kDistanceClauses[i] == c) return i;
  throw std::out_of_range("clause carries no distance");
}

std::int64_t multiset_difference(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::string> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return static_cast<std::int64_t>(out.size());
}

std::vector<std::string> texts(const std::vector<ScalarExpr>& exprs) {
  std::vector<std::string> out;
  for (const auto& e : exprs) out.push_back(to_sql(e));
  return out;
}

std::int64_t diff(std::size_t a, std::size_t b) {
  return a > b ? static_cast<std::int64_t>(a - b) : static_cast<std::int64_t>(b - a);
}

// Literal multiset and connective counts of a condition.
struct ConditionShape {
  std::vector<std::string> literals;
  std::size_t ands = 0;
  std::size_t ors = 0;
};

void structural_shape(const BoolExpr& b, bool negated, ConditionShape& out) {
  switch (b.kind) {
    case BoolKind::Atom: {
      std::string key = to_sql(canonicalize_atom(b.atom));
      out.literals.push_back(negated ? "NOT " + key : key);
      return;
    }
    case BoolKind::Not:
      structural_shape(b.children.front(), !negated, out);
      return;
    case BoolKind::And:
    case BoolKind::Or: {
      std::size_t n = b.children.size() - 1;
      // De Morgan view: a negated AND counts as an OR.
      bool is_and = (b.kind == BoolKind::And) != negated;
      (is_and ? out.ands : out.ors) += n;
      for (const auto& c : b.children) structural_shape(c, negated, out);
      return;
    }
  }
}

ConditionShape shape_of(const std::optional<BoolExpr>& cond) {
  ConditionShape s;
  if (!cond) return s;
  try {
    CnfFormula cnf = to_cnf(*cond);
    for (const auto& clause : cnf.clauses)
      for (const auto& lit : clause) s.literals.push_back(lit.key());
    s.ands = cnf.and_count();
    s.ors = cnf.or_count();
  } catch (const CnfBlowup&) {
    structural_shape(*cond, false, s);
  }
  return s;
}

Components condition_distance(const std::optional<BoolExpr>& a,
                              const std::optional<BoolExpr>& b) {
  ConditionShape sa = shape_of(a), sb = shape_of(b);
  Components c;
  c.c1 = multiset_difference(sa.literals, sb.literals);
  c.c2 = diff(sa.ands, sb.ands) + diff(sa.ors, sb.ors);
  return c;
}

std::int64_t join_nodes(const FromNode& n) {
  if (n.kind != FromKind::Join) return 0;
  return 1 + join_nodes(n.operands[0]) + join_nodes(n.operands[1]);
}

// Positional comparison used when the join oracle cannot map a tree.
std::int64_t structural_join_distance(const FromNode& a, const FromNode& b) {
  if (a.kind != b.kind) {
    if (a.kind == FromKind::Join || b.kind == FromKind::Join)
      return 1 + join_nodes(a) + join_nodes(b);
    return 1;
  }
  if (a.kind != FromKind::Join) return 0;
  return (a.join != b.join ? 1 : 0) + structural_join_distance(a.operands[0], b.operands[0]) +
         structural_join_distance(a.operands[1], b.operands[1]);
}

std::vector<const Query*> derived_subqueries(const Query& q) {
  std::vector<const Query*> out;
  if (!q.from) return out;
  for (const FromNode* leaf : leaf_sources(*q.from))
    if (leaf->kind == FromKind::Derived) out.push_back(leaf->subquery.get());
  return out;
}

std::vector<std::string> table_names(const Query& q) {
  std::vector<std::string> out;
  if (!q.from) return out;
  for (const FromNode* leaf : leaf_sources(*q.from))
    if (leaf->kind == FromKind::Table) out.push_back(leaf->name);
  return out;
}

DistanceBreakdown oriented_distance(const Query& a, const Query& b, const WeightsConfig& w,
                                    const SchemaDef& schema) {
  DistanceBreakdown d;
  d.weights = w;
  d.at(Clause::Select) = select_distance(a, b);
  d.at(Clause::From) = from_distance(a, b, w, schema);
  d.at(Clause::Where) = where_distance(a, b);
  d.at(Clause::GroupBy) = groupby_distance(a, b);
  d.at(Clause::OrderBy) = orderby_distance(a, b);
  d.at(Clause::Having) = having_distance(a, b);
  d.update_total();
  return d;
}

std::vector<char32_t> code_points(std::string_view s) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
    if (i + len > s.size()) len = 1;
    char32_t cp = len == 1 ? c : c & (0xFF >> (len + 1));
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) {
        len = 1;
        cp = c;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

}  // namespace

Components& DistanceBreakdown::at(Clause c) { return clauses[clause_index(c)]; }
const Components& DistanceBreakdown::at(Clause c) const { return clauses[clause_index(c)]; }

void DistanceBreakdown::update_total() {
  total = 0;
  for (const auto& c : clauses)
    total += weights.w1 * static_cast<double>(c.c1) + weights.w2 * static_cast<double>(c.c2) +
             weights.w3 * static_cast<double>(c.c3);
}

bool DistanceBreakdown::zero() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Components& c) { return c.zero(); });
}

std::int64_t min_transpositions(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::int64_t cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = true;
  }
  return static_cast<std::int64_t>(perm.size()) - cycles;
}

std::pair<std::int64_t, std::int64_t> list_distance(const std::vector<std::string>& a,
                                                    const std::vector<std::string>& b) {
  std::map<std::string, std::size_t> ca, cb;
  for (const auto& x : a) ++ca[x];
  for (const auto& x : b) ++cb[x];
  auto common = [&](const std::string& x) {
    auto ia = ca.find(x), ib = cb.find(x);
    return std::min(ia == ca.end() ? 0 : ia->second, ib == cb.end() ? 0 : ib->second);
  };
  // k-th occurrence of an item in a pairs with its k-th occurrence in b.
  auto keyed = [&](const std::vector<std::string>& list) {
    std::map<std::string, std::size_t> seen;
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& x : list) {
      std::size_t k = seen[x]++;
      if (k < common(x)) out.emplace_back(x, k);
    }
    return out;
  };
  auto ka = keyed(a), kb = keyed(b);
  std::map<std::pair<std::string, std::size_t>, std::size_t> pos_b;
  for (std::size_t i = 0; i < kb.size(); ++i) pos_b[kb[i]] = i;
  std::vector<std::size_t> perm;
  for (const auto& k : ka) perm.push_back(pos_b.at(k));
  return {multiset_difference(a, b), min_transpositions(perm)};
}

std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> result(n);
  for (std::size_t j = 1; j <= n; ++j) result[p[j] - 1] = j - 1;
  return result;
}

Components select_distance(const Query& a, const Query& b) {
  std::vector<std::string> ia, ib;
  for (const auto& s : a.select) ia.push_back(to_sql(s.expr));
  for (const auto& s : b.select) ib.push_back(to_sql(s.expr));
  auto [c1, c3] = list_distance(ia, ib);
  Components c;
  c.c1 = c1;
  c.c3 = c3;
  if (a.distinct != b.distinct) c.c2 = 1;
  return c;
}

Components from_distance(const Query& a, const Query& b, const WeightsConfig& weights,
                         const SchemaDef& schema) {
  Components c;
  c.c1 = multiset_difference(table_names(a), table_names(b));
  if (a.from && b.from) {
    try {
      c.c2 = static_cast<std::int64_t>(join_distance(*a.from, *b.from, schema));
    } catch (const Error&) {
      c.c2 = structural_join_distance(*a.from, *b.from);
    }
  } else if (a.from || b.from) {
    c.c2 = join_nodes(a.from ? *a.from : *b.from);
  }

  auto sa = derived_subqueries(a), sb = derived_subqueries(b);
  const std::size_t n = std::max(sa.size(), sb.size());
  if (n == 0) return c;
  const Query empty;
  sa.resize(n, &empty);
  sb.resize(n, &empty);
  std::vector<std::vector<DistanceBreakdown>> pair(n, std::vector<DistanceBreakdown>(n));
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      pair[i][j] = total_distance(*sa[i], *sb[j], weights, schema);
      cost[i][j] = pair[i][j].total;
    }
  auto match = min_cost_assignment(cost);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& comp : pair[i][match[i]].clauses) c += comp;
  return c;
}

Components where_distance(const Query& a, const Query& b) {
  return condition_distance(a.where, b.where);
}

Components having_distance(const Query& a, const Query& b) {
  return condition_distance(a.having, b.having);
}

Components groupby_distance(const Query& a, const Query& b) {
  auto [c1, c3] = list_distance(texts(a.group_by), texts(b.group_by));
  Components c;
  c.c1 = c1;
  c.c3 = c3;
  return c;
}

Components orderby_distance(const Query& a, const Query& b) {
  std::vector<std::string> ka, kb;
  std::map<std::string, std::vector<bool>> da, db;
  for (const auto& o : a.order_by) {
    ka.push_back(to_sql(o.expr));
    da[ka.back()].push_back(o.descending);
  }
  for (const auto& o : b.order_by) {
    kb.push_back(to_sql(o.expr));
    db[kb.back()].push_back(o.descending);
  }
  auto [c1, c3] = list_distance(ka, kb);
  Components c;
  c.c1 = c1;
  c.c3 = c3;
  for (const auto& [key, dirs] : da) {
    auto it = db.find(key);
    if (it == db.end()) continue;
    std::size_t m = std::min(dirs.size(), it->second.size());
    for (std::size_t k = 0; k < m; ++k)
      if (dirs[k] != it->second[k]) ++c.c1;
  }
  if (a.limit != b.limit) c.c2 = 1;
  return c;
}

DistanceBreakdown total_distance(const Query& a, const Query& b, const WeightsConfig& weights,
                                 const SchemaDef& schema) {
  // Evaluate in a fixed orientation so tie-breaks inside the subquery
  // assignment cannot make the result depend on argument order.
  if (to_sql(b) < to_sql(a)) return oriented_distance(b, a, weights, schema);
  return oriented_distance(a, b, weights, schema);
}

std::pair<std::int64_t, DistanceBreakdown> closest_reference(
    const Query& submission, const std::vector<ReferenceView>& refs,
    const WeightsConfig& weights, const SchemaDef& schema) {
  if (refs.empty()) throw EmptyPool("no active reference solution");
  std::int64_t best_id = refs.front().id;
  DistanceBreakdown best = total_distance(submission, *refs.front().tree, weights, schema);
  for (std::size_t i = 1; i < refs.size(); ++i) {
    DistanceBreakdown d = total_distance(submission, *refs[i].tree, weights, schema);
    if (d.total < best.total) {
      best = d;
      best_id = refs[i].id;
    }
  }
  return {best_id, best};
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  auto x = code_points(a), y = code_points(b);
  std::vector<std::size_t> prev(y.size() + 1), cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

}  // namespace sqltutor
