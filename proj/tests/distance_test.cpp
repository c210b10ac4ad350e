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


#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "sqltutor/distance.hpp"
#include "sqltutor/errors.hpp"
#include "sqltutor/harmonizer.hpp"
#include "sqltutor/parser.hpp"
#include "support.hpp"

namespace sqltutor {
namespace {

using Strings = std::vector<std::string>;

Query harm(const std::string& sql, const SchemaDef& schema, const HarmonizeOptions& o = {}) {
  return harmonize(parse(sql), schema, o).tree;
}

const SchemaDef& company() {
  static const SchemaDef s = parse_schema(testing::kCompanyDdl);
  return s;
}

TEST(ListDistance, Examples) {
  EXPECT_EQ(list_distance({"a", "b"}, {"b", "a"}), std::make_pair(std::int64_t{0}, std::int64_t{1}));
  EXPECT_EQ(list_distance({"a"}, {"a", "b"}), std::make_pair(std::int64_t{1}, std::int64_t{0}));
  EXPECT_EQ(list_distance({}, {}), std::make_pair(std::int64_t{0}, std::int64_t{0}));
  EXPECT_EQ(list_distance({"a", "b", "c"}, {"b", "c", "a"}),
            std::make_pair(std::int64_t{0}, std::int64_t{2}));
}

TEST(ListDistance, Transpositions) {
  EXPECT_EQ(min_transpositions({0, 1, 2}), 0);
  EXPECT_EQ(min_transpositions({1, 0, 2}), 1);
  EXPECT_EQ(min_transpositions({1, 2, 0}), 2);
  EXPECT_EQ(min_transpositions({1, 0, 3, 2}), 2);
}

// Breadth-first search over single swaps: shortest sequence turning a into b.
std::int64_t bfs_swaps(const Strings& a, const Strings& b) {
  std::map<Strings, std::int64_t> seen{{a, 0}};
  std::queue<Strings> todo;
  todo.push(a);
  while (!todo.empty()) {
    Strings cur = todo.front();
    todo.pop();
    const std::int64_t d = seen[cur];
    if (cur == b) return d;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        Strings next = cur;
        std::swap(next[i], next[j]);
        if (seen.emplace(next, d + 1).second) todo.push(next);
      }
  }
  return -1;
}

std::int64_t brute_multiset_difference(Strings a, Strings b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Strings out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return static_cast<std::int64_t>(out.size());
}

TEST(Property, ListDistanceMatchesBruteForce) {
  std::mt19937 rng(testing::kSeed);
  const Strings alphabet{"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    Strings pool = alphabet;
    std::shuffle(pool.begin(), pool.end(), rng);
    Strings a(pool.begin(), pool.begin() + static_cast<long>(n));
    // b: a permutation of a with some items swapped out or added.
    Strings b = a;
    std::shuffle(b.begin(), b.end(), rng);
    if (!b.empty() && rng() % 3 == 0) b.erase(b.begin() + static_cast<long>(rng() % b.size()));
    if (b.size() < 6 && rng() % 3 == 0) b.push_back(pool[7]);
    auto [c1, c3] = list_distance(a, b);
    EXPECT_EQ(c1, brute_multiset_difference(a, b));
    // Common items, kept in each side's order.
    Strings ca, cb;
    for (const auto& x : a)
      if (std::find(b.begin(), b.end(), x) != b.end()) ca.push_back(x);
    for (const auto& x : b)
      if (std::find(a.begin(), a.end(), x) != a.end()) cb.push_back(x);
    EXPECT_EQ(c3, bfs_swaps(ca, cb));
  }
}

double brute_assignment(const std::vector<std::vector<double>>& cost) {
  std::vector<std::size_t> perm(cost.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) sum += cost[i][perm[i]];
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(Property, AssignmentMatchesBruteForce) {
  std::mt19937 rng(testing::kSeed);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost)
      for (auto& c : row) c = std::uniform_int_distribution<int>(0, 20)(rng);
    auto match = min_cost_assignment(cost);
    ASSERT_EQ(match.size(), n);
    std::set<std::size_t> cols(match.begin(), match.end());
    EXPECT_EQ(cols.size(), n);
    double sum = 0;
    for (std::size_t r = 0; r < n; ++r) sum += cost[r][match[r]];
    EXPECT_DOUBLE_EQ(sum, brute_assignment(cost));
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

std::vector<const Query*> derived(const FromNode& n) {
  if (n.kind == FromKind::Derived) return {&*n.subquery};
  std::vector<const Query*> out;
  for (const auto& op : n.operands)
    for (const Query* q : derived(op)) out.push_back(q);
  return out;
}

double weighted(const Components& c, const WeightsConfig& w) {
  return w.w1 * static_cast<double>(c.c1) + w.w2 * static_cast<double>(c.c2) +
         w.w3 * static_cast<double>(c.c3);
}

// Derived tables in FROM are paired by a minimum-cost assignment. With the
// same outer join shape on both sides, the from-distance equals the best
// total over all pairings.
TEST(Property, DerivedTableMatchingIsOptimal) {
  const Strings pool{
      "SELECT employee_id FROM employees WHERE salary > 50000",
      "SELECT employee_id FROM employees WHERE salary >= 50000",
      "SELECT div_id FROM employees GROUP BY div_id",
      "SELECT id FROM divisions WHERE name = 'IT'",
      "SELECT customer_id FROM orders WHERE invoice > 1000",
      "SELECT customer_id, invoice FROM orders ORDER BY invoice DESC LIMIT 2",
      "SELECT MAX(salary) FROM employees",
  };
  std::mt19937 rng(testing::kSeed);
  const WeightsConfig w;
  for (int i = 0; i < 120; ++i) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    auto build = [&] {
      std::string sql = "SELECT * FROM ";
      for (std::size_t j = 0; j < k; ++j)
        sql += (j ? ", (" : "(") + pool[rng() % pool.size()] + ") AS d" + std::to_string(j);
      return sql;
    };
    const std::string sa = build(), sb = build();
    const Query a = harm(sa, company()), b = harm(sb, company());
    auto da = derived(*a.from), db = derived(*b.from);
    ASSERT_EQ(da.size(), k);
    ASSERT_EQ(db.size(), k);
    std::vector<std::vector<double>> cost(k, std::vector<double>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) cost[r][c] = total_distance(*da[r], *db[c], w, company()).total;
    EXPECT_DOUBLE_EQ(weighted(from_distance(a, b, w, company()), w), brute_assignment(cost))
        << sa << "\n" << sb;
  }
}

TEST(FromDistance, DerivedAgainstNothingCostsItsDistanceToEmpty) {
  const Query a = harm("SELECT * FROM (SELECT MIN(salary) FROM employees) AS m", company());
  const Query b = harm("SELECT * FROM employees", company());
  const Query empty;
  const Query& sub = *a.from->subquery;
  Components c = from_distance(a, b, {}, company());
  Components inner;
  for (const auto& comp : total_distance(sub, empty, {}, company()).clauses) inner += comp;
  EXPECT_GE(c.c1, inner.c1);
  EXPECT_GE(c.c2, inner.c2);
  EXPECT_GT(weighted(inner, {}), 0);
}

TEST(Distance, BetweenPairIsZero) {
  const SchemaDef users = parse_schema(testing::kUserDdl);
  auto d = total_distance(harm(testing::kBetweenReference, users),
                          harm(testing::kBetweenStudent, users), {}, users);
  EXPECT_TRUE(d.zero());
  EXPECT_EQ(d.total, 0);
}

TEST(Distance, YorkEqualsVersusLike) {
  const SchemaDef hotels = parse_schema(testing::kHotelsDdl);
  const Query a = harm(testing::kYorkReference, hotels), b = harm(testing::kYorkLike, hotels);
  Components w = where_distance(a, b);
  EXPECT_EQ(w.c1, 2);
  EXPECT_EQ(w.c2, 0);
  auto d = total_distance(a, b, {}, hotels);
  EXPECT_EQ(d.at(Clause::Where), w);
  EXPECT_EQ(d.total, 8);
}

TEST(Distance, CommaJoinDependsOnR14) {
  const SchemaDef users = parse_schema(testing::kUserDdl);
  const std::string ref = "SELECT name FROM user INNER JOIN admin ON user.id = admin.uid;";
  const std::string sub = "SELECT name FROM user, admin WHERE user.id = admin.uid;";
  EXPECT_EQ(total_distance(harm(ref, users), harm(sub, users), {}, users).total, 0);
  HarmonizeOptions off;
  off.set_rule(14, false);
  EXPECT_GT(total_distance(harm(ref, users, off), harm(sub, users, off), {}, users).total, 0);
}

TEST(Distance, SwappedOuterJoinCostsNothing) {
  const Query a = parse("SELECT * FROM T1 LEFT JOIN T2 ON T1.x=T2.x INNER JOIN T3 ON T2.x=T3.x");
  const Query b = parse("SELECT * FROM T2 RIGHT JOIN T1 ON T1.x=T2.x INNER JOIN T3 ON T2.x=T3.x");
  EXPECT_EQ(from_distance(a, b, {}), Components{});
}

TEST(Distance, SelectOrderAndMissingItems) {
  EXPECT_EQ(select_distance(parse("SELECT a, b FROM t"), parse("SELECT b, a FROM t")),
            (Components{0, 0, 1}));
  EXPECT_EQ(select_distance(parse("SELECT a FROM t"), parse("SELECT a, b FROM t")),
            (Components{1, 0, 0}));
}

TEST(Distance, GroupAndOrderLists) {
  EXPECT_EQ(groupby_distance(parse("SELECT a FROM t GROUP BY a, b"),
                             parse("SELECT a FROM t GROUP BY b, a")),
            (Components{0, 0, 1}));
  EXPECT_EQ(orderby_distance(parse("SELECT a FROM t ORDER BY x ASC"),
                             parse("SELECT a FROM t ORDER BY x DESC")),
            (Components{1, 0, 0}));
  EXPECT_EQ(groupby_distance(parse("SELECT a FROM t"), parse("SELECT a FROM t")), Components{});
}

TEST(Distance, WhereConnectivesCount) {
  Components c = where_distance(parse("SELECT * FROM t WHERE a = 1 AND b = 2"),
                                parse("SELECT * FROM t WHERE a = 1 OR b = 2"));
  EXPECT_EQ(c.c1, 0);
  EXPECT_GT(c.c2, 0);
}

TEST(Distance, ZeroIffAllComponentsZero) {
  testing::SqlGenerator gen(testing::kSeed);
  for (int i = 0; i < 100; ++i) {
    const Query a = harm(gen.next(), company()), b = harm(gen.next(), company());
    auto d = total_distance(a, b, {}, company());
    EXPECT_EQ(d.total == 0, d.zero());
    EXPECT_EQ(total_distance(a, a, {}, company()).total, 0);
    EXPECT_DOUBLE_EQ(total_distance(b, a, {}, company()).total, d.total);
    for (const auto& c : d.clauses) {
      EXPECT_GE(c.c1, 0);
      EXPECT_GE(c.c2, 0);
      EXPECT_GE(c.c3, 0);
    }
  }
}

TEST(Weights, Validation) {
  EXPECT_TRUE(WeightsConfig{}.valid());
  EXPECT_FALSE((WeightsConfig{2, 2, 1}.valid()));
  EXPECT_FALSE((WeightsConfig{4, 2, 0}.valid()));
}

TEST(Closest, TieGoesToEarliest) {
  const Query sub = harm("SELECT name FROM customers", company());
  const Query r1 = harm("SELECT city FROM customers", company());
  const Query r2 = harm("SELECT customer_id FROM customers", company());
  auto [id, d] = closest_reference(sub, {{7, &r1}, {3, &r2}}, {}, company());
  EXPECT_EQ(id, 7);
  EXPECT_GT(d.total, 0);
  auto [id2, d2] = closest_reference(sub, {{7, &r1}, {3, &sub}}, {}, company());
  EXPECT_EQ(id2, 3);
  EXPECT_EQ(d2.total, 0);
}

TEST(Closest, EmptyPoolThrows) {
  EXPECT_THROW(closest_reference(Query{}, {}), EmptyPool);
}

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein("abc", "abd"), 1u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("caf\xc3\xa9", "cafe"), 1u);
  EXPECT_EQ(levenshtein(testing::kLevenshteinA, testing::kLevenshteinB), 35u);
}

// Plain recursion with memoization, independent of the library's row DP.
std::size_t naive_lev(const std::string& a, const std::string& b, std::size_t i, std::size_t j,
                      std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  auto it = memo.find({i, j});
  if (it != memo.end()) return it->second;
  std::size_t best = naive_lev(a, b, i + 1, j + 1, memo) + (a[i] != b[j]);
  best = std::min(best, naive_lev(a, b, i + 1, j, memo) + 1);
  best = std::min(best, naive_lev(a, b, i, j + 1, memo) + 1);
  return memo[{i, j}] = best;
}

TEST(Property, LevenshteinMatchesRecursion) {
  std::mt19937 rng(testing::kSeed);
  auto word = [&] {
    std::string s(std::uniform_int_distribution<std::size_t>(0, 12)(rng), 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng() % 4);
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    const std::string a = word(), b = word();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
    EXPECT_EQ(levenshtein(a, b), naive_lev(a, b, 0, 0, memo)) << a << " " << b;
    EXPECT_EQ(levenshtein(a, b), levenshtein(b, a));
  }
}

}  // namespace
}  // namespace sqltutor
