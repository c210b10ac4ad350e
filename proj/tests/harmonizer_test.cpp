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

#include "sqltutor/errors.hpp"
#include "sqltutor/harmonizer.hpp"
#include "sqltutor/parser.hpp"
#include "support.hpp"

namespace sqltutor {
namespace {

const SchemaDef& company() {
  static const SchemaDef s = parse_schema(testing::kCompanyDdl);
  return s;
}

std::string canon(const std::string& sql, const HarmonizeOptions& opts = {}) {
  return to_sql(harmonize(parse(sql), company(), opts).tree);
}

bool applied(const CanonicalQuery& c, int rule) {
  return std::any_of(c.applied.begin(), c.applied.end(),
                     [&](const AppliedRule& a) { return a.rule == rule; });
}

TEST(Catalog, EighteenRulesInOrder) {
  const auto& cat = rule_catalog();
  for (int i = 0; i < kRuleCount; ++i) {
    EXPECT_EQ(cat[static_cast<std::size_t>(i)].id, i + 1);
    EXPECT_EQ(std::string(cat[static_cast<std::size_t>(i)].code), rule_code(i + 1));
    EXPECT_FALSE(cat[static_cast<std::size_t>(i)].guard.empty());
  }
  EXPECT_EQ(rule_code(7), "R07");
  int hint_bearing = 0;
  for (const auto& r : cat) hint_bearing += r.hint_bearing;
  EXPECT_EQ(hint_bearing, 2);
  EXPECT_TRUE(cat[11].hint_bearing);
  EXPECT_TRUE(cat[12].hint_bearing);
}

class GoldenPair : public ::testing::TestWithParam<testing::RulePair> {};

TEST_P(GoldenPair, BothSidesHarmonizeToSameTree) {
  const auto& p = GetParam();
  CanonicalQuery a = harmonize(parse(p.a), company());
  CanonicalQuery b = harmonize(parse(p.b), company());
  EXPECT_EQ(a.tree, b.tree) << to_sql(a.tree) << "\n" << to_sql(b.tree);
  EXPECT_TRUE(applied(a, p.rule) || applied(b, p.rule)) << rule_code(p.rule);
}

TEST_P(GoldenPair, RuleIsNeeded) {
  const auto& p = GetParam();
  HarmonizeOptions off;
  off.set_rule(p.rule, false);
  // R01 only renames aliases that R02 then removes anyway.
  if (p.rule == 1) off.set_rule(2, false);
  // R08 also drops ORDER BY when output order is free.
  if (p.rule == 3) off.set_rule(8, false);
  EXPECT_NE(canon(p.a, off), canon(p.b, off)) << rule_code(p.rule);
}

INSTANTIATE_TEST_SUITE_P(Rules, GoldenPair, ::testing::ValuesIn(testing::rule_pairs()),
                         [](const auto& info) { return rule_code(info.param.rule); });

TEST(Harmonize, BetweenBecomesTwoComparisons) {
  const SchemaDef users = parse_schema(testing::kUserDdl);
  Query a = harmonize(parse(testing::kBetweenReference), users).tree;
  Query b = harmonize(parse(testing::kBetweenStudent), users).tree;
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_sql(a), "SELECT user.name FROM user WHERE user.age < 66 AND user.age > 17");
}

TEST(Harmonize, RoundHintReported) {
  CanonicalQuery c = harmonize(parse(testing::rule_pairs()[11].b), company());
  ASSERT_EQ(c.hints.size(), 1u);
  EXPECT_EQ(c.hints[0].rule, 12);
  EXPECT_EQ(c.hints[0].clause, Clause::Select);
  EXPECT_EQ(c.hints[0].location, "$");
}

TEST(Harmonize, CastHintReported) {
  CanonicalQuery c = harmonize(parse(testing::rule_pairs()[12].b), company());
  ASSERT_EQ(c.hints.size(), 1u);
  EXPECT_EQ(c.hints[0].rule, 13);
  EXPECT_EQ(c.hints[0].clause, Clause::Where);
}

TEST(Harmonize, RoundOfRealColumnKept) {
  const SchemaDef s = parse_schema("CREATE TABLE p (id INTEGER PRIMARY KEY, price REAL);");
  CanonicalQuery c = harmonize(parse("SELECT ROUND(price, 2) FROM p"), s);
  EXPECT_TRUE(c.hints.empty());
  EXPECT_NE(to_sql(c.tree).find("ROUND"), std::string::npos);
}

TEST(Harmonize, OrderByKeptWhenOrderRequired) {
  HarmonizeOptions opts;
  opts.output_order_required = true;
  EXPECT_NE(canon("SELECT * FROM customers ORDER BY customer_id", opts).find("ORDER BY"),
            std::string::npos);
  EXPECT_EQ(canon("SELECT * FROM customers ORDER BY customer_id").find("ORDER BY"),
            std::string::npos);
}

TEST(Harmonize, OrderByKeptWithLimit) {
  EXPECT_NE(canon("SELECT name FROM customers ORDER BY name LIMIT 2").find("ORDER BY"),
            std::string::npos);
}

TEST(Harmonize, MinRewriteNeedsNotNullColumn) {
  // age is nullable: ascending ORDER BY puts NULL first, MIN skips it.
  EXPECT_EQ(canon("SELECT age FROM employees ORDER BY age LIMIT 1").find("MIN"),
            std::string::npos);
  EXPECT_EQ(canon("SELECT age FROM employees ORDER BY age DESC LIMIT 1"),
            canon("SELECT MAX(age) FROM employees"));
}

TEST(Harmonize, ChainedComparisonSplits) {
  EXPECT_EQ(canon("SELECT * FROM employees WHERE 50000 < salary < 70000"),
            canon("SELECT * FROM employees WHERE salary < 70000 AND salary > 50000"));
}

TEST(Harmonize, SelfJoinKeepsAliases) {
  const std::string sql =
      "SELECT a.name FROM employees a JOIN employees b ON a.div_id = b.div_id";
  const std::string out = canon(sql);
  EXPECT_EQ(out, "SELECT t1.name FROM employees t1 INNER JOIN employees t2 ON t1.div_id = t2.div_id");
  EXPECT_EQ(parse(out), harmonize(parse(out), company()).tree);
}

TEST(Harmonize, CommaJoinStaysWhenR14Disabled) {
  HarmonizeOptions off;
  off.set_rule(14, false);
  const std::string out = canon(testing::rule_pairs()[13].b, off);
  EXPECT_NE(out.find("FROM orders, customers"), std::string::npos) << out;
}

TEST(Harmonize, WithoutSchemaTypeRulesSkip) {
  const SchemaDef none;
  Query q = harmonize(parse("SELECT * FROM employees WHERE salary > 520"), none).tree;
  EXPECT_EQ(to_sql(q), "SELECT * FROM employees WHERE employees.salary > 520");
}

TEST(Harmonize, SubqueriesHarmonized) {
  EXPECT_EQ(canon("SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM "
                  "orders WHERE 1000 < invoice)"),
            canon("SELECT name FROM customers WHERE customer_id IN (SELECT o.customer_id FROM "
                  "orders o WHERE invoice >= 1001)"));
}

// Property: harmonizing twice equals harmonizing once.
TEST(Property, Idempotent) {
  testing::SqlGenerator gen(testing::kSeed);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    const std::string sql = gen.next();
    Query once;
    try {
      once = harmonize(parse(sql), company()).tree;
    } catch (const FixedPointNotReached&) {
      ADD_FAILURE() << "no fixed point: " << sql;
      continue;
    }
    EXPECT_EQ(harmonize(once, company()).tree, once) << sql << "\n" << to_sql(once);
    EXPECT_EQ(parse(to_sql(once)), once) << to_sql(once);
    ++checked;
  }
  EXPECT_GE(checked, 500);
}

}  // namespace
}  // namespace sqltutor
