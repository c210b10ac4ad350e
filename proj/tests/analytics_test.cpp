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

#include <random>

#include "sqltutor/analytics.hpp"
#include "sqltutor/harmonizer.hpp"
#include "sqltutor/parser.hpp"
#include "support.hpp"

namespace sqltutor {
namespace {

using Curve = std::vector<std::pair<std::size_t, std::size_t>>;

// Textbook full-matrix edit distance, kept separate from the library's.
std::size_t edit(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
  return d[a.size()][b.size()];
}

std::size_t greedy_kept(const std::vector<std::string>& corpus, std::size_t t) {
  std::vector<std::string> kept;
  for (const auto& s : corpus) {
    bool keep = true;
    for (const auto& k : kept) keep &= edit(s, k) >= std::max<std::size_t>(t, 1);
    if (keep) kept.push_back(s);
  }
  return kept.size();
}

TEST(Curve, ThresholdZeroCountsDistinct) {
  Curve c = reduction_curve({"a", "b", "a", "c"}, {0});
  EXPECT_EQ(c, (Curve{{0, 3}}));
}

TEST(Curve, CopiesCollapse) {
  std::vector<std::string> corpus(5, "SELECT 1");
  for (std::size_t t : {1, 5, 50}) EXPECT_EQ(reduction_curve(corpus, {t})[0].second, 1u);
}

TEST(Curve, BoundaryIsInclusive) {
  const std::vector<std::string> pair{testing::kLevenshteinA, testing::kLevenshteinB};
  Curve c = reduction_curve(pair, {34, 35, 36});
  EXPECT_EQ(c, (Curve{{34, 2}, {35, 2}, {36, 1}}));
}

TEST(Property, CurveMatchesGreedyOracleAndIsMonotone) {
  std::mt19937 rng(testing::kSeed);
  testing::SqlGenerator gen(testing::kSeed);
  for (int round = 0; round < 10; ++round) {
    std::vector<std::string> corpus;
    for (int i = 0; i < 25; ++i) {
      // Repeat earlier entries now and then to exercise exact duplicates.
      if (!corpus.empty() && rng() % 4 == 0)
        corpus.push_back(corpus[rng() % corpus.size()]);
      else
        corpus.push_back(gen.next());
    }
    const std::vector<std::size_t> ts{0, 1, 5, 10, 20, 40, 80, 160};
    Curve c = reduction_curve(corpus, ts);
    ASSERT_EQ(c.size(), ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      EXPECT_EQ(c[i].first, ts[i]);
      EXPECT_EQ(c[i].second, greedy_kept(corpus, ts[i]));
      if (i) {
        EXPECT_LE(c[i].second, c[i - 1].second);
      }
    }
  }
}

TEST(Harmonized, BetweenFormsCountOnce) {
  const SchemaDef users = parse_schema(testing::kUserDdl);
  std::vector<Query> trees{harmonize(parse(testing::kBetweenReference), users).tree,
                           harmonize(parse(testing::kBetweenStudent), users).tree};
  EXPECT_EQ(harmonization_reduction(trees), 1u);
}

TEST(Harmonized, CommaJoinFormsCountTwiceWithoutR14) {
  const SchemaDef users = parse_schema(testing::kUserDdl);
  HarmonizeOptions off;
  off.set_rule(14, false);
  std::vector<Query> trees{
      harmonize(parse("SELECT name FROM user INNER JOIN admin ON user.id = admin.uid"), users, off).tree,
      harmonize(parse("SELECT name FROM user, admin WHERE user.id = admin.uid"), users, off).tree};
  EXPECT_EQ(harmonization_reduction(trees), 2u);
}

const SchemaDef& company() {
  static const SchemaDef s = parse_schema(testing::kCompanyDdl);
  return s;
}

std::vector<Query> harmonized(const std::vector<std::string>& seq) {
  std::vector<Query> out;
  for (const auto& s : seq) out.push_back(harmonize(parse(s), company()).tree);
  return out;
}

TEST(Metrics, StrictlyImprovingSequence) {
  const Query ref = harmonize(parse("SELECT name FROM customers WHERE city = 'York'"), company()).tree;
  auto seq = harmonized({"SELECT city, customer_id FROM customers WHERE city = 'Leeds'",
                         "SELECT city, name FROM customers WHERE city = 'Leeds'",
                         "SELECT name FROM customers WHERE city = 'Leeds'",
                         "SELECT name FROM customers WHERE city = 'York'"});
  auto m = learning_metrics({seq}, {{1, &ref}}, FeedbackMode::MultiRef, {}, company());
  EXPECT_EQ(m.pairs, 3u);
  EXPECT_EQ(m.backward, 0u);
  EXPECT_EQ(m.sideways, 0u);
  EXPECT_EQ(m.progress, 3u);
  EXPECT_DOUBLE_EQ(m.trials_to_progress, 1.0);
}

TEST(Metrics, ReBreakingFixedWhereIsBackward) {
  const Query ref = harmonize(parse("SELECT name FROM customers WHERE city = 'York'"), company()).tree;
  auto seq = harmonized({"SELECT city FROM customers WHERE city = 'York'",
                         "SELECT name FROM customers WHERE city = 'Leeds'",
                         "SELECT name FROM customers WHERE city = 'York'"});
  auto m = learning_metrics({seq}, {{1, &ref}}, FeedbackMode::MultiRef, {}, company());
  EXPECT_EQ(m.pairs, 2u);
  EXPECT_EQ(m.backward, 1u);
  EXPECT_EQ(m.sideways, 1u);
  EXPECT_EQ(m.progress, 1u);
  EXPECT_DOUBLE_EQ(m.trials_to_progress, 2.0);
}

TEST(Metrics, StalledAttemptsCountTowardTrials) {
  const Query ref = harmonize(parse("SELECT name FROM customers WHERE city = 'York'"), company()).tree;
  auto stalled = harmonized({"SELECT city FROM customers", "SELECT city FROM customers",
                             "SELECT city FROM customers"});
  auto m = learning_metrics({stalled}, {{1, &ref}}, FeedbackMode::MultiRef, {}, company());
  EXPECT_EQ(m.progress, 0u);
  EXPECT_DOUBLE_EQ(m.trials_to_progress, 2.0);
}

TEST(Metrics, SingleRefUsesOnlyLecturer) {
  const Query a = harmonize(parse(testing::kJoinReference), company()).tree;
  const Query b = harmonize(parse(testing::kSubqueryReference), company()).tree;
  std::vector<std::vector<Query>> seqs;
  for (const auto& s : testing::toward_subquery_sequences()) seqs.push_back(harmonized(s));
  auto single = learning_metrics(seqs, {{1, &a}, {2, &b}}, FeedbackMode::SingleRef, {}, company());
  auto single_only_a = learning_metrics(seqs, {{1, &a}}, FeedbackMode::MultiRef, {}, company());
  EXPECT_EQ(single.backward, single_only_a.backward);
  EXPECT_EQ(single.sideways, single_only_a.sideways);
  EXPECT_EQ(single.progress, single_only_a.progress);
}

TEST(Metrics, MultipleReferencesReduceDetours) {
  const Query a = harmonize(parse(testing::kJoinReference), company()).tree;
  const Query b = harmonize(parse(testing::kSubqueryReference), company()).tree;
  std::vector<std::vector<Query>> seqs;
  for (const auto& s : testing::toward_subquery_sequences()) seqs.push_back(harmonized(s));
  const std::vector<ReferenceView> refs{{1, &a}, {2, &b}};
  auto sr = learning_metrics(seqs, refs, FeedbackMode::SingleRef, {}, company());
  auto mr = learning_metrics(seqs, refs, FeedbackMode::MultiRef, {}, company());
  EXPECT_LT(mr.backward + mr.sideways, sr.backward + sr.sideways)
      << "sr " << sr.backward << "/" << sr.sideways << " mr " << mr.backward << "/" << mr.sideways;
  EXPECT_LT(mr.trials_to_progress, sr.trials_to_progress)
      << "sr " << sr.trials_to_progress << " mr " << mr.trials_to_progress;
  EXPECT_EQ(sr.pairs, mr.pairs);
}

TEST(Metrics, NoReferencesNoCounts) {
  auto m = learning_metrics({harmonized({"SELECT 1", "SELECT 2"})}, {}, FeedbackMode::MultiRef);
  EXPECT_EQ(m.pairs, 0u);
}

}  // namespace
}  // namespace sqltutor
