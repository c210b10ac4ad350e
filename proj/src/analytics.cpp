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


#include "sqltutor/analytics.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace sqltutor {

std::vector<std::pair<std::size_t, std::size_t>> reduction_curve(
    const std::vector<std::string>& corpus, const std::vector<std::size_t>& thresholds) {
  const std::size_t n = corpus.size();
  // Pairwise distances are shared across thresholds.
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i][j] = dist[j][i] = levenshtein(corpus[i], corpus[j]);

  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t t : thresholds) {
    const std::size_t bound = std::max<std::size_t>(t, 1);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
      bool keep = std::all_of(kept.begin(), kept.end(),
                              [&](std::size_t k) { return dist[i][k] >= bound; });
      if (keep) kept.push_back(i);
    }
    out.emplace_back(t, kept.size());
  }
  return out;
}

std::size_t harmonization_reduction(const std::vector<Query>& canonical) {
  std::vector<const Query*> distinct;
  for (const auto& q : canonical)
    if (std::none_of(distinct.begin(), distinct.end(), [&](const Query* d) { return *d == q; }))
      distinct.push_back(&q);
  return distinct.size();
}

LearningMetrics learning_metrics(const std::vector<std::vector<Query>>& sequences,
                                 const std::vector<ReferenceView>& refs, FeedbackMode mode,
                                 const WeightsConfig& weights, const SchemaDef& schema) {
  LearningMetrics m;
  m.mode = mode;
  if (refs.empty()) return m;
  std::vector<ReferenceView> used = refs;
  if (mode == FeedbackMode::SingleRef) used.resize(1);

  for (const auto& seq : sequences) {
    std::vector<DistanceBreakdown> d;
    for (const auto& q : seq) d.push_back(closest_reference(q, used, weights, schema).second);
    for (std::size_t i = 1; i < d.size(); ++i) {
      ++m.pairs;
      bool back = false;
      for (std::size_t c = 0; c < kDistanceClauses.size(); ++c) {
        const auto& p = d[i - 1].clauses[c];
        const auto& q = d[i].clauses[c];
        if ((p.c1 == 0 && q.c1 > 0) || (p.c2 == 0 && q.c2 > 0) || (p.c3 == 0 && q.c3 > 0))
          back = true;
      }
      if (back) ++m.backward;
      if (d[i].total < d[i - 1].total) {
        ++m.progress;
      } else if (d[i].total == d[i - 1].total) {
        ++m.sideways;
      }
    }
  }
  // Attempts that never lead to progress still count, so a mode in which
  // students stall does not look better than one in which they advance.
  m.trials_to_progress =
      static_cast<double>(m.pairs) / static_cast<double>(std::max<std::size_t>(m.progress, 1));
  return m;
}

}  // namespace sqltutor
