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


// Corpus-level evaluation: Levenshtein reduction curves, harmonization
// reduction and learning-progress metrics.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sqltutor/ast.hpp"
#include "sqltutor/distance.hpp"
#include "sqltutor/feedback.hpp"

namespace sqltutor {

/// For each threshold t, scans the corpus in order and keeps a string iff
/// its smallest edit distance to every kept string is at least max(t, 1):
/// exact repeats are never kept, so t = 0 counts distinct strings.
std::vector<std::pair<std::size_t, std::size_t>> reduction_curve(
    const std::vector<std::string>& corpus, const std::vector<std::size_t>& thresholds);

/// Number of distinct harmonized trees.
std::size_t harmonization_reduction(const std::vector<Query>& canonical);

struct LearningMetrics {
  FeedbackMode mode = FeedbackMode::MultiRef;
  std::size_t pairs = 0;
  std::size_t backward = 0;  // a zero component became nonzero
  std::size_t sideways = 0;  // total unchanged
  std::size_t progress = 0;  // total decreased
  double trials_to_progress = 0;  // pairs per progress event (pairs when none)
};

/// `sequences` holds each student's harmonized submissions to one task in
/// order. `refs` are the active references in creation order; single_ref
/// mode uses only the first (the lecturer solution).
LearningMetrics learning_metrics(const std::vector<std::vector<Query>>& sequences,
                                 const std::vector<ReferenceView>& refs, FeedbackMode mode,
                                 const WeightsConfig& weights = {},
                                 const SchemaDef& schema = {});

}  // namespace sqltutor
