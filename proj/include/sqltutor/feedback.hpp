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


// Student-facing feedback: node-level diff hints and short notes.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqltutor/ast.hpp"
#include "sqltutor/checker.hpp"
#include "sqltutor/distance.hpp"
#include "sqltutor/harmonizer.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

enum class Category { C1, C2, C3, Style };
enum class HintKind { Missing, Extra, Mismatch, Ordering, Improvement };
enum class Verbosity { Abstract, Tokens };
enum class FeedbackMode { SingleRef, MultiRef };

std::string_view category_name(Category c);
std::string_view hint_kind_name(HintKind k);
std::string_view verbosity_name(Verbosity v);
Verbosity verbosity_from_name(std::string_view name);
std::string_view mode_name(FeedbackMode m);
FeedbackMode mode_from_name(std::string_view name);

struct Hint {
  Category category;
  Clause clause;
  HintKind kind;
  std::string token;     // the submission's own token, when there is one
  std::string expected;  // reference-side token; only with Verbosity::Tokens
  std::string message;

  bool operator==(const Hint&) const = default;
};

/// Per-clause comparison of extracted node lists. Reference-only nodes are
/// missing, submission-only nodes are extra; a missing and an extra node of
/// the same kind in one clause pair up as a mismatch. A clause whose nodes
/// agree as a multiset but not in sequence yields one ordering hint.
/// Tables, attributes and values are C1; keywords and functions are C2;
/// ordering is C3. Hints are sorted by category, then clause.
std::vector<Hint> static_diff(const Query& submission, const Query& reference,
                              Verbosity verbosity = Verbosity::Abstract);

/// One C1 hint per column reference of the raw submission that does not
/// resolve under the schema.
std::vector<Hint> unknown_column_hints(const Query& submission, const SchemaDef& schema);

std::vector<Hint> style_hints(const std::vector<StyleHint>& hints);

/// Sorts by category (C1, C2, C3, Style) and truncates to `cap`.
void order_and_cap(std::vector<Hint>& hints, std::size_t cap);

inline constexpr std::string_view kNoteMissingClauses = "Missing multiple clauses";
inline constexpr std::string_view kNoteDifferentAttributes = "Different attributes";
inline constexpr std::string_view kNoteAdditionalOrderBy = "Additional order by";
inline constexpr std::string_view kNoteLecturer = "Lecturer solution";
inline constexpr std::string_view kNotePoorQuality =
    "Correct, but the matching reference solution is marked as poor quality; "
    "the query can be written more cleanly";

/// Fixed phrase catalog: empty for a zero breakdown; "Missing multiple
/// clauses" when at least two clause types of the reference (subqueries
/// included) are absent from the submission; "Different attributes" when
/// the select or where c1 component is nonzero; "Additional order by" when
/// only the submission orders; otherwise "Different <category> in <clause>"
/// for the largest weighted component.
std::string note_summary(const DistanceBreakdown& d, const Query& submission,
                         const Query& reference);

struct FeedbackReport {
  Verdict verdict;
  FeedbackMode mode = FeedbackMode::MultiRef;
  std::optional<std::int64_t> closest_ref;
  std::optional<DistanceBreakdown> distance;
  std::vector<Hint> hints;
  std::string note;
};

}  // namespace sqltutor
