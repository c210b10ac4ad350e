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


// Query harmonization: rewrites a syntax tree with the eighteen
// harmonization rules until nothing changes, so that equivalent phrasings of
// a solution end up as the same tree.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sqltutor/ast.hpp"
#include "sqltutor/logic.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

constexpr int kRuleCount = 18;

struct RuleInfo {
  int id;                  // 1..18
  std::string_view code;   // "R01".."R18"
  std::string_view title;
  bool hint_bearing;
  std::string_view guard;
};

/// The eighteen rules in id order.
const std::array<RuleInfo, kRuleCount>& rule_catalog();

std::string rule_code(int id);

struct HarmonizeOptions {
  bool output_order_required = false;
  std::array<bool, kRuleCount> enabled = [] {
    std::array<bool, kRuleCount> a{};
    a.fill(true);
    return a;
  }();
  std::size_t atom_cap = kDefaultAtomCap;
  std::size_t max_passes = 32;

  bool rule_enabled(int id) const { return enabled[static_cast<std::size_t>(id - 1)]; }
  void set_rule(int id, bool on) { enabled[static_cast<std::size_t>(id - 1)] = on; }
};

struct AppliedRule {
  int rule;
  std::string location;  // "$" is the outermost query, e.g. "$/from[0]"

  bool operator==(const AppliedRule&) const = default;
};

struct StyleHint {
  int rule;
  Clause clause;
  std::string location;
  std::string message;

  bool operator==(const StyleHint&) const = default;
};

struct CanonicalQuery {
  Query tree;
  std::vector<AppliedRule> applied;
  std::vector<StyleHint> hints;
};

/// Applies rules R01..R18 in id order, each over the whole tree with
/// subqueries rewritten before their enclosing query, and repeats the pass
/// until a pass changes nothing. Throws FixedPointNotReached when
/// options.max_passes passes do not converge.
CanonicalQuery harmonize(const Query& query, const SchemaDef& schema,
                         const HarmonizeOptions& options = {});

}  // namespace sqltutor
