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


#include "sqltutor/feedback.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sqltutor/errors.hpp"
#include "sqltutor/parser.hpp"
#include "sqltutor/scope.hpp"

namespace sqltutor {

namespace {

constexpr std::array<Clause, 7> kAllClauses{Clause::Select,  Clause::From,   Clause::Where,
                                            Clause::GroupBy, Clause::Having, Clause::OrderBy,
                                            Clause::Limit};

std::string clause_title(Clause c) {
  switch (c) {
    case Clause::Select: return "SELECT";
    case Clause::From: return "FROM";
    case Clause::Where: return "WHERE";
    case Clause::GroupBy: return "GROUP BY";
    case Clause::Having: return "HAVING";
    case Clause::OrderBy: return "ORDER BY";
    case Clause::Limit: return "LIMIT";
  }
  return {};
}

std::string kind_word(NodeKind k) {
  switch (k) {
    case NodeKind::Keyword: return "keyword";
    case NodeKind::Table: return "table";
    case NodeKind::Attribute: return "attribute";
    case NodeKind::Value: return "value";
    case NodeKind::Function: return "function";
  }
  return {};
}

Category category_of(NodeKind k) {
  return k == NodeKind::Keyword || k == NodeKind::Function ? Category::C2 : Category::C1;
}

using Node = std::pair<NodeKind, std::string>;

Hint make(Category cat, Clause clause, HintKind kind, std::string token, std::string expected,
          std::string message) {
  return {cat, clause, kind, std::move(token), std::move(expected), std::move(message)};
}

void clause_set(const Query& q, std::set<Clause>& out);

void clause_set(const ScalarExpr& e, std::set<Clause>& out) {
  if (e.kind == ExprKind::Subquery) {
    clause_set(*e.subquery, out);
    return;
  }
  for (const auto& a : e.args) clause_set(a, out);
}

void clause_set(const BoolExpr& b, std::set<Clause>& out) {
  if (b.kind == BoolKind::Atom) {
    for (const auto& a : b.atom.args) clause_set(a, out);
    return;
  }
  for (const auto& c : b.children) clause_set(c, out);
}

void clause_set(const FromNode& n, std::set<Clause>& out) {
  if (n.kind == FromKind::Derived) clause_set(*n.subquery, out);
  for (const auto& op : n.operands) clause_set(op, out);
  if (n.condition) clause_set(*n.condition, out);
}

void clause_set(const Query& q, std::set<Clause>& out) {
  for (const auto& s : q.select) clause_set(s.expr, out);
  if (q.from) {
    out.insert(Clause::From);
    clause_set(*q.from, out);
  }
  if (q.where) {
    out.insert(Clause::Where);
    clause_set(*q.where, out);
  }
  if (!q.group_by.empty()) out.insert(Clause::GroupBy);
  if (q.having) {
    out.insert(Clause::Having);
    clause_set(*q.having, out);
  }
  if (!q.order_by.empty()) out.insert(Clause::OrderBy);
  if (q.limit) out.insert(Clause::Limit);
}

std::string lower_clause(Clause c) {
  std::string s = clause_title(c);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

}  // namespace

std::string_view category_name(Category c) {
  switch (c) {
    case Category::C1: return "C1";
    case Category::C2: return "C2";
    case Category::C3: return "C3";
    case Category::Style: return "Style";
  }
  return {};
}

std::string_view hint_kind_name(HintKind k) {
  switch (k) {
    case HintKind::Missing: return "missing";
    case HintKind::Extra: return "extra";
    case HintKind::Mismatch: return "mismatch";
    case HintKind::Ordering: return "ordering";
    case HintKind::Improvement: return "improvement";
  }
  return {};
}

std::string_view verbosity_name(Verbosity v) {
  return v == Verbosity::Tokens ? "tokens" : "abstract";
}

Verbosity verbosity_from_name(std::string_view name) {
  if (name == "tokens") return Verbosity::Tokens;
  if (name == "abstract") return Verbosity::Abstract;
  throw Error("unknown hint verbosity: " + std::string(name));
}

std::string_view mode_name(FeedbackMode m) {
  return m == FeedbackMode::SingleRef ? "single_ref" : "multi_ref";
}

FeedbackMode mode_from_name(std::string_view name) {
  if (name == "single_ref" || name == "single") return FeedbackMode::SingleRef;
  if (name == "multi_ref" || name == "multi") return FeedbackMode::MultiRef;
  throw Error("unknown feedback mode: " + std::string(name));
}

std::vector<Hint> static_diff(const Query& submission, const Query& reference,
                              Verbosity verbosity) {
  std::map<Clause, std::vector<Node>> sub, ref;
  for (auto& n : extract_nodes(submission)) sub[n.clause].emplace_back(n.kind, n.token);
  for (auto& n : extract_nodes(reference)) ref[n.clause].emplace_back(n.kind, n.token);
  const bool tokens = verbosity == Verbosity::Tokens;

  std::vector<Hint> out;
  for (Clause c : kAllClauses) {
    const auto& s = sub[c];
    const auto& r = ref[c];
    const std::string title = clause_title(c);
    if (s.empty() && r.empty()) continue;
    if (s.empty()) {
      out.push_back(make(Category::C2, c, HintKind::Missing, {}, {},
                         "The " + title + " clause is missing"));
      continue;
    }
    if (r.empty()) {
      out.push_back(make(Category::C2, c, HintKind::Extra, {}, {},
                         "The " + title + " clause is not needed"));
      continue;
    }
    std::map<Node, int> balance;
    for (const auto& n : r) ++balance[n];
    for (const auto& n : s) --balance[n];
    std::vector<Node> missing, extra;
    {
      auto left = balance;
      for (const auto& n : r)
        if (left[n] > 0) {
          missing.push_back(n);
          --left[n];
        }
      left = balance;
      for (const auto& n : s)
        if (left[n] < 0) {
          extra.push_back(n);
          ++left[n];
        }
    }
    if (missing.empty() && extra.empty()) {
      if (s != r)
        out.push_back(make(Category::C3, c, HintKind::Ordering, {}, {},
                           title + ": the elements appear in a different order"));
      continue;
    }
    std::vector<bool> paired(extra.size(), false);
    for (const auto& m : missing) {
      std::size_t j = 0;
      while (j < extra.size() && (paired[j] || extra[j].first != m.first)) ++j;
      std::string expected = tokens ? m.second : std::string();
      if (j < extra.size()) {
        paired[j] = true;
        std::string msg = title + ": " + kind_word(m.first) + " " + extra[j].second +
                          " does not match the expected " + kind_word(m.first);
        if (tokens) msg += " " + m.second;
        out.push_back(make(category_of(m.first), c, HintKind::Mismatch, extra[j].second,
                           expected, msg));
      } else {
        const std::string word = kind_word(m.first);
        std::string msg = title + (word[0] == 'a' ? ": an " : ": a ") + word + " is missing";
        if (tokens) msg += " (" + m.second + ")";
        out.push_back(make(category_of(m.first), c, HintKind::Missing, {}, expected, msg));
      }
    }
    for (std::size_t j = 0; j < extra.size(); ++j) {
      if (paired[j]) continue;
      out.push_back(make(category_of(extra[j].first), c, HintKind::Extra, extra[j].second, {},
                         title + ": " + kind_word(extra[j].first) + " " + extra[j].second +
                             " is not needed"));
    }
  }
  order_and_cap(out, out.size());
  return out;
}

std::vector<Hint> style_hints(const std::vector<StyleHint>& hints) {
  std::vector<Hint> out;
  for (const auto& h : hints)
    out.push_back(make(Category::Style, h.clause, HintKind::Improvement, rule_code(h.rule), {},
                       h.message));
  return out;
}

void order_and_cap(std::vector<Hint>& hints, std::size_t cap) {
  std::stable_sort(hints.begin(), hints.end(), [](const Hint& a, const Hint& b) {
    if (a.category != b.category) return a.category < b.category;
    return a.clause < b.clause;
  });
  if (hints.size() > cap) hints.resize(cap);
}

std::string note_summary(const DistanceBreakdown& d, const Query& submission,
                         const Query& reference) {
  if (d.zero()) return {};
  std::set<Clause> cs, cr;
  clause_set(submission, cs);
  clause_set(reference, cr);
  std::size_t absent = 0;
  for (Clause c : cr)
    if (!cs.count(c)) ++absent;
  if (absent >= 2) return std::string(kNoteMissingClauses);
  if (d.at(Clause::Select).c1 > 0 || d.at(Clause::Where).c1 > 0)
    return std::string(kNoteDifferentAttributes);
  if (cs.count(Clause::OrderBy) && !cr.count(Clause::OrderBy))
    return std::string(kNoteAdditionalOrderBy);

  double best = -1;
  std::string phrase;
  for (std::size_t i = 0; i < kDistanceClauses.size(); ++i) {
    const auto& c = d.clauses[i];
    const std::pair<double, const char*> parts[] = {
        {d.weights.w1 * static_cast<double>(c.c1), "objects"},
        {d.weights.w2 * static_cast<double>(c.c2), "structure"},
        {d.weights.w3 * static_cast<double>(c.c3), "order"}};
    for (const auto& [value, word] : parts)
      if (value > best && value > 0) {
        best = value;
        phrase = std::string("Different ") + word + " in " + lower_clause(kDistanceClauses[i]);
      }
  }
  return phrase;
}

std::vector<Hint> unknown_column_hints(const Query& submission, const SchemaDef& schema) {
  std::vector<Hint> out;
  if (schema.empty()) return out;
  Query copy = submission;
  for_each_column(copy, schema, [&](ColumnVisit& v) {
    if (v.select_alias || v.scope.resolve(*v.column)) return;
    const auto& select = v.scope.query().select;
    if (v.column->qualifier.empty() &&
        std::any_of(select.begin(), select.end(),
                    [&](const SelectItem& s) { return s.alias == v.column->name; }))
      return;
    const std::string token = to_sql(*v.column);
    out.push_back(make(Category::C1, v.clause, HintKind::Extra, token, {},
                       clause_title(v.clause) + ": attribute " + token +
                           " does not exist in the schema"));
  });
  return out;
}

}  // namespace sqltutor
