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


#include "sqltutor/join_oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

#include "sqltutor/errors.hpp"
#include "sqltutor/scope.hpp"

namespace sqltutor {

namespace {

constexpr std::size_t kRowBudget = 2'000'000;

std::string key_of(const FromNode& leaf) {
  if (leaf.kind == FromKind::Table) return leaf.name;
  return "(subquery)";
}

void atoms_of(const BoolExpr& b, std::vector<const Predicate*>& out) {
  if (b.kind == BoolKind::Atom) {
    out.push_back(&b.atom);
    return;
  }
  for (const auto& c : b.children) atoms_of(c, out);
}

void columns_of(const ScalarExpr& e, std::vector<const ScalarExpr*>& out) {
  if (e.kind == ExprKind::Column) out.push_back(&e);
  if (e.kind == ExprKind::Subquery) return;
  for (const auto& a : e.args) columns_of(a, out);
}

class Adjuster {
 public:
  Adjuster(const Scope& scope, const std::vector<std::string>& keys)
      : scope_(scope), keys_(keys) {}

  FromNode adjust(const FromNode& n) {
    if (n.kind != FromKind::Join) {
      auto it = std::find(keys_.begin(), keys_.end(), key_of(n));
      if (it == keys_.end()) throw UnmappableCondition("source missing from key order");
      int idx = static_cast<int>(it - keys_.begin());
      int occ = occurrences_[idx]++;
      std::string name = synthetic_table_name(idx);
      std::string alias = occ == 0 ? std::string() : name + std::to_string(occ + 1);
      FromNode leaf = FromNode::table(name, alias);
      exposed_[&n] = leaf.exposed_name();
      return leaf;
    }
    FromNode lhs = adjust(n.operands[0]);
    FromNode rhs = adjust(n.operands[1]);
    std::optional<BoolExpr> cond;
    if (n.condition) {
      auto left = leaf_sources(n.operands[0]);
      auto right = leaf_sources(n.operands[1]);
      std::set<std::pair<std::string, std::string>> pairs;
      std::vector<const Predicate*> atoms;
      atoms_of(*n.condition, atoms);
      for (const Predicate* p : atoms) {
        std::vector<const ScalarExpr*> cols;
        for (const auto& a : p->args) columns_of(a, cols);
        std::vector<std::string> l, r;
        for (const ScalarExpr* c : cols) {
          auto b = scope_.resolve(*c);
          if (!b || b->scope != &scope_) continue;
          const FromNode* src = b->info().node;
          if (std::find(left.begin(), left.end(), src) != left.end())
            l.push_back(exposed_.at(src));
          else if (std::find(right.begin(), right.end(), src) != right.end())
            r.push_back(exposed_.at(src));
        }
        for (const auto& x : l)
          for (const auto& y : r) pairs.insert({x, y});
      }
      if (pairs.empty())
        throw UnmappableCondition("join condition links no pair of tables: " +
                                  to_sql(*n.condition));
      std::vector<BoolExpr> eqs;
      for (const auto& [x, y] : pairs) {
        Predicate p;
        p.op = PredOp::Eq;
        p.args = {ScalarExpr::column(x, "x"), ScalarExpr::column(y, "x")};
        eqs.push_back(BoolExpr::make_atom(std::move(p)));
      }
      cond = BoolExpr::make_and(std::move(eqs));
    } else if (n.join == JoinKind::Inner || n.join == JoinKind::Left ||
               n.join == JoinKind::Right) {
      throw UnmappableCondition("join without condition");
    }
    return FromNode::joined(n.join, std::move(lhs), std::move(rhs), std::move(cond));
  }

 private:
  const Scope& scope_;
  const std::vector<std::string>& keys_;
  std::map<int, int> occurrences_;
  std::map<const FromNode*, std::string> exposed_;
};

struct Relation {
  std::vector<std::pair<int, int>> cols;  // (table, occurrence)
  std::vector<std::string> names;         // exposed names, parallel to cols
  std::vector<std::vector<std::int64_t>> rows;
};

class Evaluator {
 public:
  explicit Evaluator(const SyntheticJoinDb& db) : db_(db) {}

  Relation eval(const FromNode& n) const {
    if (n.kind != FromKind::Join) {
      int table = n.name.empty() ? -1 : n.name[0] - 'a';
      if (n.kind != FromKind::Table || n.name.size() != 1 || table < 0 || table >= db_.n)
        throw UnmappableCondition("not a synthetic table: " + to_sql(n));
      int occ = n.alias.empty() ? 0 : std::stoi(n.alias.substr(1)) - 1;
      Relation r;
      r.cols.push_back({table, occ});
      r.names.push_back(n.exposed_name());
      for (auto v : db_.tables[static_cast<std::size_t>(table)]) r.rows.push_back({v});
      return r;
    }
    Relation l = eval(n.operands[0]);
    Relation r = eval(n.operands[1]);
    Relation out;
    out.cols = l.cols;
    out.cols.insert(out.cols.end(), r.cols.begin(), r.cols.end());
    out.names = l.names;
    out.names.insert(out.names.end(), r.names.begin(), r.names.end());

    auto emit = [&](const std::vector<std::int64_t>* a, const std::vector<std::int64_t>* b) {
      if (out.rows.size() >= kRowBudget)
        throw UnmappableCondition("synthetic join result exceeds the row budget");
      std::vector<std::int64_t> row;
      row.reserve(out.cols.size());
      if (a) row.insert(row.end(), a->begin(), a->end());
      else row.insert(row.end(), l.cols.size(), 0);
      if (b) row.insert(row.end(), b->begin(), b->end());
      else row.insert(row.end(), r.cols.size(), 0);
      out.rows.push_back(std::move(row));
    };

    if (!n.condition) {
      for (const auto& a : l.rows)
        for (const auto& b : r.rows) emit(&a, &b);
      return out;
    }
    std::vector<std::pair<std::size_t, std::size_t>> eqs;
    std::vector<const Predicate*> atoms;
    atoms_of(*n.condition, atoms);
    auto index = [](const Relation& rel, const std::string& name) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < rel.names.size(); ++i)
        if (rel.names[i] == name) return i;
      return std::nullopt;
    };
    for (const Predicate* p : atoms) {
      const auto& x = p->args.at(0).qualifier;
      const auto& y = p->args.at(1).qualifier;
      auto lx = index(l, x), ry = index(r, y);
      if (!lx || !ry) {
        lx = index(l, y);
        ry = index(r, x);
      }
      if (!lx || !ry) throw UnmappableCondition("condition does not straddle the join");
      eqs.emplace_back(*lx, *ry);
    }
    std::unordered_multimap<std::int64_t, std::size_t> hash;
    for (std::size_t j = 0; j < r.rows.size(); ++j) {
      auto v = r.rows[j][eqs.front().second];
      if (v != 0) hash.emplace(v, j);
    }
    std::vector<bool> right_matched(r.rows.size(), false);
    for (const auto& a : l.rows) {
      bool matched = false;
      auto v = a[eqs.front().first];
      if (v != 0) {
        auto [lo, hi] = hash.equal_range(v);
        std::vector<std::size_t> hits;
        for (auto it = lo; it != hi; ++it) hits.push_back(it->second);
        std::sort(hits.begin(), hits.end());
        for (std::size_t j : hits) {
          const auto& b = r.rows[j];
          bool ok = std::all_of(eqs.begin(), eqs.end(), [&](const auto& e) {
            return a[e.first] != 0 && a[e.first] == b[e.second];
          });
          if (!ok) continue;
          matched = true;
          right_matched[j] = true;
          emit(&a, &b);
        }
      }
      if (!matched && n.join == JoinKind::Left) emit(&a, nullptr);
    }
    if (n.join == JoinKind::Right)
      for (std::size_t j = 0; j < r.rows.size(); ++j)
        if (!right_matched[j]) emit(nullptr, &r.rows[j]);
    return out;
  }

 private:
  const SyntheticJoinDb& db_;
};

}  // namespace

SyntheticJoinDb build_synthetic_db(int n) {
  if (n < 1 || n > kMaxSyntheticTables)
    throw TooManyTables("synthetic join database supports 1 to 16 tables, got " +
                        std::to_string(n));
  SyntheticJoinDb db;
  db.n = n;
  db.tables.resize(static_cast<std::size_t>(n));
  const std::int64_t top = (std::int64_t{1} << n) - 1;
  for (std::int64_t v = 1; v <= top; ++v)
    for (int i = 0; i < n; ++i)
      if (v & (std::int64_t{1} << i)) db.tables[static_cast<std::size_t>(i)].push_back(v);
  return db;
}

std::string synthetic_table_name(int i) { return std::string(1, static_cast<char>('a' + i)); }

std::vector<std::string> source_keys(const FromNode& from) {
  std::vector<std::string> keys;
  for (const FromNode* leaf : leaf_sources(from)) {
    std::string k = key_of(*leaf);
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(std::move(k));
  }
  return keys;
}

Query adjust_query(const FromNode& from, const std::vector<std::string>& key_order,
                   const SchemaDef& schema) {
  if (key_order.size() > static_cast<std::size_t>(kMaxSyntheticTables))
    throw TooManyTables("join oracle supports at most 16 tables, got " +
                        std::to_string(key_order.size()));
  Query wrapper;
  wrapper.from = from;
  const Scope scope(wrapper, schema, nullptr);
  Adjuster adjuster(scope, key_order);
  Query out;
  out.select.push_back({ScalarExpr::star(), {}});
  out.from = adjuster.adjust(*wrapper.from);
  return out;
}

Query adjust_query(const FromNode& from, const SchemaDef& schema) {
  return adjust_query(from, source_keys(from), schema);
}

std::vector<JoinRow> run_adjusted(const Query& adjusted, const SyntheticJoinDb& db) {
  if (!adjusted.from) return {};
  Relation rel = Evaluator(db).eval(*adjusted.from);
  std::vector<std::size_t> order(rel.cols.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rel.cols[a] < rel.cols[b]; });
  std::vector<JoinRow> rows;
  rows.reserve(rel.rows.size());
  for (const auto& r : rel.rows) {
    JoinRow row;
    for (std::size_t i : order) row.push_back({rel.cols[i].first, rel.cols[i].second, r[i]});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t join_distance(const FromNode& a, const FromNode& b, const SchemaDef& schema) {
  std::vector<std::string> keys = source_keys(a);
  for (auto& k : source_keys(b))
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  if (keys.size() > static_cast<std::size_t>(kMaxSyntheticTables))
    throw TooManyTables("join oracle supports at most 16 tables, got " +
                        std::to_string(keys.size()));
  const SyntheticJoinDb db = build_synthetic_db(static_cast<int>(keys.size()));
  auto ra = run_adjusted(adjust_query(a, keys, schema), db);
  auto rb = run_adjusted(adjust_query(b, keys, schema), db);
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  std::size_t i = 0, j = 0, diff = 0;
  while (i < ra.size() && j < rb.size()) {
    if (ra[i] == rb[j]) {
      ++i;
      ++j;
    } else if (ra[i] < rb[j]) {
      ++i;
      ++diff;
    } else {
      ++j;
      ++diff;
    }
  }
  return diff + (ra.size() - i) + (rb.size() - j);
}

}  // namespace sqltutor
