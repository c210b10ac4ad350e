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


#include "sqltutor/harmonizer.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "sqltutor/errors.hpp"
#include "sqltutor/scope.hpp"

namespace sqltutor {

namespace {

constexpr std::array<RuleInfo, kRuleCount> kCatalog{{
    {1, "R01", "Different aliases", false, "always"},
    {2, "R02", "No aliases (if possible)", false,
     "no table appears twice in the scope and dropping the alias captures no reference"},
    {3, "R03", "No ORDER BY in the reference solution", false,
     "outermost query, output order not required, no LIMIT"},
    {4, "R04", "= versus IN with a one-element set", false,
     "IN list with one item, or IN subquery returning a single aggregate value"},
    {5, "R05", "ORDER BY and LIMIT 1 to realize MIN/MAX", false,
     "single selected column equal to the only ORDER BY key, LIMIT 1, no grouping; "
     "an ascending key must be NOT NULL in the schema"},
    {6, "R06", "SELECT * instead of individual attributes", false,
     "columns of every starred source are known"},
    {7, "R07", "Normalize conditions in CNF and push NOT to predicates", false,
     "CNF stays within the literal cap"},
    {8, "R08", "Ignore order of projection attributes", false,
     "outermost query, output order not required"},
    {9, "R09", "x <= z AND z <= y instead of z BETWEEN x AND y", false, "always"},
    {10, "R10", "Separate conditions instead of a chained comparison", false, "always"},
    {11, "R11", "> n and >= n+1 are interchangeable on integers", false,
     "integer-valued left operand and integer literal; needs schema types"},
    {12, "R12", "Rounding integers is not necessary", true,
     "argument is integer-valued and digits are a non-negative literal"},
    {13, "R13", "CAST not necessary if the type is already correct", true,
     "cast target equals the schema type of the column"},
    {14, "R14", "JOIN operator instead of WHERE for table relationships", false,
     "comma join with an equality between columns of both sides; toggleable"},
    {15, "R15", "DISTINCT instead of GROUP BY without aggregation", false,
     "no aggregate, no HAVING, grouped set equals selected set"},
    {16, "R16", "ISNULL(x) and x IS NULL are equivalent", false, "always"},
    {17, "R17", "Conditions in HAVING moved to WHERE", false,
     "no GROUP BY and no aggregate in the query"},
    {18, "R18", "LEFT JOIN instead of RIGHT JOIN", false, "always"},
}};

// --- generic traversal -------------------------------------------------------

using ExprFn = std::function<void(ScalarExpr&, Clause)>;
using CondFn = std::function<void(BoolExpr&, Clause)>;

void join_conditions(FromNode& n, const CondFn& fn) {
  for (auto& op : n.operands) join_conditions(op, fn);
  if (n.condition) fn(*n.condition, Clause::From);
}

void for_each_condition(Query& q, const CondFn& fn) {
  if (q.from) join_conditions(*q.from, fn);
  if (q.where) fn(*q.where, Clause::Where);
  if (q.having) fn(*q.having, Clause::Having);
}

void atom_args(BoolExpr& b, Clause c, const ExprFn& fn) {
  if (b.kind == BoolKind::Atom) {
    for (auto& a : b.atom.args) fn(a, c);
    return;
  }
  for (auto& ch : b.children) atom_args(ch, c, fn);
}

// Top-level expression slots of one query, in textual order.
void for_each_slot(Query& q, const ExprFn& fn) {
  for (auto& item : q.select) fn(item.expr, Clause::Select);
  if (q.from) join_conditions(*q.from, [&](BoolExpr& b, Clause c) { atom_args(b, c, fn); });
  if (q.where) atom_args(*q.where, Clause::Where, fn);
  for (auto& g : q.group_by) fn(g, Clause::GroupBy);
  if (q.having) atom_args(*q.having, Clause::Having, fn);
  for (auto& o : q.order_by) fn(o.expr, Clause::OrderBy);
}

// Pre-order over an expression, not entering subqueries.
void walk(ScalarExpr& e, const std::function<void(ScalarExpr&)>& fn) {
  fn(e);
  if (e.kind == ExprKind::Subquery) return;
  for (auto& a : e.args) walk(a, fn);
}

// Post-order rewrite; fn returns true when it replaced the node.
bool rewrite_post(ScalarExpr& e, const std::function<bool(ScalarExpr&)>& fn) {
  bool changed = false;
  if (e.kind != ExprKind::Subquery)
    for (auto& a : e.args) changed = rewrite_post(a, fn) || changed;
  return fn(e) || changed;
}

struct Child {
  Query* query;
  std::string suffix;
  bool derived;
};

std::vector<Child> children(Query& q) {
  std::vector<Child> out;
  std::map<Clause, int> counters;
  auto add_expr = [&](ScalarExpr& top, Clause c) {
    walk(top, [&](ScalarExpr& e) {
      if (e.kind != ExprKind::Subquery) return;
      int k = counters[c]++;
      out.push_back({e.subquery.get(),
                     "/" + std::string(clause_name(c)) + "[" + std::to_string(k) + "]",
                     false});
    });
  };
  for (auto& item : q.select) add_expr(item.expr, Clause::Select);
  if (q.from) {
    auto leaves = leaf_sources(*q.from);
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (leaves[i]->kind == FromKind::Derived)
        out.push_back({leaves[i]->subquery.get(), "/from[" + std::to_string(i) + "]", true});
    join_conditions(*q.from, [&](BoolExpr& b, Clause c) { atom_args(b, c, add_expr); });
  }
  if (q.where) atom_args(*q.where, Clause::Where, add_expr);
  for (auto& g : q.group_by) add_expr(g, Clause::GroupBy);
  if (q.having) atom_args(*q.having, Clause::Having, add_expr);
  for (auto& o : q.order_by) add_expr(o.expr, Clause::OrderBy);
  return out;
}

// Boolean rewrite of atoms; fn returns a replacement or nullopt.
bool rewrite_atoms(BoolExpr& b,
                   const std::function<std::optional<BoolExpr>(const Predicate&)>& fn) {
  if (b.kind == BoolKind::Atom) {
    auto r = fn(b.atom);
    if (!r) return false;
    b = std::move(*r);
    return true;
  }
  bool changed = false;
  for (auto& c : b.children) changed = rewrite_atoms(c, fn) || changed;
  if (changed && (b.kind == BoolKind::And || b.kind == BoolKind::Or)) {
    auto kids = std::move(b.children);
    b = b.kind == BoolKind::And ? BoolExpr::make_and(std::move(kids))
                                : BoolExpr::make_or(std::move(kids));
  }
  return changed;
}

BoolExpr atom(PredOp op, std::vector<ScalarExpr> args) {
  Predicate p;
  p.op = op;
  p.args = std::move(args);
  return BoolExpr::make_atom(std::move(p));
}

// --- qualifier renaming ------------------------------------------------------

bool exposes(const Query& q, const std::string& name) {
  if (!q.from) return false;
  for (const FromNode* leaf : leaf_sources(*q.from))
    if (leaf->exposed_name() == name) return true;
  return false;
}

void own_qualified(Query& q, const std::function<void(ScalarExpr&)>& fn) {
  for_each_slot(q, [&](ScalarExpr& top, Clause) {
    walk(top, [&](ScalarExpr& e) {
      if (e.kind == ExprKind::Column || e.kind == ExprKind::Star) fn(e);
    });
  });
}

// References to `name` from q or its correlated subqueries that bind outside
// any scope exposing `name` below q.
bool references_qualifier(Query& q, const std::string& name) {
  bool found = false;
  own_qualified(q, [&](ScalarExpr& e) { found = found || e.qualifier == name; });
  if (found) return true;
  for (auto& ch : children(q)) {
    if (ch.derived || exposes(*ch.query, name)) continue;
    if (references_qualifier(*ch.query, name)) return true;
  }
  return false;
}

// Renames qualifier `from` to `to` for references bound to q's source
// `from`. Returns false, without the guarantee of a partial rename being
// harmless, when some nested scope would capture the new name; callers
// dry-run first.
bool rename_refs(Query& q, const std::string& from, const std::string& to, bool apply) {
  bool ok = true;
  if (apply)
    own_qualified(q, [&](ScalarExpr& e) {
      if (e.qualifier == from) e.qualifier = to;
    });
  for (auto& ch : children(q)) {
    if (ch.derived || exposes(*ch.query, from)) continue;
    if (exposes(*ch.query, to)) {
      if (references_qualifier(*ch.query, from)) ok = false;
      continue;
    }
    ok = rename_refs(*ch.query, from, to, apply) && ok;
  }
  return ok;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return !std::isdigit(static_cast<unsigned char>(s.front()));
}

std::optional<std::int64_t> integer_value(const ScalarExpr& e) {
  if (e.kind != ExprKind::Literal || e.literal != LiteralKind::Integer) return std::nullopt;
  try {
    std::size_t used = 0;
    long long v = std::stoll(e.name, &used);
    if (used != e.name.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

ScalarExpr integer_literal(std::int64_t v) { return ScalarExpr::integer(v); }

// --- the engine ---------------------------------------------------------------

class Harmonizer {
 public:
  Harmonizer(const SchemaDef& schema, const HarmonizeOptions& options)
      : schema_(schema), opt_(options) {}

  CanonicalQuery run(const Query& input) {
    CanonicalQuery out;
    out.tree = input;
    for (std::size_t pass = 0;; ++pass) {
      if (pass == opt_.max_passes)
        throw FixedPointNotReached("harmonization did not converge within " +
                                   std::to_string(opt_.max_passes) + " passes");
      bool changed = false;
      for (int r = 1; r <= kRuleCount; ++r)
        if (opt_.rule_enabled(r) && apply(r, out.tree)) changed = true;
      if (!changed) break;
    }
    out.applied = std::move(applied_);
    out.hints = std::move(hints_);
    return out;
  }

 private:
  using LocalRule =
      std::function<bool(Query&, const Scope* parent, const std::string& path, bool top)>;

  const SchemaDef& schema_;
  const HarmonizeOptions& opt_;
  std::vector<AppliedRule> applied_;
  std::vector<StyleHint> hints_;

  void visit(Query& q, const Scope* parent, const std::string& path, bool top,
             int rule, const LocalRule& fn, bool& changed) {
    auto kids = children(q);
    for (auto& ch : kids)
      if (ch.derived) visit(*ch.query, parent, path + ch.suffix, false, rule, fn, changed);
    {
      const Scope scope(q, schema_, parent);
      for (auto& ch : kids)
        if (!ch.derived) visit(*ch.query, &scope, path + ch.suffix, false, rule, fn, changed);
    }
    if (fn(q, parent, path, top)) {
      applied_.push_back({rule, path});
      changed = true;
    }
  }

  bool apply(int rule, Query& root) {
    if (rule == 1) return rename_aliases(root);
    bool changed = false;
    LocalRule fn;
    switch (rule) {
      case 2: fn = [this](Query& q, const Scope* p, const std::string&, bool) { return r02(q, p); }; break;
      case 3: fn = [this](Query& q, const Scope*, const std::string&, bool top) { return r03(q, top); }; break;
      case 4: fn = [](Query& q, const Scope*, const std::string&, bool) { return r04(q); }; break;
      case 5: fn = [this](Query& q, const Scope* p, const std::string&, bool) { return r05(q, p); }; break;
      case 6: fn = [this](Query& q, const Scope* p, const std::string&, bool) { return r06(q, p); }; break;
      case 7: fn = [this](Query& q, const Scope*, const std::string&, bool) { return r07(q); }; break;
      case 8: fn = [this](Query& q, const Scope*, const std::string&, bool top) { return r08(q, top); }; break;
      case 9: fn = [](Query& q, const Scope*, const std::string&, bool) { return r09(q); }; break;
      case 10: fn = [](Query& q, const Scope*, const std::string&, bool) { return r10(q); }; break;
      case 11: fn = [this](Query& q, const Scope* p, const std::string&, bool) { return r11(q, p); }; break;
      case 12: fn = [this](Query& q, const Scope* p, const std::string& path, bool) { return r12(q, p, path); }; break;
      case 13: fn = [this](Query& q, const Scope* p, const std::string& path, bool) { return r13(q, p, path); }; break;
      case 14: fn = [this](Query& q, const Scope* p, const std::string&, bool) { return r14(q, p); }; break;
      case 15: fn = [](Query& q, const Scope*, const std::string&, bool) { return r15(q); }; break;
      case 16: fn = [](Query& q, const Scope*, const std::string&, bool) { return r16(q); }; break;
      case 17: fn = [](Query& q, const Scope*, const std::string&, bool) { return r17(q); }; break;
      case 18: fn = [](Query& q, const Scope*, const std::string&, bool) { return r18(q); }; break;
      default: return false;
    }
    visit(root, nullptr, "$", true, rule, fn, changed);
    return changed;
  }

  // R01 ---------------------------------------------------------------------

  struct AliasSite {
    Query* owner;
    FromNode* node;
    std::string path;
  };

  static void collect_tables(Query& q, std::set<std::string>& names) {
    if (q.from)
      for (FromNode* leaf : leaf_sources(*q.from))
        if (leaf->kind == FromKind::Table) names.insert(leaf->name);
    for (auto& ch : children(q)) collect_tables(*ch.query, names);
  }

  static void collect_sites(Query& q, const std::string& path, std::vector<AliasSite>& sites,
                            std::vector<std::pair<Query*, std::string>>& queries) {
    queries.emplace_back(&q, path);
    auto kids = children(q);
    std::size_t k = 0;
    // select-list subqueries come first in the text
    for (; k < kids.size() && !kids[k].derived &&
           kids[k].suffix.rfind("/select", 0) == 0;
         ++k)
      collect_sites(*kids[k].query, path + kids[k].suffix, sites, queries);
    if (q.from) {
      auto leaves = leaf_sources(*q.from);
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        FromNode* leaf = leaves[i];
        if (leaf->kind == FromKind::Derived)
          collect_sites(*leaf->subquery, path + "/from[" + std::to_string(i) + "]", sites,
                        queries);
        if (!leaf->alias.empty()) sites.push_back({&q, leaf, path});
      }
    }
    for (; k < kids.size(); ++k)
      if (!kids[k].derived) collect_sites(*kids[k].query, path + kids[k].suffix, sites, queries);
  }

  bool rename_aliases(Query& root) {
    std::set<std::string> tables;
    collect_tables(root, tables);
    std::vector<AliasSite> sites;
    std::vector<std::pair<Query*, std::string>> queries;
    collect_sites(root, "$", sites, queries);

    std::set<std::string> fired;
    std::vector<std::string> targets;
    int counter = 1;
    bool needed = false;
    for (auto& s : sites) {
      std::string name;
      do name = "t" + std::to_string(counter++);
      while (tables.count(name));
      if (s.node->alias != name) needed = true;
      targets.push_back(name);
    }
    if (needed) {
      for (std::size_t i = 0; i < sites.size(); ++i) {
        std::string tmp = "__alias" + std::to_string(i);
        std::string old = sites[i].node->alias;
        sites[i].node->alias = tmp;
        rename_refs(*sites[i].owner, old, tmp, true);
        if (old != targets[i]) fired.insert(sites[i].path);
      }
      for (std::size_t i = 0; i < sites.size(); ++i) {
        std::string tmp = sites[i].node->alias;
        sites[i].node->alias = targets[i];
        rename_refs(*sites[i].owner, tmp, targets[i], true);
      }
    }

    // Select-list aliases become c1, c2, ... by position.
    std::map<std::pair<const FromNode*, std::string>, std::string> derived_renames;
    std::map<std::pair<const Query*, std::string>, std::string> order_renames;
    std::map<const Query*, std::string> paths;
    for (auto& [q, path] : queries) paths[q] = path;
    std::map<const Query*, const FromNode*> derived_of;
    for (auto& [q, path] : queries) {
      (void)path;
      if (!q->from) continue;
      for (const FromNode* leaf : leaf_sources(*q->from))
        if (leaf->kind == FromKind::Derived) derived_of[leaf->subquery.get()] = leaf;
    }
    std::vector<std::pair<SelectItem*, std::string>> item_renames;
    for (auto& [q, path] : queries) {
      for (std::size_t i = 0; i < q->select.size(); ++i) {
        auto& item = q->select[i];
        std::string target = "c" + std::to_string(i + 1);
        if (item.alias.empty() || item.alias == target) continue;
        item_renames.emplace_back(&item, target);
        order_renames[{q, item.alias}] = target;
        if (auto it = derived_of.find(q); it != derived_of.end())
          derived_renames[{it->second, item.alias}] = target;
        fired.insert(path);
      }
    }
    if (!item_renames.empty()) {
      std::vector<std::pair<ScalarExpr*, std::string>> refs;
      for_each_column(root, schema_, [&](ColumnVisit& v) {
        if (v.select_alias) {
          auto it = order_renames.find({&v.scope.query(), v.column->name});
          if (it != order_renames.end()) refs.emplace_back(v.column, it->second);
          return;
        }
        auto b = v.scope.resolve(*v.column);
        if (!b || b->info().node == nullptr) return;
        auto it = derived_renames.find({b->info().node, v.column->name});
        if (it != derived_renames.end()) refs.emplace_back(v.column, it->second);
      });
      for (auto& [item, name] : item_renames) item->alias = name;
      for (auto& [col, name] : refs) col->name = name;
    }
    for (const auto& path : fired) applied_.push_back({1, path});
    return !fired.empty();
  }

  // R02 ---------------------------------------------------------------------

  bool r02(Query& q, const Scope* parent) {
    bool changed = false;
    if (q.from) {
      auto leaves = leaf_sources(*q.from);
      std::map<std::string, int> uses;
      for (FromNode* leaf : leaves)
        if (leaf->kind == FromKind::Table) ++uses[leaf->name];
      for (FromNode* leaf : leaves) {
        if (leaf->kind != FromKind::Table || leaf->alias.empty()) continue;
        if (uses[leaf->name] != 1) continue;
        bool clash = std::any_of(leaves.begin(), leaves.end(), [&](FromNode* o) {
          return o != leaf && o->exposed_name() == leaf->name;
        });
        if (clash || references_qualifier(q, leaf->name)) continue;
        const std::string old = leaf->alias;
        if (!rename_refs(q, old, leaf->name, false)) continue;
        leaf->alias.clear();
        rename_refs(q, old, leaf->name, true);
        changed = true;
      }
    }
    const Scope scope(q, schema_, parent);
    std::set<std::string> aliases;
    for (auto& item : q.select)
      if (!item.alias.empty()) aliases.insert(item.alias);
    for_each_slot(q, [&](ScalarExpr& top, Clause clause) {
      walk(top, [&](ScalarExpr& e) {
        if (e.kind != ExprKind::Column || !e.qualifier.empty()) return;
        if (clause == Clause::OrderBy && aliases.count(e.name) && &e == &top) return;
        auto b = scope.resolve(e);
        if (!b) return;
        const std::string& name = b->info().exposed;
        for (const Scope* s = &scope; s != b->scope; s = s->parent())
          if (s->find_exposed(name)) return;
        e.qualifier = name;
        changed = true;
      });
    });
    return changed;
  }

  // R03 ---------------------------------------------------------------------

  bool r03(Query& q, bool top) const {
    bool changed = false;
    for (auto& o : q.order_by)
      if (o.explicit_asc) {
        o.explicit_asc = false;
        changed = true;
      }
    if (top && !opt_.output_order_required && !q.limit && !q.order_by.empty()) {
      q.order_by.clear();
      changed = true;
    }
    return changed;
  }

  // R04 ---------------------------------------------------------------------

  static bool single_value(const Query& sub) {
    return sub.group_by.empty() && sub.select.size() == 1 &&
           sub.select.front().expr.is_aggregate_call();
  }

  static bool r04(Query& q) {
    bool changed = false;
    for_each_condition(q, [&](BoolExpr& b, Clause) {
      changed = rewrite_atoms(b, [](const Predicate& p) -> std::optional<BoolExpr> {
                  if (p.op != PredOp::In || p.args.size() != 2) return std::nullopt;
                  const ScalarExpr& item = p.args[1];
                  if (item.kind == ExprKind::Subquery && !single_value(*item.subquery))
                    return std::nullopt;
                  return atom(PredOp::Eq, p.args);
                }) || changed;
    });
    return changed;
  }

  // R05 ---------------------------------------------------------------------

  // An ascending key only qualifies when the column cannot hold NULL: NULL
  // sorts first, while MIN skips it.
  bool r05(Query& q, const Scope* parent) const {
    if (q.limit != 1 || q.select.size() != 1 || q.order_by.size() != 1 || q.distinct ||
        !q.group_by.empty() || q.having)
      return false;
    SelectItem& item = q.select.front();
    if (!item.expr.is_column()) return false;
    const OrderItem& key = q.order_by.front();
    bool same = key.expr == item.expr ||
                (!item.alias.empty() && key.expr.is_column() && key.expr.qualifier.empty() &&
                 key.expr.name == item.alias);
    if (!same) return false;
    if (!key.descending) {
      const Scope scope(q, schema_, parent);
      auto b = scope.resolve(item.expr);
      if (!b || b->info().table.empty() ||
          !schema_.column_not_null(b->info().table, item.expr.name))
        return false;
    }
    item.expr = ScalarExpr::function(key.descending ? "MAX" : "MIN", {item.expr});
    q.order_by.clear();
    q.limit.reset();
    return true;
  }

  // R06 ---------------------------------------------------------------------

  bool r06(Query& q, const Scope* parent) const {
    bool any_star = std::any_of(q.select.begin(), q.select.end(), [](const SelectItem& s) {
      return s.expr.kind == ExprKind::Star;
    });
    if (!any_star || !q.from) return false;
    const Scope scope(q, schema_, parent);
    std::vector<SelectItem> out;
    bool changed = false;
    for (auto& item : q.select) {
      if (item.expr.kind != ExprKind::Star) {
        out.push_back(item);
        continue;
      }
      std::vector<SelectItem> expansion;
      bool ok = true;
      bool matched = false;
      for (const auto& src : scope.sources()) {
        if (!item.expr.qualifier.empty() && src.exposed != item.expr.qualifier) continue;
        matched = true;
        if (!src.columns_known) {
          ok = false;
          break;
        }
        for (const auto& c : src.columns) {
          if (!is_identifier(c)) {
            ok = false;
            break;
          }
          expansion.push_back({ScalarExpr::column(src.exposed, c), {}});
        }
        if (!ok) break;
      }
      if (!ok || !matched || expansion.empty()) {
        out.push_back(item);
        continue;
      }
      out.insert(out.end(), expansion.begin(), expansion.end());
      changed = true;
    }
    if (changed) q.select = std::move(out);
    return changed;
  }

  // R07 ---------------------------------------------------------------------

  bool r07(Query& q) const {
    bool changed = false;
    for_each_condition(q, [&](BoolExpr& b, Clause) {
      try {
        BoolExpr normal = from_cnf(to_cnf(b, opt_.atom_cap));
        if (!(normal == b)) {
          b = std::move(normal);
          changed = true;
        }
      } catch (const CnfBlowup&) {
      }
    });
    return changed;
  }

  // R08 ---------------------------------------------------------------------

  bool r08(Query& q, bool top) const {
    if (!top || opt_.output_order_required) return false;
    bool changed = false;
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (std::size_t i = 0; i < q.select.size(); ++i)
      keys.emplace_back(to_sql(q.select[i].expr), i);
    std::stable_sort(keys.begin(), keys.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<SelectItem> sorted;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i].second != i) changed = true;
      sorted.push_back(std::move(q.select[keys[i].second]));
    }
    q.select = std::move(sorted);
    if (!q.limit && !q.order_by.empty()) {
      q.order_by.clear();
      changed = true;
    }
    return changed;
  }

  // R09, R10 ----------------------------------------------------------------

  static bool r09(Query& q) {
    bool changed = false;
    for_each_condition(q, [&](BoolExpr& b, Clause) {
      changed = rewrite_atoms(b, [](const Predicate& p) -> std::optional<BoolExpr> {
                  if (p.op != PredOp::Between) return std::nullopt;
                  return BoolExpr::make_and({atom(PredOp::Le, {p.args[1], p.args[0]}),
                                             atom(PredOp::Le, {p.args[0], p.args[2]})});
                }) || changed;
    });
    return changed;
  }

  static bool r10(Query& q) {
    bool changed = false;
    for_each_condition(q, [&](BoolExpr& b, Clause) {
      changed = rewrite_atoms(b, [](const Predicate& p) -> std::optional<BoolExpr> {
                  if (p.op != PredOp::Chain) return std::nullopt;
                  std::vector<BoolExpr> parts;
                  for (std::size_t i = 0; i < p.chain.size(); ++i)
                    parts.push_back(atom(p.chain[i], {p.args[i], p.args[i + 1]}));
                  return BoolExpr::make_and(std::move(parts));
                }) || changed;
    });
    return changed;
  }

  // Type helpers --------------------------------------------------------------

  std::optional<ColumnType> column_type(const ScalarExpr& col, const Scope& scope) const {
    auto b = scope.resolve(col);
    if (!b || b->info().table.empty()) return std::nullopt;
    return schema_.column_type(b->info().table, col.name);
  }

  bool integer_valued(const ScalarExpr& e, const Scope& scope) const {
    switch (e.kind) {
      case ExprKind::Literal:
        return e.literal == LiteralKind::Integer;
      case ExprKind::Column:
        return column_type(e, scope) == ColumnType::Integer;
      case ExprKind::Function:
        if (e.name == "COUNT") return true;
        if (e.name == "SUM" || e.name == "MIN" || e.name == "MAX" || e.name == "ABS")
          return e.args.size() == 1 && integer_valued(e.args[0], scope);
        if (e.name == "CAST")
          return column_type_from_decl(e.cast_type) == ColumnType::Integer;
        return false;
      case ExprKind::Binary:
        if (e.name != "+" && e.name != "-" && e.name != "*" && e.name != "%") return false;
        return integer_valued(e.args[0], scope) && integer_valued(e.args[1], scope);
      case ExprKind::Unary:
        return integer_valued(e.args[0], scope);
      case ExprKind::Subquery: {
        // Scalar subquery; no row gives NULL, which compares the same way
        // before and after the rewrite.
        const Query& sub = *e.subquery;
        if (sub.select.size() != 1) return false;
        const Scope inner(sub, schema_, &scope);
        return integer_valued(sub.select[0].expr, inner);
      }
      default:
        return false;
    }
  }

  // R11 ---------------------------------------------------------------------

  bool r11(Query& q, const Scope* parent) const {
    if (schema_.empty()) return false;
    const Scope scope(q, schema_, parent);
    bool changed = false;
    for_each_condition(q, [&](BoolExpr& b, Clause) {
      changed = rewrite_atoms(b, [&](const Predicate& p) -> std::optional<BoolExpr> {
                  if ((p.op != PredOp::Ge && p.op != PredOp::Le) || p.args.size() != 2)
                    return std::nullopt;
                  auto c = integer_value(p.args[1]);
                  if (!c || !integer_valued(p.args[0], scope) ||
                      p.args[0].kind == ExprKind::Literal)
                    return std::nullopt;
                  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
                  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
                  if (p.op == PredOp::Ge) {
                    if (*c == lo) return std::nullopt;
                    return atom(PredOp::Gt, {p.args[0], integer_literal(*c - 1)});
                  }
                  if (*c == hi) return std::nullopt;
                  return atom(PredOp::Lt, {p.args[0], integer_literal(*c + 1)});
                }) || changed;
    });
    return changed;
  }

  // R12, R13 ----------------------------------------------------------------

  bool drop_function(Query& q, const Scope* parent, const std::string& path, int rule,
                     const std::function<bool(const ScalarExpr&, const Scope&)>& guard,
                     const std::string& message) {
    const Scope scope(q, schema_, parent);
    bool changed = false;
    for_each_slot(q, [&](ScalarExpr& top, Clause clause) {
      bool here = rewrite_post(top, [&](ScalarExpr& e) {
        if (!guard(e, scope)) return false;
        ScalarExpr inner = std::move(e.args[0]);
        e = std::move(inner);
        return true;
      });
      if (here) {
        hints_.push_back({rule, clause, path, message});
        changed = true;
      }
    });
    return changed;
  }

  bool r12(Query& q, const Scope* parent, const std::string& path) {
    return drop_function(
        q, parent, path, 12,
        [this](const ScalarExpr& e, const Scope& scope) {
          if (e.kind != ExprKind::Function || e.name != "ROUND") return false;
          if (e.args.empty() || e.args.size() > 2) return false;
          if (e.args.size() == 2) {
            auto digits = integer_value(e.args[1]);
            if (!digits || *digits < 0) return false;
          }
          return integer_valued(e.args[0], scope);
        },
        "ROUND is not necessary: the value is already an integer");
  }

  bool r13(Query& q, const Scope* parent, const std::string& path) {
    if (schema_.empty()) return false;
    return drop_function(
        q, parent, path, 13,
        [this](const ScalarExpr& e, const Scope& scope) {
          if (e.kind != ExprKind::Function || e.name != "CAST" || e.args.size() != 1)
            return false;
          if (!e.args[0].is_column()) return false;
          auto t = column_type(e.args[0], scope);
          return t && *t == column_type_from_decl(e.cast_type);
        },
        "CAST is not necessary: the column already has this type");
  }

  // R14 ---------------------------------------------------------------------

  bool r14(Query& q, const Scope* parent) const {
    if (!q.from || !q.where || q.from->kind != FromKind::Join) return false;
    const Scope scope(q, schema_, parent);
    std::vector<BoolExpr> conjuncts;
    if (q.where->kind == BoolKind::And)
      conjuncts = q.where->children;
    else
      conjuncts.push_back(*q.where);
    std::vector<bool> used(conjuncts.size(), false);

    auto side_of = [&](const ScalarExpr& e, const std::vector<FromNode*>& leaves) {
      if (!e.is_column()) return false;
      auto b = scope.resolve(e);
      if (!b || b->scope != &scope) return false;
      return std::find(leaves.begin(), leaves.end(), b->info().node) != leaves.end();
    };

    bool changed = false;
    std::function<void(FromNode&)> fix = [&](FromNode& n) {
      for (auto& op : n.operands) fix(op);
      if (n.kind != FromKind::Join || n.join != JoinKind::Comma) return;
      auto left = leaf_sources(n.operands[0]);
      auto right = leaf_sources(n.operands[1]);
      std::vector<BoolExpr> picked;
      for (std::size_t i = 0; i < conjuncts.size(); ++i) {
        if (used[i] || conjuncts[i].kind != BoolKind::Atom) continue;
        const Predicate& p = conjuncts[i].atom;
        if (p.op != PredOp::Eq || p.args.size() != 2) continue;
        bool link = (side_of(p.args[0], left) && side_of(p.args[1], right)) ||
                    (side_of(p.args[0], right) && side_of(p.args[1], left));
        if (!link) continue;
        used[i] = true;
        picked.push_back(conjuncts[i]);
      }
      if (picked.empty()) return;
      n.join = JoinKind::Inner;
      n.condition = BoolExpr::make_and(std::move(picked));
      changed = true;
    };
    fix(*q.from);
    if (!changed) return false;
    std::vector<BoolExpr> rest;
    for (std::size_t i = 0; i < conjuncts.size(); ++i)
      if (!used[i]) rest.push_back(std::move(conjuncts[i]));
    if (rest.empty())
      q.where.reset();
    else
      q.where = BoolExpr::make_and(std::move(rest));
    return true;
  }

  // R15 ---------------------------------------------------------------------

  static bool r15(Query& q) {
    if (q.group_by.empty() || q.having || q.distinct) return false;
    std::set<std::string> selected, grouped;
    for (const auto& item : q.select) {
      if (item.expr.kind == ExprKind::Star || contains_aggregate(item.expr)) return false;
      selected.insert(to_sql(item.expr));
    }
    for (const auto& o : q.order_by)
      if (contains_aggregate(o.expr)) return false;
    for (const auto& g : q.group_by) grouped.insert(to_sql(g));
    if (selected != grouped) return false;
    q.distinct = true;
    q.group_by.clear();
    return true;
  }

  // R16 ---------------------------------------------------------------------

  static bool r16(Query& q) {
    bool changed = false;
    for_each_condition(q, [&](BoolExpr& b, Clause) {
      changed = rewrite_atoms(b, [](const Predicate& p) -> std::optional<BoolExpr> {
                  if (p.op != PredOp::Truth || p.args.size() != 1) return std::nullopt;
                  const ScalarExpr& f = p.args[0];
                  if (f.kind != ExprKind::Function || f.name != "ISNULL" || f.args.size() != 1)
                    return std::nullopt;
                  return atom(PredOp::IsNull, {f.args[0]});
                }) || changed;
    });
    return changed;
  }

  // R17 ---------------------------------------------------------------------

  static bool r17(Query& q) {
    if (!q.having || !q.group_by.empty() || contains_aggregate(*q.having)) return false;
    for (const auto& item : q.select)
      if (contains_aggregate(item.expr)) return false;
    for (const auto& o : q.order_by)
      if (contains_aggregate(o.expr)) return false;
    if (q.where)
      q.where = BoolExpr::make_and({std::move(*q.where), std::move(*q.having)});
    else
      q.where = std::move(*q.having);
    q.having.reset();
    return true;
  }

  // R18 ---------------------------------------------------------------------

  static bool swap_right(FromNode& n) {
    bool changed = false;
    for (auto& op : n.operands) changed = swap_right(op) || changed;
    if (n.kind == FromKind::Join && n.join == JoinKind::Right) {
      n.join = JoinKind::Left;
      std::swap(n.operands[0], n.operands[1]);
      changed = true;
    }
    return changed;
  }

  static bool r18(Query& q) { return q.from && swap_right(*q.from); }
};

}  // namespace

const std::array<RuleInfo, kRuleCount>& rule_catalog() { return kCatalog; }

std::string rule_code(int id) { return std::string(kCatalog.at(static_cast<std::size_t>(id - 1)).code); }

CanonicalQuery harmonize(const Query& query, const SchemaDef& schema,
                         const HarmonizeOptions& options) {
  return Harmonizer(schema, options).run(query);
}

}  // namespace sqltutor
