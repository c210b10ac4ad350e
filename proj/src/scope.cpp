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


#include "sqltutor/scope.hpp"

#include <algorithm>

namespace sqltutor {

Scope::Scope(const Query& query, const SchemaDef& schema, const Scope* parent)
    : query_(&query), schema_(&schema), parent_(parent) {
  if (!query.from) return;
  for (const FromNode* leaf : leaf_sources(*query.from)) {
    SourceInfo info;
    info.node = leaf;
    info.exposed = leaf->exposed_name();
    if (leaf->kind == FromKind::Table) {
      info.table = leaf->name;
      if (const TableDef* t = schema.find_table(leaf->name)) {
        for (const auto& c : t->columns) info.columns.push_back(c.name);
        info.columns_known = true;
      }
    } else if (auto cols = output_columns(*leaf->subquery, schema)) {
      info.columns = std::move(*cols);
      info.columns_known = true;
    }
    sources_.push_back(std::move(info));
  }
}

std::optional<std::size_t> Scope::find_exposed(const std::string& name) const {
  for (std::size_t i = 0; i < sources_.size(); ++i)
    if (sources_[i].exposed == name) return i;
  return std::nullopt;
}

std::optional<Scope::Binding> Scope::resolve(const ScalarExpr& column) const {
  for (const Scope* s = this; s != nullptr; s = s->parent_) {
    if (!column.qualifier.empty()) {
      if (auto i = s->find_exposed(column.qualifier)) return Binding{s, *i};
      continue;
    }
    std::vector<std::size_t> hits;
    std::size_t unknown = 0;
    for (std::size_t i = 0; i < s->sources_.size(); ++i) {
      const auto& src = s->sources_[i];
      if (!src.columns_known) {
        ++unknown;
        continue;
      }
      if (std::find(src.columns.begin(), src.columns.end(), column.name) !=
          src.columns.end())
        hits.push_back(i);
    }
    if (hits.size() == 1 && unknown == 0) return Binding{s, hits.front()};
    if (hits.size() > 1) return std::nullopt;
    if (hits.empty() && unknown == 1 && s->sources_.size() == 1)
      return Binding{s, 0};
    if (unknown > 0) return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::vector<std::string>> output_columns(const Query& query,
                                                       const SchemaDef& schema) {
  std::vector<std::string> out;
  const Scope scope(query, schema, nullptr);
  for (const auto& item : query.select) {
    if (!item.alias.empty()) {
      out.push_back(item.alias);
      continue;
    }
    switch (item.expr.kind) {
      case ExprKind::Column:
        out.push_back(item.expr.name);
        break;
      case ExprKind::Star:
        for (const auto& src : scope.sources()) {
          if (!item.expr.qualifier.empty() && src.exposed != item.expr.qualifier)
            continue;
          if (!src.columns_known) return std::nullopt;
          out.insert(out.end(), src.columns.begin(), src.columns.end());
        }
        break;
      default:
        out.push_back(to_sql(item.expr));
        break;
    }
  }
  return out;
}

namespace {

class ColumnWalker {
 public:
  ColumnWalker(const SchemaDef& schema, const std::function<void(ColumnVisit&)>& fn)
      : schema_(schema), fn_(fn) {}

  void query(Query& q, const Scope* parent, int depth) {
    // Derived tables do not see their sibling sources.
    if (q.from) derived(*q.from, parent, depth);
    const Scope scope(q, schema_, parent);
    if (q.from) join_conditions(*q.from, scope, depth);
    for (auto& item : q.select) expr(item.expr, scope, Clause::Select, depth, nullptr);
    if (q.where) cond(*q.where, scope, Clause::Where, depth);
    for (auto& g : q.group_by) expr(g, scope, Clause::GroupBy, depth, nullptr);
    if (q.having) cond(*q.having, scope, Clause::Having, depth);
    for (auto& o : q.order_by) expr(o.expr, scope, Clause::OrderBy, depth, &q);
  }

 private:
  const SchemaDef& schema_;
  const std::function<void(ColumnVisit&)>& fn_;

  void derived(FromNode& n, const Scope* parent, int depth) {
    if (n.kind == FromKind::Derived) query(*n.subquery, parent, depth + 1);
    for (auto& op : n.operands) derived(op, parent, depth);
  }

  void join_conditions(FromNode& n, const Scope& scope, int depth) {
    for (auto& op : n.operands) join_conditions(op, scope, depth);
    if (n.condition) cond(*n.condition, scope, Clause::From, depth);
  }

  void cond(BoolExpr& b, const Scope& scope, Clause clause, int depth) {
    if (b.kind == BoolKind::Atom) {
      for (auto& a : b.atom.args) expr(a, scope, clause, depth, nullptr);
      return;
    }
    for (auto& c : b.children) cond(c, scope, clause, depth);
  }

  void expr(ScalarExpr& e, const Scope& scope, Clause clause, int depth,
            const Query* order_owner) {
    switch (e.kind) {
      case ExprKind::Column: {
        bool alias_ref = false;
        if (order_owner && e.qualifier.empty()) {
          alias_ref = std::any_of(
              order_owner->select.begin(), order_owner->select.end(),
              [&](const SelectItem& s) { return s.alias == e.name; });
        }
        ColumnVisit v{&e, scope, clause, alias_ref, depth};
        fn_(v);
        return;
      }
      case ExprKind::Subquery:
        query(*e.subquery, &scope, depth + 1);
        return;
      default:
        for (auto& a : e.args) expr(a, scope, clause, depth, nullptr);
        return;
    }
  }
};

}  // namespace

void for_each_column(Query& query, const SchemaDef& schema,
                     const std::function<void(ColumnVisit&)>& fn) {
  ColumnWalker(schema, fn).query(query, nullptr, 0);
}

}  // namespace sqltutor
