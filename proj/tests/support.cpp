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


#include "support.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sqltutor::testing {

namespace {

struct ColumnInfo {
  const char* name;
  bool numeric;
};

struct TableInfo {
  const char* name;
  std::vector<ColumnInfo> columns;
};

const std::vector<TableInfo>& company_tables() {
  static const std::vector<TableInfo> tables = {
      {"customers", {{"customer_id", true}, {"name", false}, {"city", false}}},
      {"orders", {{"order_id", true}, {"customer_id", true}, {"invoice", true}}},
      {"divisions", {{"id", true}, {"name", false}}},
      {"employees",
       {{"employee_id", true},
        {"first_name", false},
        {"last_name", false},
        {"name", false},
        {"salary", true},
        {"division", false},
        {"age", true},
        {"div_id", true}}},
  };
  return tables;
}

const TableInfo& table_info(const std::string& name) {
  for (const auto& t : company_tables())
    if (name == t.name) return t;
  throw std::logic_error("unknown table " + name);
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

std::string random_company_seed(std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  const std::vector<std::string> divisions = {"Sales", "Marketing", "IT", "Legal"};
  const std::vector<std::string> first = {"Ann", "Bob", "Cy", "Dee", "Eve", "Fay"};
  const std::vector<std::string> last = {"Lee", "Kim", "Diaz", "Park", "Stone"};
  const std::vector<std::string> cities = {"York", "New York", "London", "Leeds"};
  std::ostringstream out;
  for (int i = 1; i <= 4; ++i)
    out << "INSERT INTO divisions VALUES (" << i << ", " << quote(divisions[pick(4)]) << ");\n";
  for (int i = 1; i <= 5; ++i)
    out << "INSERT INTO customers VALUES (" << i << ", " << quote(first[pick(6)]) << ", "
        << (pick(5) == 0 ? std::string("NULL") : quote(cities[pick(4)])) << ");\n";
  for (int i = 1; i <= 8; ++i)
    out << "INSERT INTO orders VALUES (" << i << ", "
        << (pick(6) == 0 ? std::string("NULL") : std::to_string(1 + pick(5))) << ", "
        << (pick(6) == 0 ? std::string("NULL") : std::to_string(100 * (1 + pick(30)))) << ");\n";
  for (int i = 1; i <= 12; ++i) {
    const std::string f = first[pick(6)], l = last[pick(5)];
    out << "INSERT INTO employees VALUES (" << i << ", " << quote(f) << ", " << quote(l) << ", "
        << quote(f + " " + l) << ", " << (pick(3) == 0 ? 520 + pick(3) : 40000 + 1000 * pick(35))
        << ", " << (pick(5) == 0 ? std::string("NULL") : quote(divisions[pick(4)])) << ", "
        << (pick(5) == 0 ? std::string("NULL") : std::to_string(20 + pick(30))) << ", "
        << (pick(5) == 0 ? std::string("NULL") : std::to_string(1 + pick(4))) << ");\n";
  }
  return out.str();
}

const std::vector<RulePair>& rule_pairs() {
  static const std::vector<RulePair> pairs = {
      {1, "SELECT c.* FROM customers c INNER JOIN orders o ON c.customer_id = o.customer_id;",
       "SELECT cu.* FROM customers cu INNER JOIN orders ord ON cu.customer_id = ord.customer_id;"},
      {2, "SELECT c.* FROM customers c JOIN orders o ON c.customer_id = o.customer_id;",
       "SELECT customers.* FROM customers JOIN orders ON customers.customer_id = orders.customer_id;"},
      {3, "SELECT * FROM customers ORDER BY customer_id;",
       "SELECT * FROM customers ORDER BY customer_id ASC;"},
      {4, "SELECT * FROM employees WHERE salary = (SELECT MIN(salary) FROM employees);",
       "SELECT * FROM employees WHERE salary IN (SELECT MIN(salary) FROM employees);"},
      {5, "SELECT MIN(salary) FROM employees;",
       "SELECT salary FROM employees ORDER BY salary LIMIT 1;"},
      {6, "SELECT * FROM employees;",
       "SELECT employee_id, first_name, last_name, name, salary, division, age, div_id FROM "
       "employees;"},
      {7,
       "SELECT * FROM employees WHERE ((salary > 50000 AND division = 'Marketing') OR (salary > "
       "50000 AND division = 'Sales')) AND employee_id NOT IN (1, 2, 3);",
       "SELECT * FROM employees WHERE salary > 50000 AND (division = 'Sales' OR division = "
       "'Marketing') AND NOT employee_id IN (1, 2, 3);"},
      {8, "SELECT last_name, first_name FROM employees ORDER BY last_name;",
       "SELECT first_name, last_name FROM employees;"},
      {9, "SELECT * FROM employees WHERE 50000 <= salary AND salary <= 70000;",
       "SELECT * FROM employees WHERE salary BETWEEN 50000 AND 70000;"},
      {10, "SELECT * FROM employees WHERE salary > 50000 AND salary < 70000;",
       "SELECT * FROM employees WHERE 50000 < salary < 70000;"},
      {11, "SELECT * FROM employees WHERE salary > 520;",
       "SELECT * FROM employees WHERE salary >= 521;"},
      {12, "SELECT COUNT(*) FROM orders WHERE invoice > 1000;",
       "SELECT ROUND(COUNT(*), 2) FROM orders WHERE invoice > 1000;"},
      {13, "SELECT * FROM employees WHERE age < 30;",
       "SELECT * FROM employees WHERE CAST(age as Integer) < 30;"},
      {14, "SELECT * FROM orders JOIN customers on orders.customer_id = customers.customer_id;",
       "SELECT * FROM orders, customers WHERE orders.customer_id = customers.customer_id;"},
      {15, "SELECT DISTINCT name FROM employees;", "SELECT name FROM employees GROUP BY name;"},
      {16, "SELECT * FROM employees WHERE isnull(salary);",
       "SELECT * FROM employees WHERE salary IS NULL;"},
      {17, "SELECT * FROM employees WHERE division = 'Sales' AND salary > 50000;",
       "SELECT * FROM employees HAVING division = 'Sales' AND salary > 50000;"},
      {18, "SELECT * FROM employees LEFT JOIN divisions ON employees.div_id = divisions.id;",
       "SELECT * FROM divisions RIGHT JOIN employees ON divisions.id = employees.div_id;"},
  };
  return pairs;
}

const std::vector<std::vector<std::string>>& toward_subquery_sequences() {
  static const std::vector<std::vector<std::string>> seqs = {
      {"SELECT name FROM customers",
       "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders)",
       "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders WHERE "
       "invoice > 100)",
       kSubqueryReference},
      {"SELECT name, city FROM customers WHERE customer_id IN (SELECT customer_id FROM orders)",
       "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders)",
       "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders WHERE "
       "invoice > 1000)"},
      {"SELECT city FROM customers WHERE customer_id IN (SELECT order_id FROM orders WHERE "
       "invoice > 1000)",
       "SELECT name FROM customers WHERE customer_id IN (SELECT order_id FROM orders WHERE "
       "invoice > 1000)",
       "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders WHERE "
       "invoice > 1000)"},
      {"SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders WHERE "
       "invoice < 1000)",
       "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders WHERE "
       "invoice >= 1000)",
       "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders WHERE "
       "invoice > 1000)"},
  };
  return seqs;
}

const std::vector<std::vector<std::string>>& four_solution_classes() {
  static const std::vector<std::vector<std::string>> classes = {
      {kSubqueryReference,
       "select name from customers where customer_id in (select customer_id from orders where "
       "1000 < invoice);",
       "SELECT c.name FROM customers c WHERE c.customer_id IN (SELECT o.customer_id FROM orders o "
       "WHERE o.invoice >= 1001)"},
      {"SELECT name FROM customers c WHERE EXISTS (SELECT * FROM orders o WHERE o.customer_id = "
       "c.customer_id AND o.invoice > 1000)",
       "SELECT name FROM customers c WHERE EXISTS (SELECT * FROM orders o WHERE o.invoice > 1000 "
       "AND c.customer_id = o.customer_id)",
       "SELECT cu.name FROM customers cu WHERE EXISTS (SELECT * FROM orders WHERE "
       "orders.customer_id = cu.customer_id AND orders.invoice >= 1001)"},
      {"SELECT c.name FROM customers c WHERE (SELECT MAX(o.invoice) FROM orders o WHERE "
       "o.customer_id = c.customer_id) > 1000",
       "SELECT name FROM customers WHERE (SELECT MAX(invoice) FROM orders WHERE "
       "orders.customer_id = customers.customer_id) >= 1001"},
      {"SELECT c.name FROM customers c JOIN orders o ON c.customer_id = o.customer_id WHERE "
       "o.invoice > 1000 GROUP BY c.customer_id, c.name",
       "SELECT customers.name FROM orders JOIN customers ON orders.customer_id = "
       "customers.customer_id WHERE 1000 < orders.invoice GROUP BY customers.customer_id, "
       "customers.name"},
  };
  return classes;
}

const std::vector<std::string>& wrong_attempts() {
  static const std::vector<std::string> wrong = {
      "SELECT name FROM customers",
      "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders)",
      "SELECT DISTINCT c.name FROM customers c JOIN orders o ON c.customer_id = o.customer_id "
      "WHERE o.invoice > 500",
      "SELECT name FROM customer",
      "SELECT nme FROM customers WHERE city = 'York'",
      "DELETE FROM orders",
  };
  return wrong;
}

std::string fifty_submission_log(const std::string& task_id) {
  std::mt19937 rng(kSeed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<std::string> lecturer_twins = {
      kJoinReference,
      "SELECT DISTINCT customers.name FROM orders, customers WHERE orders.customer_id = "
      "customers.customer_id AND orders.invoice > 1000"};
  std::string out;
  for (int i = 0; i < 50; ++i) {
    std::string sql;
    const std::size_t r = pick(10);
    if (r < 6) {
      const auto& cls = four_solution_classes()[pick(4)];
      sql = cls[pick(cls.size())];
    } else if (r < 7) {
      sql = lecturer_twins[pick(lecturer_twins.size())];
    } else {
      sql = wrong_attempts()[pick(wrong_attempts().size())];
    }
    char ts[32];
    std::snprintf(ts, sizeof ts, "2026-03-01T10:%02d:00Z", i);
    out += std::string(ts) + "\ts" + std::to_string(1 + pick(8)) + "\t" + task_id + "\t\t" + sql + "\n";
  }
  return out;
}

// --- SqlGenerator -------------------------------------------------------------

std::string SqlGenerator::next() {
  depth_ = 0;
  return query(true);
}

std::string SqlGenerator::literal_for(const std::string& col, bool numeric) {
  if (numeric) {
    static const std::vector<std::pair<std::string, std::vector<int>>> pools = {
        {"salary", {520, 521, 45000, 50000, 52000, 61000, 70000}},
        {"age", {22, 25, 29, 30, 35, 41}},
        {"invoice", {500, 900, 1000, 1500, 2500}},
    };
    for (const auto& [name, values] : pools)
      if (col == name) return std::to_string(values[pick(static_cast<int>(values.size()))]);
    return std::to_string(1 + pick(4));
  }
  static const std::vector<std::pair<std::string, std::vector<std::string>>> pools = {
      {"division", {"Sales", "Marketing", "IT"}},
      {"city", {"York", "New York", "London"}},
      {"name", {"Sales", "Ann Lee", "Alice", "IT"}},
      {"first_name", {"Ann", "Bob", "Eve"}},
      {"last_name", {"Lee", "Kim", "Park"}},
  };
  for (const auto& [name, values] : pools)
    if (col == name) return quote(values[pick(static_cast<int>(values.size()))]);
  return quote("x");
}

std::string SqlGenerator::column(const std::vector<Source>& sources, bool* numeric) {
  const Source& s = sources[pick(static_cast<int>(sources.size()))];
  const TableInfo& t = table_info(s.table);
  const ColumnInfo& c = t.columns[pick(static_cast<int>(t.columns.size()))];
  if (numeric) *numeric = c.numeric;
  const bool qualify = sources.size() > 1 || s.name != s.table || chance(40);
  return qualify ? s.name + "." + c.name : std::string(c.name);
}

std::string SqlGenerator::predicate(const std::vector<Source>& sources) {
  bool numeric = false;
  std::string col = column(sources, &numeric);
  const std::string bare = col.substr(col.find('.') + 1);
  static const char* ops[] = {"=", "<>", "<", "<=", ">", ">="};
  switch (pick(12)) {
    case 0:
    case 1:
      return col + " " + ops[pick(6)] + " " + literal_for(bare, numeric);
    case 2:
      return literal_for(bare, numeric) + " " + ops[pick(6)] + " " + col;
    case 3: {
      std::string lo = literal_for(bare, numeric), hi = literal_for(bare, numeric);
      return col + (chance(25) ? " NOT" : "") + " BETWEEN " + lo + " AND " + hi;
    }
    case 4: {
      std::string items = literal_for(bare, numeric);
      for (int n = pick(3); n > 0; --n) items += ", " + literal_for(bare, numeric);
      return col + (chance(25) ? " NOT IN (" : " IN (") + items + ")";
    }
    case 5:
      if (numeric) return literal_for(bare, true) + " < " + col + " < " + literal_for(bare, true);
      return col + (chance(25) ? " NOT LIKE " : " LIKE ") + quote(std::string(1, "ASML"[pick(4)]) + "%");
    case 6:
      return col + (chance(50) ? " IS NULL" : " IS NOT NULL");
    case 7:
      return "ISNULL(" + col + ")";
    case 8:
      if (depth_ < 2) {
        ++depth_;
        std::string sub = "SELECT MIN(salary) FROM employees";
        if (chance(50)) sub = "SELECT MAX(invoice) FROM orders";
        --depth_;
        return col + " " + ops[pick(6)] + " (" + sub + ")";
      }
      return col + " = " + literal_for(bare, numeric);
    case 9:
      if (depth_ < 2) {
        ++depth_;
        std::string sub = query(false);
        --depth_;
        return (chance(50) ? "EXISTS (" : "NOT EXISTS (") + sub + ")";
      }
      return col + " <> " + literal_for(bare, numeric);
    case 10:
      return col + " IN (" + literal_for(bare, numeric) + ")";
    default:
      if (depth_ < 2) {
        ++depth_;
        std::string sub = chance(50) ? "SELECT id FROM divisions WHERE name = 'Sales'"
                                     : "SELECT customer_id FROM orders WHERE invoice > 1000";
        --depth_;
        return col + (chance(30) ? " NOT IN (" : " IN (") + sub + ")";
      }
      return col + " IS NOT NULL";
  }
}

std::string SqlGenerator::condition(const std::vector<Source>& sources, int budget) {
  if (budget <= 1 || chance(30)) {
    std::string p = predicate(sources);
    return chance(15) ? "NOT (" + p + ")" : p;
  }
  const int left = 1 + pick(budget - 1);
  const std::string op = chance(50) ? " AND " : " OR ";
  std::string text = condition(sources, left) + op + condition(sources, budget - left);
  return chance(50) ? "(" + text + ")" : text;
}

std::string SqlGenerator::query(bool allow_limit) {
  std::vector<Source> sources;
  std::string from;
  std::string link;
  auto alias = [&](const std::string& table, const std::string& a) {
    const bool use = chance(50);
    sources.push_back({table, use ? a : table});
    return use ? table + " " + a : table;
  };
  static const char* joins[] = {"JOIN", "INNER JOIN", "LEFT JOIN", "RIGHT JOIN"};
  switch (pick(depth_ == 0 ? 5 : 3)) {
    case 0: {
      static const char* tables[] = {"customers", "orders", "divisions", "employees"};
      std::string t = tables[pick(4)];
      from = alias(t, t.substr(0, 1) + std::to_string(depth_));
      break;
    }
    case 1: {
      std::string a = alias("employees", "e" + std::to_string(depth_));
      std::string b = alias("divisions", "d" + std::to_string(depth_));
      from = a + " " + joins[pick(4)] + " " + b + " ON " + sources[0].name + ".div_id = " +
             sources[1].name + ".id";
      break;
    }
    case 2: {
      std::string a = alias("orders", "o" + std::to_string(depth_));
      std::string b = alias("customers", "c" + std::to_string(depth_));
      from = a + " " + joins[pick(4)] + " " + b + " ON " + sources[0].name +
             ".customer_id = " + sources[1].name + ".customer_id";
      break;
    }
    case 3: {
      std::string a = alias("orders", "o" + std::to_string(depth_));
      std::string b = alias("customers", "c" + std::to_string(depth_));
      from = a + ", " + b;
      link = sources[0].name + ".customer_id = " + sources[1].name + ".customer_id";
      break;
    }
    default: {
      // Derived table exposing a subset of employee columns under their names.
      ++depth_;
      std::string inner = "SELECT * FROM employees";
      if (chance(60)) inner += " WHERE " + condition({{"employees", "employees"}}, 2);
      --depth_;
      from = "(" + inner + ") AS dt";
      sources.push_back({"employees", "dt"});
      break;
    }
  }

  std::string select;
  std::vector<std::string> group_by;
  std::string having;
  std::vector<std::string> orderable;
  const bool grouped = chance(20);
  if (grouped) {
    std::string g = column(sources);
    bool numeric = false;
    std::string target = column(sources, &numeric);
    static const char* aggs[] = {"SUM", "MIN", "MAX", "AVG"};
    std::string agg = numeric && chance(70) ? std::string(aggs[pick(4)]) + "(" + target + ")"
                                            : std::string("COUNT(*)");
    select = g + ", " + agg;
    group_by.push_back(g);
    orderable = {g};
    if (chance(40)) having = "COUNT(*) > " + std::to_string(pick(3));
  } else if (chance(15)) {
    select = "*";
  } else {
    const int n = 1 + pick(3);
    for (int i = 0; i < n; ++i) {
      bool numeric = false;
      std::string c = column(sources, &numeric);
      std::string item = c;
      if (numeric && chance(10)) item = "ROUND(" + c + ", " + std::to_string(pick(3)) + ")";
      else if (numeric && chance(10)) item = "CAST(" + c + " AS INTEGER)";
      else if (numeric && chance(10)) item = c + " + " + std::to_string(1 + pick(9));
      orderable.push_back(item);
      if (chance(15)) item += " AS c" + std::to_string(i + 1);
      select += (i ? ", " : "") + item;
    }
    if (chance(10)) select = "DISTINCT " + select;
  }

  std::string sql = "SELECT " + select + " FROM " + from;
  std::string where;
  if (chance(65)) where = condition(sources, 1 + pick(3));
  if (!link.empty()) where = where.empty() ? link : link + " AND (" + where + ")";
  if (!where.empty()) sql += " WHERE " + where;
  if (!group_by.empty()) sql += " GROUP BY " + group_by.front();
  if (!having.empty()) sql += " HAVING " + having;
  if (depth_ == 0 && chance(30) && !orderable.empty()) {
    static const char* dirs[] = {"", " ASC", " DESC"};
    sql += " ORDER BY " + orderable[pick(static_cast<int>(orderable.size()))] + dirs[pick(3)];
    if (allow_limit && chance(30)) sql += " LIMIT " + std::to_string(1 + pick(3));
  }
  return sql;
}

// --- FormulaGenerator ------------------------------------------------------------

BoolExpr FormulaGenerator::next(int max_atoms) {
  const int atoms = 1 + std::uniform_int_distribution<int>(0, max_atoms - 1)(rng_);
  return build(0, atoms);
}

BoolExpr FormulaGenerator::build(int depth, int atoms) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); };
  if (depth >= 4 || (depth > 0 && pick(3) == 0)) {
    // Non-constant comparisons of p<i> in {0, 1} against 0 or 1.
    static const std::pair<PredOp, int> forms[] = {
        {PredOp::Eq, 0}, {PredOp::Eq, 1}, {PredOp::Ne, 0}, {PredOp::Ne, 1},
        {PredOp::Lt, 1}, {PredOp::Le, 0}, {PredOp::Gt, 0}, {PredOp::Ge, 1}};
    const auto& [op, value] = forms[pick(8)];
    Predicate p;
    p.op = op;
    ScalarExpr col = ScalarExpr::column("", "p" + std::to_string(pick(atoms)));
    if (pick(4) == 0) {
      p.op = flip_comparison(op);
      p.args = {ScalarExpr::integer(value), col};
    } else {
      p.args = {col, ScalarExpr::integer(value)};
    }
    BoolExpr atom = BoolExpr::make_atom(std::move(p));
    return pick(5) == 0 ? BoolExpr::make_not(std::move(atom)) : atom;
  }
  switch (pick(3)) {
    case 0:
      return BoolExpr::make_not(build(depth + 1, atoms));
    case 1:
      return BoolExpr::make_and({build(depth + 1, atoms), build(depth + 1, atoms)});
    default:
      return BoolExpr::make_or(
          {build(depth + 1, atoms), build(depth + 1, atoms), build(depth + 1, atoms)});
  }
}

namespace {

std::int64_t operand(const ScalarExpr& e, unsigned valuation) {
  if (e.kind == ExprKind::Column && e.name.size() > 1 && e.name[0] == 'p')
    return (valuation >> std::stoi(e.name.substr(1))) & 1u;
  if (e.kind == ExprKind::Literal && e.literal == LiteralKind::Integer) return std::stoll(e.name);
  if (e.kind == ExprKind::Unary && e.name == "-" && e.args.size() == 1)
    return -operand(e.args[0], valuation);
  throw std::logic_error("unexpected operand " + to_sql(e));
}

}  // namespace

bool evaluate(const BoolExpr& e, unsigned valuation) {
  switch (e.kind) {
    case BoolKind::And:
      for (const auto& c : e.children)
        if (!evaluate(c, valuation)) return false;
      return true;
    case BoolKind::Or:
      for (const auto& c : e.children)
        if (evaluate(c, valuation)) return true;
      return false;
    case BoolKind::Not:
      return !evaluate(e.children.at(0), valuation);
    case BoolKind::Atom:
      break;
  }
  const Predicate& p = e.atom;
  if (p.args.size() != 2) throw std::logic_error("unexpected atom " + to_sql(p));
  const std::int64_t l = operand(p.args[0], valuation), r = operand(p.args[1], valuation);
  switch (p.op) {
    case PredOp::Eq: return l == r;
    case PredOp::Ne: return l != r;
    case PredOp::Lt: return l < r;
    case PredOp::Le: return l <= r;
    case PredOp::Gt: return l > r;
    case PredOp::Ge: return l >= r;
    default: throw std::logic_error("unexpected operator in " + to_sql(p));
  }
}

}  // namespace sqltutor::testing
