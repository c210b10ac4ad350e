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


// Shared fixtures and seeded generators for the test suites.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sqltutor/ast.hpp"

namespace sqltutor::testing {

inline constexpr std::uint32_t kSeed = 20260101;

// Company schema used by the rule examples. salary is NOT NULL so that the
// ORDER BY ... LIMIT 1 example qualifies for the MIN rewrite.
inline const std::string kCompanyDdl = R"(
CREATE TABLE customers (customer_id INTEGER PRIMARY KEY, name TEXT, city TEXT);
CREATE TABLE orders (order_id INTEGER PRIMARY KEY,
                     customer_id INTEGER REFERENCES customers(customer_id),
                     invoice INTEGER);
CREATE TABLE divisions (id INTEGER PRIMARY KEY, name TEXT);
CREATE TABLE employees (employee_id INTEGER PRIMARY KEY, first_name TEXT, last_name TEXT,
                        name TEXT, salary INTEGER NOT NULL, division TEXT, age INTEGER,
                        div_id INTEGER REFERENCES divisions(id));
)";

inline const std::string kCompanySeed = R"(
INSERT INTO customers VALUES (1, 'Alice', 'York'), (2, 'Bob', 'London'), (3, 'Carol', 'New York'),
                             (4, 'Dan', 'Leeds');
INSERT INTO orders VALUES (1, 1, 500), (2, 1, 1500), (3, 2, 2500), (4, 3, 900), (5, 4, 1200),
                          (6, NULL, 3000);
INSERT INTO divisions VALUES (1, 'Sales'), (2, 'Marketing'), (3, 'IT'), (4, 'Legal');
INSERT INTO employees VALUES
  (1, 'Ann', 'Lee', 'Ann Lee', 45000, 'Sales', 25, 1),
  (2, 'Bob', 'Kim', 'Bob Kim', 52000, 'Sales', 35, 1),
  (3, 'Cy', 'Diaz', 'Cy Diaz', 61000, 'Marketing', 29, 2),
  (4, 'Dee', 'Park', 'Dee Park', 70000, 'Marketing', 41, 2),
  (5, 'Eve', 'Stone', 'Eve Stone', 520, 'IT', 30, 3),
  (6, 'Fay', 'Moss', 'Fay Moss', 521, 'IT', 22, NULL),
  (7, 'Gus', 'Lane', 'Gus Lane', 55000, 'Sales', NULL, 1),
  (8, 'Hal', 'Reed', 'Hal Reed', 50000, 'Marketing', 33, 2),
  (9, 'Ivy', 'Lee', 'Ivy Lee', 71000, NULL, 28, NULL),
  (10, 'Ann', 'Lee', 'Ann Lee', 48000, 'IT', 27, 3);
)";

/// A second database for the company schema: random rows from a fixed seed,
/// with NULLs in every nullable column.
std::string random_company_seed(std::uint32_t seed);

struct RulePair {
  int rule;
  std::string a;
  std::string b;
};

/// One example pair per harmonization rule, in rule order.
const std::vector<RulePair>& rule_pairs();

inline const std::string kHotelsDdl =
    "CREATE TABLE hotels (hotel_id INTEGER PRIMARY KEY, name TEXT, location TEXT);\n";
inline const std::string kHotelsSeed =
    "INSERT INTO hotels VALUES (1, 'Minster Inn', 'York'), (2, 'Bridge House', 'London'),\n"
    "  (3, 'Walls Hotel', 'York'), (4, 'Dock Lodge', 'Leeds');\n";
inline const std::string kYorkReference = "SELECT name FROM hotels WHERE location = \"York\";";
inline const std::string kYorkLike = "SELECT name FROM hotels WHERE location LIKE \"%York%\";";
inline const std::string kNewYorkRow =
    "INSERT INTO hotels VALUES (5, 'Liberty Suites', 'New York');";

inline const std::string kUserDdl =
    "CREATE TABLE user (id INTEGER PRIMARY KEY, name TEXT, age INTEGER);\n"
    "CREATE TABLE admin (aid INTEGER PRIMARY KEY, uid INTEGER REFERENCES user(id));\n";
inline const std::string kUserSeed =
    "INSERT INTO user VALUES (1, 'ann', 17), (2, 'bob', 18), (3, 'cy', 40), (4, 'dee', 65),\n"
    "  (5, 'eve', 66);\nINSERT INTO admin VALUES (1, 2), (2, 4);\n";
inline const std::string kBetweenReference = "SELECT name FROM user WHERE age BETWEEN 18 AND 65;";
inline const std::string kBetweenStudent = "SELECT name FROM user WHERE 18 <= age AND age <= 65;";

inline const std::string kLevenshteinA =
    "SELECT * FROM cust c INNER JOIN ord o ON c.cust_id = o.customer_id";
inline const std::string kLevenshteinB =
    "SELECT * FROM cust c WHERE cust_id IN (SELECT o.cust_id FROM ord o)";

/// Two correct references for "customers with an order above 1000": a join
/// form (the lecturer's) and a subquery form, plus student attempt sequences
/// that all work their way toward the subquery form.
inline const std::string kJoinReference =
    "SELECT DISTINCT c.name FROM customers c JOIN orders o ON c.customer_id = o.customer_id "
    "WHERE o.invoice > 1000";
inline const std::string kSubqueryReference =
    "SELECT name FROM customers WHERE customer_id IN (SELECT customer_id FROM orders WHERE "
    "invoice > 1000)";
const std::vector<std::vector<std::string>>& toward_subquery_sequences();

/// Correct solutions to the customers-with-a-large-order task falling into
/// four harmonization classes, none of them the lecturer's join form. Every
/// inner list holds variants that harmonize to the same tree.
const std::vector<std::vector<std::string>>& four_solution_classes();

/// Wrong or broken attempts at the same task.
const std::vector<std::string>& wrong_attempts();

/// A deterministic 50-line submission log for the task mixing all four
/// classes, lecturer-equivalent solutions and wrong attempts.
std::string fifty_submission_log(const std::string& task_id);

/// Random SELECT statements over the company schema covering joins, derived
/// tables, subqueries, every predicate form, grouping, ordering and LIMIT.
class SqlGenerator {
 public:
  explicit SqlGenerator(std::uint32_t seed) : rng_(seed) {}
  std::string next();

 private:
  struct Source {
    std::string table;
    std::string name;  // exposed name
  };

  std::mt19937 rng_;
  int depth_ = 0;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool chance(int percent) { return pick(100) < percent; }
  std::string query(bool allow_limit);
  std::string column(const std::vector<Source>& sources, bool* numeric = nullptr);
  std::string condition(const std::vector<Source>& sources, int budget);
  std::string predicate(const std::vector<Source>& sources);
  std::string literal_for(const std::string& col, bool numeric);
};

/// Random AND/OR/NOT formulas over at most `max_atoms` distinct atoms, atom i
/// constraining column p<i> only.
class FormulaGenerator {
 public:
  explicit FormulaGenerator(std::uint32_t seed) : rng_(seed) {}
  BoolExpr next(int max_atoms);

 private:
  std::mt19937 rng_;
  BoolExpr build(int depth, int atoms);
};

/// Evaluates a formula produced by FormulaGenerator (or derived from one)
/// when column p<i> holds bit i of `valuation`.
bool evaluate(const BoolExpr& e, unsigned valuation);

}  // namespace sqltutor::testing
