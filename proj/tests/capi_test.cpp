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


#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "sqltutor/sqltutor.h"
#include "support.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
namespace fx = sqltutor::testing;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("sqltutor_capi_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Takes ownership of a library string.
json take(char* s) {
  EXPECT_NE(s, nullptr);
  if (!s) return {};
  json j = json::parse(s);
  st_free_string(s);
  return j;
}

st_task* make_york(const fs::path& dir) {
  st_task* t = nullptr;
  EXPECT_EQ(st_task_create(dir.c_str(), "york", "Hotels in York", fx::kHotelsDdl.c_str(),
                           fx::kHotelsSeed.c_str(), nullptr, fx::kYorkReference.c_str(), 0,
                           nullptr, &t),
            ST_OK)
      << st_last_error();
  return t;
}

std::string log_line(const std::string& student, const std::string& sql) {
  return "2026-01-01T00:00:00Z\t" + student + "\tcust\t\t" + sql + "\n";
}

TEST(CApi, Version) { EXPECT_NE(std::string(st_version()), ""); }

TEST(CApi, CreateEvalSubmit) {
  TempDir tmp;
  st_task* t = make_york(tmp.path() / "york");
  ASSERT_NE(t, nullptr);

  char* out = nullptr;
  ASSERT_EQ(st_task_info(t, &out), ST_OK);
  EXPECT_EQ(take(out)["id"], "york");

  ASSERT_EQ(st_eval(t, fx::kYorkReference.c_str(), nullptr, &out), ST_OK);
  json r = take(out);
  EXPECT_EQ(r["verdict"]["kind"], "Correct");
  EXPECT_EQ(r["distance"]["total"], 0);

  ASSERT_EQ(st_submit(t, "ann", fx::kYorkLike.c_str(), "multi", "2026-01-01T00:00:00Z", &out), ST_OK);
  r = take(out);
  EXPECT_EQ(r["report"]["verdict"]["kind"], "Correct");
  EXPECT_EQ(r["event"]["kind"], "AutoAccepted");
  st_task_close(t);

  // Reopening sees the persisted log and pool.
  ASSERT_EQ(st_task_open((tmp.path() / "york").c_str(), &t), ST_OK);
  ASSERT_EQ(st_pool_list(t, &out), ST_OK);
  EXPECT_EQ(take(out)["rows"].size(), 2u);
  st_task_close(t);
}

TEST(CApi, ErrorCodes) {
  TempDir tmp;
  st_task* t = nullptr;
  char* out = nullptr;
  EXPECT_EQ(st_task_open((tmp.path() / "missing").c_str(), &t), ST_ERR_BUNDLE);
  EXPECT_NE(std::string(st_last_error()), "");
  EXPECT_EQ(st_task_open(nullptr, &t), ST_ERR_ARGUMENT);
  EXPECT_EQ(st_task_create((tmp.path() / "bad").c_str(), "bad", "", "CREATE TABLE t (a INT", "",
                           "", "SELECT a FROM t", 0, nullptr, &t),
            ST_ERR_PARSE);
  EXPECT_EQ(st_task_create((tmp.path() / "bad").c_str(), "bad", "",
                           "CREATE TABLE t (a INT); CREATE TABLE t (b INT);", "", "",
                           "SELECT a FROM t", 0, nullptr, &t),
            ST_ERR_SCHEMA);

  t = make_york(tmp.path() / "york");
  EXPECT_EQ(st_task_create((tmp.path() / "york").c_str(), "york", "", fx::kHotelsDdl.c_str(), "",
                           "", fx::kYorkReference.c_str(), 0, nullptr, &t),
            ST_ERR_BUNDLE);
  EXPECT_EQ(st_eval(t, "SELECT 1", "sideways", &out), ST_ERR_ARGUMENT);
  EXPECT_EQ(st_eval(t, "SELECT 1", nullptr, nullptr), ST_ERR_ARGUMENT);
  EXPECT_EQ(st_pool_review(t, 42, "accept", nullptr, &out), ST_ERR_UNKNOWN_ENTRY);
  EXPECT_EQ(st_pool_review(t, 1, "reject_wrong", nullptr, &out), ST_ERR_REVIEW_CONFLICT);
  EXPECT_NE(std::string(st_last_error()), "");
  EXPECT_EQ(st_recheck(t, "INSERT INTO nowhere VALUES (1);", &out), ST_ERR_PROVISION);
  EXPECT_EQ(st_analyze(t, "bogus", nullptr, nullptr, &out), ST_ERR_ARGUMENT);
  // A failed call leaves the output untouched.
  EXPECT_EQ(out, nullptr);
  st_task_close(t);
  st_free_string(nullptr);
}

TEST(CApi, ReviewRecheckAnalyze) {
  TempDir tmp;
  st_task* t = make_york(tmp.path() / "york");
  char* out = nullptr;
  ASSERT_EQ(st_submit(t, "ann", fx::kYorkLike.c_str(), nullptr, nullptr, &out), ST_OK);
  const long long like_id = take(out)["event"]["id"];

  ASSERT_EQ(st_recheck(t, fx::kNewYorkRow.c_str(), &out), ST_OK);
  json flips = take(out)["flips"];
  ASSERT_EQ(flips.size(), 1u);
  EXPECT_EQ(flips[0]["id"], like_id);
  EXPECT_EQ(flips[0]["after"]["kind"], "WrongResult");

  ASSERT_EQ(st_pool_review(t, like_id, "no", nullptr, &out), ST_OK);
  json d = take(out);
  EXPECT_TRUE(d["changed"].get<bool>());
  EXPECT_EQ(d["entry"]["status"], "rejected_wrong");

  ASSERT_EQ(st_pool_list(t, &out), ST_OK);
  json p = take(out);
  EXPECT_EQ(p["rows"].size(), 1u);
  EXPECT_EQ(p["wrong"].size(), 1u);

  ASSERT_EQ(st_analyze(t, "curve", nullptr, "0,50", &out), ST_OK);
  json c = take(out);
  ASSERT_EQ(c["curve"].size(), 2u);
  ASSERT_EQ(st_analyze(t, "metrics", "single", nullptr, &out), ST_OK);
  EXPECT_EQ(take(out)["metrics"]["mode"], "single_ref");
  st_task_close(t);
}

TEST(CApi, BatchOfTwoClasses) {
  TempDir tmp;
  st_task* t = nullptr;
  ASSERT_EQ(st_task_create((tmp.path() / "cust").c_str(), "cust", "", fx::kCompanyDdl.c_str(),
                           fx::kCompanySeed.c_str(), nullptr, fx::kJoinReference.c_str(), 0,
                           nullptr, &t),
            ST_OK)
      << st_last_error();
  std::string log;
  int n = 0;
  for (std::size_t c = 0; c < 2; ++c)
    for (const auto& sql : fx::four_solution_classes()[c]) log += log_line("s" + std::to_string(n++), sql);
  char* out = nullptr;
  ASSERT_EQ(st_batch(t, log.c_str(), &out), ST_OK) << st_last_error();
  json b = take(out);
  EXPECT_EQ(b["results"].size(), static_cast<std::size_t>(n));
  int fresh = 0;
  for (const auto& e : b["events"]) fresh += e["kind"] != "Duplicate";
  EXPECT_EQ(fresh, 2);
  EXPECT_EQ(st_batch(t, "not a log line", &out), ST_ERR_BUNDLE);
  st_task_close(t);
}

TEST(CApi, SuggestSeed) {
  char* out = nullptr;
  ASSERT_EQ(st_suggest_seed(fx::kHotelsDdl.c_str(), fx::kYorkReference.c_str(), &out), ST_OK);
  const std::string seed = out;
  st_free_string(out);
  EXPECT_NE(seed.find("INSERT INTO"), std::string::npos);
  EXPECT_NE(seed.find("York"), std::string::npos);
}

// --- command line ---------------------------------------------------------

struct CliRun {
  int status;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(SQLTUTOR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

TEST(Cli, EndToEnd) {
  TempDir tmp;
  const fs::path d = tmp.path();
  write(d / "schema.sql", fx::kCompanyDdl);
  write(d / "solution.sql", fx::kJoinReference);
  write(d / "attempt.sql", fx::kSubqueryReference);
  write(d / "wrong.sql", "SELECT name FROM customers");
  std::string log;
  int n = 0;
  for (std::size_t c = 0; c < 2; ++c)
    for (const auto& sql : fx::four_solution_classes()[c]) log += log_line("s" + std::to_string(n++), sql);
  write(d / "corpus.log", log);
  const std::string task = (d / "cust").string();

  CliRun r = run("new-task " + task + " --schema " + (d / "schema.sql").string() + " --solution " +
              (d / "solution.sql").string() + " --description 'Big spenders'");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["id"], "cust");
  EXPECT_TRUE(fs::exists(d / "cust"));

  r = run("eval " + task + " " + (d / "attempt.sql").string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["verdict"]["kind"], "Correct");
  r = run("eval " + task + " " + (d / "wrong.sql").string() + " --mode single");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["verdict"]["kind"], "WrongResult");

  r = run("batch " + task + " " + (d / "corpus.log").string());
  ASSERT_EQ(r.status, 0);
  int fresh = 0;
  const json batch = json::parse(r.out);
  for (const auto& e : batch["events"]) fresh += e["kind"] != "Duplicate";
  EXPECT_EQ(fresh, 2) << r.out;

  r = run("pool " + task + " list");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["rows"].size(), 3u);

  r = run("analyze " + task + " --curve --thresholds 0,100");
  ASSERT_EQ(r.status, 0);
  json curve = json::parse(r.out)["curve"];
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[0]["count"], n);
  r = run("analyze " + task + " --harmonized");
  ASSERT_EQ(r.status, 0);
  EXPECT_LE(json::parse(r.out)["harmonized"].get<int>(), n);
  r = run("analyze " + task + " --metrics multi");
  ASSERT_EQ(r.status, 0);

  EXPECT_NE(run("eval " + (d / "nope").string() + " " + (d / "attempt.sql").string()).status, 0);
  EXPECT_NE(run("pool " + task + " accept").status, 0);
  EXPECT_NE(run("analyze " + task).status, 0);
}

}  // namespace
