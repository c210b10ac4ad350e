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


// sqltutor command-line tool.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqltutor/sqltutor.h"

namespace {

constexpr const char* kSeedHelp =
    "Scaffold a task bundle. Without --seed a seed dataset is suggested: each table gets "
    "4 rows with distinct keys, parent tables are filled before the tables referencing "
    "them and foreign keys point at existing rows; for every comparison between a column "
    "and a literal in the solution, even rows satisfy it and odd rows do not. If the "
    "solution then returns nothing, 8 rows per table are generated with rows 5-8 all "
    "satisfying the conditions.";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prints the owned string, then frees it.
void emit(char* s) {
  std::cout << s << '\n';
  st_free_string(s);
}

int check(int status) {
  if (status != ST_OK) {
    std::cerr << "sqltutor: " << st_last_error() << '\n';
    std::exit(status);
  }
  return status;
}

st_task* open_task(const std::string& dir) {
  st_task* t = nullptr;
  check(st_task_open(dir.c_str(), &t));
  return t;
}

st_service* g_service = nullptr;

void on_signal(int) {
  if (g_service) st_service_stop(g_service);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid SQL tutoring engine: grading, harmonization, feedback and reference pools"};
  app.require_subcommand(1);

  // new-task
  auto* nt = app.add_subcommand("new-task", kSeedHelp);
  std::string nt_dir, nt_schema, nt_solution, nt_seed, nt_hidden, nt_config, nt_id, nt_desc;
  bool nt_ordered = false;
  nt->add_option("dir", nt_dir, "Bundle directory to create")->required();
  nt->add_option("--schema", nt_schema, "DDL file")->required()->check(CLI::ExistingFile);
  nt->add_option("--solution", nt_solution, "Lecturer solution file")
      ->required()
      ->check(CLI::ExistingFile);
  nt->add_option("--seed", nt_seed, "Seed data file (suggested when omitted)")
      ->check(CLI::ExistingFile);
  nt->add_option("--hidden", nt_hidden, "Hidden test data file")->check(CLI::ExistingFile);
  nt->add_option("--config", nt_config, "Configuration JSON file")->check(CLI::ExistingFile);
  nt->add_option("--id", nt_id, "Task id (defaults to the directory name)");
  nt->add_option("--description", nt_desc, "Task description");
  nt->add_flag("--order-required", nt_ordered, "Row order of the result is graded");

  // eval
  auto* ev = app.add_subcommand("eval", "Print the feedback report for one submission");
  std::string ev_dir, ev_file, ev_mode = "multi";
  ev->add_option("dir", ev_dir, "Bundle directory")->required();
  ev->add_option("submission", ev_file, "SQL file")->required()->check(CLI::ExistingFile);
  ev->add_option("--mode", ev_mode, "Reference mode")->check(CLI::IsMember({"single", "multi"}));

  // batch
  auto* ba = app.add_subcommand("batch", "Grade a corpus in submissions.log format and pool correct ones");
  std::string ba_dir, ba_log;
  ba->add_option("dir", ba_dir, "Bundle directory")->required();
  ba->add_option("corpus", ba_log, "Corpus log file")->required()->check(CLI::ExistingFile);

  // pool
  auto* po = app.add_subcommand("pool", "List or review pool entries");
  std::string po_dir, po_action;
  long long po_id = -1;
  bool po_poor = false;
  po->add_option("dir", po_dir, "Bundle directory")->required();
  po->add_option("action", po_action, "list, accept, reject or delete")
      ->required()
      ->check(CLI::IsMember({"list", "accept", "reject", "delete"}));
  po->add_option("id", po_id, "Entry id");
  po->add_flag("--poor", po_poor, "Accept as a poor-quality reference");

  // recheck
  auto* rc = app.add_subcommand("recheck", "Add test data and print verdict flips");
  std::string rc_dir, rc_data;
  rc->add_option("dir", rc_dir, "Bundle directory")->required();
  rc->add_option("--data", rc_data, "SQL script with the new rows")
      ->required()
      ->check(CLI::ExistingFile);

  // analyze
  auto* an = app.add_subcommand("analyze", "Corpus analytics over the submission log");
  std::string an_dir, an_mode, an_thresholds;
  bool an_curve = false, an_harmonized = false;
  an->add_option("dir", an_dir, "Bundle directory")->required();
  auto* curve_flag = an->add_flag("--curve", an_curve, "Levenshtein reduction curve");
  auto* harm_flag = an->add_flag("--harmonized", an_harmonized, "Distinct harmonized forms");
  auto* metrics_opt = an->add_option("--metrics", an_mode, "Learning metrics for a mode")
                          ->check(CLI::IsMember({"single", "multi"}));
  curve_flag->excludes(harm_flag)->excludes(metrics_opt);
  harm_flag->excludes(metrics_opt);
  an->add_option("--thresholds", an_thresholds, "Comma-separated thresholds for --curve");

  // serve
  auto* sv = app.add_subcommand("serve", "Start the HTTP service");
  std::vector<std::string> sv_dirs;
  std::string sv_listen = "127.0.0.1:8080", sv_token, sv_root;
  sv->add_option("dirs", sv_dirs, "Bundle directories");
  sv->add_option("--listen", sv_listen, "host:port");
  sv->add_option("--token", sv_token, "Lecturer token")->envname("SQLTUTOR_LECTURER_TOKEN");
  sv->add_option("--upload-root", sv_root, "Directory for bundles created over HTTP");

  CLI11_PARSE(app, argc, argv);

  try {
    char* out = nullptr;
    if (*nt) {
      if (nt_id.empty()) nt_id = std::filesystem::path(nt_dir).filename().string();
      const std::string schema = read_file(nt_schema);
      const std::string solution = read_file(nt_solution);
      const std::string seed = nt_seed.empty() ? "" : read_file(nt_seed);
      const std::string hidden = nt_hidden.empty() ? "" : read_file(nt_hidden);
      const std::string config = nt_config.empty() ? "" : read_file(nt_config);
      st_task* t = nullptr;
      check(st_task_create(nt_dir.c_str(), nt_id.c_str(), nt_desc.c_str(), schema.c_str(),
                           seed.c_str(), hidden.c_str(), solution.c_str(), nt_ordered ? 1 : 0,
                           config.c_str(), &t));
      check(st_task_info(t, &out));
      emit(out);
      st_task_close(t);
    } else if (*ev) {
      st_task* t = open_task(ev_dir);
      const std::string sql = read_file(ev_file);
      check(st_eval(t, sql.c_str(), ev_mode.c_str(), &out));
      emit(out);
      st_task_close(t);
    } else if (*ba) {
      st_task* t = open_task(ba_dir);
      const std::string log = read_file(ba_log);
      check(st_batch(t, log.c_str(), &out));
      emit(out);
      st_task_close(t);
    } else if (*po) {
      st_task* t = open_task(po_dir);
      if (po_action == "list") {
        check(st_pool_list(t, &out));
      } else {
        if (po_id < 0) throw std::runtime_error("pool " + po_action + " needs an entry id");
        const char* decision = po_action == "accept"   ? "accept"
                               : po_action == "reject" ? "reject_wrong"
                                                       : "delete";
        check(st_pool_review(t, po_id, decision, po_poor ? "poor" : "good", &out));
      }
      emit(out);
      st_task_close(t);
    } else if (*rc) {
      st_task* t = open_task(rc_dir);
      const std::string rows = read_file(rc_data);
      check(st_recheck(t, rows.c_str(), &out));
      emit(out);
      st_task_close(t);
    } else if (*an) {
      const char* kind = an_curve ? "curve" : an_harmonized ? "harmonized" : "metrics";
      if (!an_curve && !an_harmonized && an_mode.empty())
        throw std::runtime_error("analyze needs --curve, --harmonized or --metrics <mode>");
      st_task* t = open_task(an_dir);
      check(st_analyze(t, kind, an_mode.empty() ? nullptr : an_mode.c_str(),
                       an_thresholds.empty() ? nullptr : an_thresholds.c_str(), &out));
      emit(out);
      st_task_close(t);
    } else if (*sv) {
      const auto colon = sv_listen.rfind(':');
      if (colon == std::string::npos) throw std::runtime_error("--listen expects host:port");
      const std::string host = sv_listen.substr(0, colon);
      const int port = std::stoi(sv_listen.substr(colon + 1));
      if (sv_root.empty())
        sv_root = sv_dirs.empty()
                      ? "."
                      : std::filesystem::path(sv_dirs.front()).parent_path().string();
      std::vector<const char*> dirs;
      for (const auto& d : sv_dirs) dirs.push_back(d.c_str());
      check(st_service_open(dirs.data(), dirs.size(), sv_root.c_str(), sv_token.c_str(),
                            &g_service));
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ':' << port << '\n';
      const int status = st_service_listen(g_service, host.c_str(), port);
      st_service_close(g_service);
      g_service = nullptr;
      check(status);
    }
  } catch (const std::exception& e) {
    std::cerr << "sqltutor: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
