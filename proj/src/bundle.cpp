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


// Bundle layout:
//   task.json         id, description, ordering flag, configuration
//   schema.sql, seed.sql, hidden.sql
//   refs/<id>.sql     raw text of lecturer and learned entries
//   refs/<id>.json    entry metadata
//   wrong/<id>.*      same, for the store of wrong solutions
//   submissions.log   one tab-separated record per submission

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "sqltutor/errors.hpp"
#include "sqltutor/parser.hpp"
#include "sqltutor/task.hpp"

namespace fs = std::filesystem;

namespace sqltutor {

namespace {

std::string escape_field(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) throw BundleError("dangling escape in log field");
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: throw BundleError(std::string("unknown escape \\") + s[i] + " in log field");
    }
  }
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw BundleError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_optional(const fs::path& p) {
  return fs::exists(p) ? read_file(p) : std::string();
}

void write_file(const fs::path& p, const std::string& content) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw BundleError("cannot write " + p.string());
    out << content;
    if (!out) throw BundleError("cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

std::string dump(const json::Json& j) { return j.dump(2) + "\n"; }

json::Json parse_json(const std::string& text, const fs::path& where) {
  try {
    return json::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BundleError(where.string() + ": " + e.what());
  }
}

std::vector<PoolEntry> read_entries(const fs::path& dir) {
  std::vector<PoolEntry> out;
  if (!fs::exists(dir)) return out;
  for (const auto& f : fs::directory_iterator(dir)) {
    if (f.path().extension() != ".json") continue;
    const auto meta = parse_json(read_file(f.path()), f.path());
    PoolEntry e;
    try {
      e.id = meta.at("id").get<std::int64_t>();
      e.quality = quality_from_name(meta.at("quality").get<std::string>());
      e.origin = origin_from_name(meta.at("origin").get<std::string>());
      e.status = status_from_name(meta.at("status").get<std::string>());
      e.pending_review = meta.value("pending_review", false);
      e.match_count = meta.value("match_count", std::int64_t{0});
      e.note = meta.value("note", std::string());
      e.advisory = meta.value("advisory", std::string());
    } catch (const nlohmann::json::exception& ex) {
      throw BundleError(f.path().string() + ": " + ex.what());
    } catch (const BundleError&) {
      throw;
    } catch (const Error& ex) {
      throw BundleError(f.path().string() + ": " + ex.what());
    }
    if (f.path().stem() != std::to_string(e.id))
      throw BundleError(f.path().string() + ": id does not match the file name");
    e.raw = read_file(dir / (std::to_string(e.id) + ".sql"));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::string format_log_line(const SubmissionRecord& r) {
  return escape_field(r.timestamp) + '\t' + escape_field(r.student) + '\t' +
         escape_field(r.task) + '\t' + escape_field(r.verdict) + '\t' + escape_field(r.sql);
}

SubmissionRecord parse_log_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (fields.size() != 5)
    throw BundleError("log line has " + std::to_string(fields.size()) + " fields, expected 5");
  SubmissionRecord r{unescape_field(fields[0]), unescape_field(fields[1]),
                     unescape_field(fields[2]), unescape_field(fields[3]),
                     unescape_field(fields[4])};
  try {
    if (!r.verdict.empty()) verdict_from_name(r.verdict);
  } catch (const Error& e) {
    throw BundleError(e.what());
  }
  return r;
}

std::vector<SubmissionRecord> parse_log(const std::string& text) {
  std::vector<SubmissionRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      out.push_back(parse_log_line(line));
    } catch (const BundleError& e) {
      throw BundleError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

Task Task::load(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw BundleError("not a bundle directory: " + dir.string());
  const auto meta = parse_json(read_file(dir / "task.json"), dir / "task.json");
  Task t;
  try {
    const int version = meta.at("schema_version").get<int>();
    if (version != kSchemaVersion)
      throw BundleError("unsupported schema_version " + std::to_string(version));
    t.id_ = meta.at("id").get<std::string>();
    t.description_ = meta.value("description", std::string());
    t.order_required_ = meta.value("output_order_required", false);
    t.config_ = json::config_from_json(meta.value("config", json::Json()));
  } catch (const nlohmann::json::exception& e) {
    throw BundleError(std::string("task.json: ") + e.what());
  }
  t.data_ = TaskData{read_file(dir / "schema.sql"), read_optional(dir / "seed.sql"),
                     read_optional(dir / "hidden.sql")};
  t.schema_ = parse_schema(t.data_.schema_sql);

  std::vector<PoolEntry> entries = read_entries(dir / "refs");
  for (auto& e : read_entries(dir / "wrong")) {
    if (e.status != EntryStatus::RejectedWrong)
      throw BundleError("entry " + std::to_string(e.id) + " in wrong/ is not rejected_wrong");
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const PoolEntry& a, const PoolEntry& b) { return a.id < b.id; });
  if (entries.empty() || entries.front().origin != Origin::Lecturer)
    throw BundleError("bundle has no lecturer solution");
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].id == entries[i - 1].id)
      throw BundleError("duplicate entry id " + std::to_string(entries[i].id));
  for (auto& e : entries) {
    try {
      e.canonical = t.canonicalize(e.raw);
    } catch (const Error& ex) {
      throw BundleError("entry " + std::to_string(e.id) + ": " + ex.what());
    }
  }
  t.pool_ = ReferencePool::restore(std::move(entries));
  t.log_ = parse_log(read_optional(dir / "submissions.log"));
  return t;
}

void Task::save(const fs::path& dir) const {
  fs::create_directories(dir / "refs");
  fs::create_directories(dir / "wrong");

  json::Json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["id"] = id_;
  meta["description"] = description_;
  meta["output_order_required"] = order_required_;
  meta["config"] = json::to_json(config_);
  write_file(dir / "task.json", dump(meta));
  write_file(dir / "schema.sql", data_.schema_sql);
  write_file(dir / "seed.sql", data_.seed_sql);
  write_file(dir / "hidden.sql", data_.hidden_sql);

  std::set<fs::path> keep;
  for (const auto& e : pool_.entries()) {
    const fs::path sub = dir / (e.status == EntryStatus::RejectedWrong ? "wrong" : "refs");
    const std::string stem = std::to_string(e.id);
    write_file(sub / (stem + ".sql"), e.raw);
    write_file(sub / (stem + ".json"), dump(json::to_json(e)));
    keep.insert(sub / (stem + ".sql"));
    keep.insert(sub / (stem + ".json"));
  }
  for (const char* sub : {"refs", "wrong"})
    for (const auto& f : fs::directory_iterator(dir / sub))
      if (!keep.count(f.path())) fs::remove(f.path());

  std::string log;
  for (const auto& r : log_) log += format_log_line(r) + "\n";
  write_file(dir / "submissions.log", log);
}

}  // namespace sqltutor
