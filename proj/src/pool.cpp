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


#include "sqltutor/pool.hpp"

#include <algorithm>
#include <set>

#include "sqltutor/errors.hpp"
#include "sqltutor/feedback.hpp"
#include "sqltutor/logic.hpp"

namespace sqltutor {

namespace {

std::set<std::string> literal_keys(const std::optional<BoolExpr>& cond) {
  std::set<std::string> out;
  if (!cond) return out;
  try {
    for (const auto& clause : to_cnf(*cond).clauses)
      for (const auto& lit : clause) out.insert(lit.key());
  } catch (const CnfBlowup&) {
    out.insert(to_sql(*cond));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

std::string_view quality_name(Quality q) { return q == Quality::Poor ? "poor" : "good"; }

Quality quality_from_name(std::string_view s) {
  if (s == "good") return Quality::Good;
  if (s == "poor") return Quality::Poor;
  throw Error("unknown quality: " + std::string(s));
}

std::string_view origin_name(Origin o) { return o == Origin::Lecturer ? "lecturer" : "learned"; }

Origin origin_from_name(std::string_view s) {
  if (s == "lecturer") return Origin::Lecturer;
  if (s == "learned") return Origin::Learned;
  throw Error("unknown origin: " + std::string(s));
}

std::string_view status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::Active: return "active";
    case EntryStatus::Candidate: return "candidate";
    case EntryStatus::RejectedWrong: return "rejected_wrong";
    case EntryStatus::Deleted: return "deleted";
  }
  return {};
}

EntryStatus status_from_name(std::string_view s) {
  for (auto st : {EntryStatus::Active, EntryStatus::Candidate, EntryStatus::RejectedWrong,
                  EntryStatus::Deleted})
    if (status_name(st) == s) return st;
  throw Error("unknown entry status: " + std::string(s));
}

std::string_view pool_event_name(PoolEventKind k) {
  switch (k) {
    case PoolEventKind::Duplicate: return "Duplicate";
    case PoolEventKind::CandidateCreated: return "CandidateCreated";
    case PoolEventKind::AutoAccepted: return "AutoAccepted";
    case PoolEventKind::StoredWrong: return "StoredWrong";
  }
  return {};
}

std::string_view decision_name(Decision d) {
  switch (d) {
    case Decision::Accept: return "accept";
    case Decision::RejectWrong: return "reject_wrong";
    case Decision::Delete: return "delete";
  }
  return {};
}

Decision decision_from_name(std::string_view s) {
  if (s == "accept" || s == "yes") return Decision::Accept;
  if (s == "reject_wrong" || s == "reject" || s == "no") return Decision::RejectWrong;
  if (s == "delete") return Decision::Delete;
  throw Error("unknown review decision: " + std::string(s));
}

std::string counterexample_advisory(const Query& wrong, const Query& lecturer) {
  auto a = literal_keys(wrong.where), b = literal_keys(lecturer.where);
  std::vector<std::string> only_wrong, only_lecturer;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_wrong));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_lecturer));
  std::string msg =
      "Change the test data so that this query no longer returns the lecturer solution's result.";
  if (only_wrong.empty() && only_lecturer.empty())
    return msg + " Add rows on which the two queries disagree.";
  msg += " Add a row that satisfies";
  if (!only_wrong.empty()) msg += " [" + join(only_wrong, " AND ") + "]";
  if (!only_wrong.empty() && !only_lecturer.empty()) msg += " but not";
  if (!only_lecturer.empty()) msg += " [" + join(only_lecturer, " AND ") + "]";
  if (only_lecturer.empty()) msg += " and is excluded by the lecturer solution";
  return msg + ", or the other way round.";
}

ReferencePool::ReferencePool(std::string lecturer_raw, CanonicalQuery lecturer) {
  PoolEntry e;
  e.id = next_id_++;
  e.raw = std::move(lecturer_raw);
  e.canonical = std::move(lecturer);
  e.origin = Origin::Lecturer;
  e.status = EntryStatus::Active;
  e.note = std::string(kNoteLecturer);
  entries_.push_back(std::move(e));
}

ReferencePool ReferencePool::restore(std::vector<PoolEntry> entries) {
  if (entries.empty() || entries.front().origin != Origin::Lecturer)
    throw Error("a pool starts with the lecturer solution");
  std::sort(entries.begin(), entries.end(),
            [](const PoolEntry& a, const PoolEntry& b) { return a.id < b.id; });
  ReferencePool pool;
  pool.next_id_ = entries.back().id + 1;
  pool.entries_ = std::move(entries);
  return pool;
}

const PoolEntry& ReferencePool::entry(std::int64_t id) const {
  for (const auto& e : entries_)
    if (e.id == id) return e;
  throw UnknownEntry("no pool entry with id " + std::to_string(id));
}

PoolEntry& ReferencePool::mutable_entry(std::int64_t id) {
  return const_cast<PoolEntry&>(static_cast<const ReferencePool*>(this)->entry(id));
}

PoolEvent ReferencePool::ingest_correct(const std::string& raw, const CanonicalQuery& canonical,
                                        const PoolConfig& config, const SchemaDef& schema) {
  std::optional<DistanceBreakdown> closest;
  for (auto& e : entries_) {
    DistanceBreakdown d = total_distance(canonical.tree, e.canonical.tree, config.weights, schema);
    if (d.zero()) {
      ++e.match_count;
      return {PoolEventKind::Duplicate, e.id, e.note};
    }
    if (e.status == EntryStatus::Active || e.status == EntryStatus::Candidate)
      if (!closest || d.total < closest->total) closest = d;
  }
  PoolEntry e;
  e.id = next_id_++;
  e.raw = raw;
  e.canonical = canonical;
  e.match_count = 1;
  DistanceBreakdown to_lecturer =
      total_distance(canonical.tree, lecturer().canonical.tree, config.weights, schema);
  e.note = note_summary(to_lecturer, canonical.tree, lecturer().canonical.tree);
  bool structural = closest && std::any_of(closest->clauses.begin(), closest->clauses.end(),
                                           [](const Components& c) { return c.c1 || c.c2; });
  PoolEventKind kind = PoolEventKind::CandidateCreated;
  if (closest && closest->total >= config.effective_theta() && structural) {
    e.status = EntryStatus::Active;
    e.pending_review = true;
    kind = PoolEventKind::AutoAccepted;
  } else {
    e.status = EntryStatus::Candidate;
  }
  entries_.push_back(e);
  return {kind, e.id, e.note};
}

ReviewResult ReferencePool::review(std::int64_t id, Decision decision, Quality quality) {
  PoolEntry& e = mutable_entry(id);
  const bool open = e.status == EntryStatus::Candidate ||
                    (e.status == EntryStatus::Active && e.pending_review);
  bool already = false;
  switch (decision) {
    case Decision::Accept:
      already = e.status == EntryStatus::Active && !e.pending_review && e.quality == quality;
      break;
    case Decision::RejectWrong:
      already = e.status == EntryStatus::RejectedWrong;
      break;
    case Decision::Delete:
      already = e.status == EntryStatus::Deleted;
      break;
  }
  if (already) return {e, std::nullopt, false};
  if (e.origin == Origin::Lecturer || !open)
    throw ReviewConflict("entry " + std::to_string(id) + " is " +
                         std::string(status_name(e.status)) + " and not open for review");
  std::optional<PoolEvent> event;
  switch (decision) {
    case Decision::Accept:
      e.status = EntryStatus::Active;
      e.pending_review = false;
      e.quality = quality;
      break;
    case Decision::RejectWrong:
      e.status = EntryStatus::RejectedWrong;
      e.pending_review = false;
      e.advisory = counterexample_advisory(e.canonical.tree, lecturer().canonical.tree);
      event = PoolEvent{PoolEventKind::StoredWrong, e.id, e.advisory};
      break;
    case Decision::Delete:
      e.status = EntryStatus::Deleted;
      e.pending_review = false;
      break;
  }
  return {e, event, true};
}

std::vector<DashboardRow> ReferencePool::list_candidates() const {
  std::vector<DashboardRow> rows;
  for (const auto& e : entries_)
    if (e.status == EntryStatus::Active || e.status == EntryStatus::Candidate)
      rows.push_back({e.id, e.raw, e.note, e.status, e.pending_review, e.quality, e.origin,
                      e.match_count});
  return rows;
}

std::vector<ReferenceView> ReferencePool::active_views() const {
  std::vector<ReferenceView> out;
  for (const auto& e : entries_)
    if (e.status == EntryStatus::Active) out.push_back({e.id, &e.canonical.tree});
  return out;
}

}  // namespace sqltutor
