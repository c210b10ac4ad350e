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


// Per-task pool of reference solutions with lecturer review and the store
// of solutions known to be wrong.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqltutor/distance.hpp"
#include "sqltutor/harmonizer.hpp"
#include "sqltutor/schema.hpp"

namespace sqltutor {

enum class Quality { Good, Poor };
enum class Origin { Lecturer, Learned };
enum class EntryStatus { Active, Candidate, RejectedWrong, Deleted };

std::string_view quality_name(Quality q);
Quality quality_from_name(std::string_view s);
std::string_view origin_name(Origin o);
Origin origin_from_name(std::string_view s);
std::string_view status_name(EntryStatus s);
EntryStatus status_from_name(std::string_view s);

struct PoolEntry {
  std::int64_t id = 0;  // also the creation order
  std::string raw;
  CanonicalQuery canonical;
  Quality quality = Quality::Good;
  Origin origin = Origin::Learned;
  EntryStatus status = EntryStatus::Candidate;
  bool pending_review = false;  // auto-accepted, not yet confirmed
  std::int64_t match_count = 0;
  std::string note;
  std::string advisory;  // set when moved to the wrong store
};

enum class PoolEventKind { Duplicate, CandidateCreated, AutoAccepted, StoredWrong };

std::string_view pool_event_name(PoolEventKind k);

struct PoolEvent {
  PoolEventKind kind;
  std::int64_t id;
  std::string note;
};

enum class Decision { Accept, RejectWrong, Delete };

std::string_view decision_name(Decision d);
/// Accepts accept/reject_wrong/delete and the dashboard's yes/no/delete.
Decision decision_from_name(std::string_view s);

struct PoolConfig {
  WeightsConfig weights;
  /// Auto-accept threshold on the smallest distance to the pool; 2*w3 when
  /// unset.
  std::optional<double> theta;

  double effective_theta() const { return theta.value_or(2 * weights.w3); }
};

struct DashboardRow {
  std::int64_t id;
  std::string sql;
  std::string note;
  EntryStatus status;
  bool pending_review;
  Quality quality;
  Origin origin;
  std::int64_t match_count;
};

struct ReviewResult {
  PoolEntry entry;
  std::optional<PoolEvent> event;  // StoredWrong after reject_wrong
  bool changed;
};

class ReferencePool {
 public:
  /// Creates the pool with the lecturer solution as entry 1.
  ReferencePool(std::string lecturer_raw, CanonicalQuery lecturer);

  /// Rebuilds a pool from stored entries (ids and order preserved).
  static ReferencePool restore(std::vector<PoolEntry> entries);

  /// `canonical` is the harmonized form of `raw`, which the caller has
  /// graded Correct. Distance 0 to any stored entry (wrong store and deleted
  /// entries included) is a Duplicate and bumps that entry's match count.
  PoolEvent ingest_correct(const std::string& raw, const CanonicalQuery& canonical,
                           const PoolConfig& config, const SchemaDef& schema = {});

  /// Throws UnknownEntry, or ReviewConflict when the entry is not open for
  /// review. Repeating the decision that produced the current state is a
  /// no-op.
  ReviewResult review(std::int64_t id, Decision decision, Quality quality = Quality::Good);

  /// Active and candidate entries in creation order.
  std::vector<DashboardRow> list_candidates() const;

  /// Active references in creation order.
  std::vector<ReferenceView> active_views() const;

  const PoolEntry& lecturer() const { return entries_.front(); }
  const PoolEntry& entry(std::int64_t id) const;
  const std::vector<PoolEntry>& entries() const { return entries_; }

 private:
  ReferencePool() = default;
  PoolEntry& mutable_entry(std::int64_t id);

  std::vector<PoolEntry> entries_;
  std::int64_t next_id_ = 1;
};

/// Advice for making a wrongly accepted query fail on the test data: the
/// conditions that differ from the lecturer solution.
std::string counterexample_advisory(const Query& wrong, const Query& lecturer);

}  // namespace sqltutor
