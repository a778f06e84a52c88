#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serp_audit/core/enums.hpp"
#include "serp_audit/core/item.hpp"
#include "serp_audit/time.hpp"

namespace serp_audit {

// The ordered item list one agent collected for one query in one round.
struct RoundSnapshot {
  std::string agent_id;
  Engine engine;
  Region region;
  Browser browser;
  std::string query_term;
  int round_index = 0;
  Timestamp captured_at;
  int expected_count = 50;  // the N of the weighting scheme
  std::vector<ResultItem> items;
  SnapshotStatus status = SnapshotStatus::Missing;

  // Set on gap-filling snapshots synthesized at read time; such snapshots
  // drive the discard rules but are not rewritten to logs.
  bool synthesized = false;
};

inline SnapshotStatus derive_status(std::size_t item_count, int expected_count) {
  if (item_count == 0) return SnapshotStatus::Missing;
  if (static_cast<int>(item_count) >= expected_count) return SnapshotStatus::Complete;
  return SnapshotStatus::Incomplete;
}

// Returns a diagnostic when a snapshot violates its invariants, nullopt
// when it is well-formed.
inline std::optional<std::string> validate(const RoundSnapshot& s) {
  if (s.agent_id.empty()) return "agent_id is empty";
  if (s.query_term.empty()) return "query_term is empty";
  if (s.round_index < 0) return "round_index is negative";
  if (s.expected_count < 1) return "expected_count must be positive";
  int prev_rank = 0;
  IdentitySet seen;
  for (const auto& item : s.items) {
    if (item.rank < 1) return "item rank below 1";
    if (item.rank <= prev_rank) return "item ranks not strictly increasing";
    if (item.rank > s.expected_count) return "item rank exceeds expected_count";
    if (item.url.empty()) return "item url is empty";
    if (item.title.empty()) return "item title is empty";
    if (!seen.insert(identity_of(item)).second)
      return "duplicate item identity within one snapshot";
    prev_rank = item.rank;
  }
  const SnapshotStatus derived = derive_status(s.items.size(), s.expected_count);
  if (s.status != derived) {
    return "status '" + std::string(to_string(s.status)) + "' inconsistent with " +
           std::to_string(s.items.size()) + " items (expected '" +
           std::string(to_string(derived)) + "')";
  }
  return std::nullopt;
}

}  // namespace serp_audit
