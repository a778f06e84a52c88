#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "serp_audit/core/enums.hpp"
#include "serp_audit/core/history.hpp"
#include "serp_audit/core/snapshot.hpp"
#include "serp_audit/core/weights.hpp"
#include "serp_audit/error.hpp"

namespace serp_audit {

// Either a novelty value in [0,1] or the reason the round was discarded.
class NoveltyResult {
 public:
  static NoveltyResult valued(double v) { return NoveltyResult(v); }
  static NoveltyResult discarded(DiscardReason r) { return NoveltyResult(r); }

  bool is_discarded() const { return std::holds_alternative<DiscardReason>(state_); }
  double value() const { return std::get<double>(state_); }
  DiscardReason reason() const { return std::get<DiscardReason>(state_); }

  friend bool operator==(const NoveltyResult&, const NoveltyResult&) = default;

 private:
  explicit NoveltyResult(double v) : state_(v) {}
  explicit NoveltyResult(DiscardReason r) : state_(r) {}
  std::variant<double, DiscardReason> state_;
};

namespace detail {

inline void check_in_order(const RoundSnapshot& snapshot, const AgentTermHistory& history) {
  if (history.last_round_index && snapshot.round_index <= *history.last_round_index) {
    throw OrderingError("round " + std::to_string(snapshot.round_index) +
                        " applied after round " + std::to_string(*history.last_round_index) +
                        " for agent '" + snapshot.agent_id + "' term '" +
                        snapshot.query_term + "'");
  }
}

}  // namespace detail

// Sum of delta_i * rescaled_weight over the collected ranks, where is_new
// is aligned with sorted_ranks. This single summation path is shared by the
// metric pipeline and the synthetic ground-truth ledger so the two agree
// bit for bit.
inline double novelty_value(std::span<const int> sorted_ranks, const std::vector<bool>& is_new,
                            int expected_count) {
  if (sorted_ranks.size() != is_new.size())
    throw std::invalid_argument("novelty_value: ranks/flags size mismatch");
  const double denom = rank_weight_sum(sorted_ranks, expected_count);
  double total = 0.0;
  for (std::size_t i = 0; i < sorted_ranks.size(); ++i) {
    if (is_new[i]) total += rank_weight(sorted_ranks[i], expected_count) / denom;
  }
  // guard against last-ulp drift from the per-term divisions
  if (total < 0.0) total = 0.0;
  if (total > 1.0) total = 1.0;
  return total;
}

// Flags each item of the snapshot as first-seen (true) or already seen
// (false) for this stream. Pure: the history is not touched.
inline std::vector<bool> detect_new(const RoundSnapshot& snapshot,
                                    const AgentTermHistory& history) {
  detail::check_in_order(snapshot, history);
  std::vector<bool> flags;
  flags.reserve(snapshot.items.size());
  for (const auto& item : snapshot.items)
    flags.push_back(!history.seen.contains(identity_of(item)));
  return flags;
}

// Novelty of one round, or the discard marker when the round cannot be
// classified (first round of the stream, or the prior round was missing or
// incomplete). The caller must not pass Missing snapshots; a missing round
// has no novelty and is recorded as a gap instead.
inline NoveltyResult round_novelty(const RoundSnapshot& snapshot,
                                   const AgentTermHistory& history) {
  if (snapshot.status == SnapshotStatus::Missing)
    throw std::invalid_argument("round_novelty: missing snapshot has no novelty; record a gap");
  detail::check_in_order(snapshot, history);
  switch (history.last_round_status) {
    case PriorRoundStatus::None:
      return NoveltyResult::discarded(DiscardReason::FirstRound);
    case PriorRoundStatus::Missing:
    case PriorRoundStatus::Incomplete:
      return NoveltyResult::discarded(DiscardReason::PriorRoundMissingOrIncomplete);
    case PriorRoundStatus::Complete:
      break;
  }
  std::vector<int> ranks;
  ranks.reserve(snapshot.items.size());
  for (const auto& item : snapshot.items) ranks.push_back(item.rank);
  const std::vector<bool> flags = detect_new(snapshot, history);
  return NoveltyResult::valued(novelty_value(ranks, flags, snapshot.expected_count));
}

// Folds one round into the stream history. Identities are recorded even
// when the round's novelty was discarded, so a later reappearance is not
// over-counted as new. Missing rounds only update the prior-round status.
inline void apply_round(const RoundSnapshot& snapshot, AgentTermHistory& history) {
  detail::check_in_order(snapshot, history);
  if (snapshot.status == SnapshotStatus::Missing) {
    history.last_round_status = PriorRoundStatus::Missing;
    return;
  }
  for (const auto& item : snapshot.items) history.seen.insert(identity_of(item));
  history.last_round_index = snapshot.round_index;
  history.last_round_status = to_prior(snapshot.status);
}

}  // namespace serp_audit
