#pragma once

#include <optional>
#include <string>

#include "serp_audit/core/enums.hpp"
#include "serp_audit/core/item.hpp"

namespace serp_audit {

// Everything one (agent, query term) stream remembers between rounds: the
// identities ever observed plus how the previous round ended. Rounds must
// be applied in strictly increasing round_index order.
struct AgentTermHistory {
  std::string agent_id;
  std::string query_term;
  IdentitySet seen;
  std::optional<int> last_round_index;
  PriorRoundStatus last_round_status = PriorRoundStatus::None;

  std::size_t unique_count() const { return seen.size(); }
};

}  // namespace serp_audit
