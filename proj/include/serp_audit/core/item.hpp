#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "serp_audit/util/hash.hpp"

namespace serp_audit {

// One ranked news result. Two results are the same item exactly when both
// the normalized URL and the normalized title match; live-stream URLs are
// reused for different stories, so the URL alone does not identify one.
struct ResultItem {
  std::string url;    // normalized
  std::string title;  // normalized
  int rank = 1;       // 1-based position on the page

  friend bool operator==(const ResultItem&, const ResultItem&) = default;
};

struct ItemIdentity {
  std::string url;
  std::string title;

  friend bool operator==(const ItemIdentity&, const ItemIdentity&) = default;
  friend auto operator<=>(const ItemIdentity&, const ItemIdentity&) = default;
};

inline ItemIdentity identity_of(const ResultItem& item) {
  return ItemIdentity{item.url, item.title};
}

struct IdentityHash {
  std::size_t operator()(const ItemIdentity& id) const {
    // 0x1f separator keeps ("ab","c") distinct from ("a","bc")
    std::uint64_t h = util::fnv1a64(id.url);
    h = util::fnv1a64("\x1f", h);
    return static_cast<std::size_t>(util::fnv1a64(id.title, h));
  }
};

using IdentitySet = std::unordered_set<ItemIdentity, IdentityHash>;

}  // namespace serp_audit
