#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <utility>

#include "serp_audit/util/strings.hpp"

namespace serp_audit {

// Closed enum with an Other(name) escape hatch, shared by Engine, Region
// and Browser. Traits supply the Kind enum and the canonical name table.
template <typename Traits>
struct TaggedName {
  using Kind = typename Traits::Kind;

  Kind kind = Traits::kOther;
  std::string custom;  // non-empty only when kind == Other

  TaggedName() = default;
  TaggedName(Kind k) : kind(k) {}  // NOLINT: implicit by design
  static TaggedName other(std::string name) {
    TaggedName t;
    t.kind = Traits::kOther;
    t.custom = std::move(name);
    return t;
  }

  // Case-insensitive against the canonical table; anything else becomes
  // Other with the original spelling preserved.
  static TaggedName from_name(std::string_view s) {
    for (const auto& [kind, name] : Traits::names())
      if (util::iequals(s, name)) return TaggedName(kind);
    return other(std::string(s));
  }

  std::string_view name() const {
    if (kind == Traits::kOther) return custom;
    for (const auto& [kind_, name_] : Traits::names())
      if (kind_ == kind) return name_;
    return "?";
  }

  bool is_other() const { return kind == Traits::kOther; }

  friend bool operator==(const TaggedName& a, const TaggedName& b) {
    return a.kind == b.kind && (a.kind != Traits::kOther || a.custom == b.custom);
  }
  friend auto operator<=>(const TaggedName& a, const TaggedName& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (a.kind != Traits::kOther) return std::strong_ordering::equal;
    return a.custom <=> b.custom;
  }
};

struct EngineTraits {
  enum class Kind { Google, Bing, DuckDuckGo, Yahoo, Baidu, Other };
  static constexpr Kind kOther = Kind::Other;
  static constexpr auto names() {
    return std::array<std::pair<Kind, std::string_view>, 5>{{
        {Kind::Google, "google"},
        {Kind::Bing, "bing"},
        {Kind::DuckDuckGo, "duckduckgo"},
        {Kind::Yahoo, "yahoo"},
        {Kind::Baidu, "baidu"},
    }};
  }
};
using Engine = TaggedName<EngineTraits>;

struct RegionTraits {
  enum class Kind { Oregon, Frankfurt, Other };
  static constexpr Kind kOther = Kind::Other;
  static constexpr auto names() {
    return std::array<std::pair<Kind, std::string_view>, 2>{{
        {Kind::Oregon, "oregon"},
        {Kind::Frankfurt, "frankfurt"},
    }};
  }
};
using Region = TaggedName<RegionTraits>;

struct BrowserTraits {
  enum class Kind { Chrome, Firefox, Other };
  static constexpr Kind kOther = Kind::Other;
  static constexpr auto names() {
    return std::array<std::pair<Kind, std::string_view>, 2>{{
        {Kind::Chrome, "chrome"},
        {Kind::Firefox, "firefox"},
    }};
  }
};
using Browser = TaggedName<BrowserTraits>;

enum class SnapshotStatus { Complete, Incomplete, Missing };

inline std::string_view to_string(SnapshotStatus s) {
  switch (s) {
    case SnapshotStatus::Complete: return "complete";
    case SnapshotStatus::Incomplete: return "incomplete";
    case SnapshotStatus::Missing: return "missing";
  }
  return "?";
}

// Status of the previous round as remembered by a stream history. None
// means no round has been applied yet.
enum class PriorRoundStatus { None, Complete, Incomplete, Missing };

inline PriorRoundStatus to_prior(SnapshotStatus s) {
  switch (s) {
    case SnapshotStatus::Complete: return PriorRoundStatus::Complete;
    case SnapshotStatus::Incomplete: return PriorRoundStatus::Incomplete;
    case SnapshotStatus::Missing: return PriorRoundStatus::Missing;
  }
  return PriorRoundStatus::None;
}

enum class DiscardReason { FirstRound, PriorRoundMissingOrIncomplete };

inline std::string_view to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::FirstRound: return "first_round";
    case DiscardReason::PriorRoundMissingOrIncomplete:
      return "prior_round_missing_or_incomplete";
  }
  return "?";
}

}  // namespace serp_audit
