#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "serp_audit/core/snapshot.hpp"
#include "serp_audit/error.hpp"
#include "serp_audit/ingest/html.hpp"
#include "serp_audit/ingest/normalize.hpp"
#include "serp_audit/ingest/profile.hpp"

namespace serp_audit::ingest {

// Coordinates of the snapshot being parsed; everything the page itself
// cannot tell us.
struct SnapshotMeta {
  std::string agent_id;
  Engine engine;
  Region region;
  Browser browser;
  std::string query_term;
  int round_index = 0;
  Timestamp captured_at;
  int expected_count = 50;
};

// A result block that matched but could not become an item.
struct ItemIssue {
  int position = 0;  // 1-based on-page position of the offending block
  std::string reason;
};

// Extracts the ranked item list from an archived page. Items are taken in
// on-page order, identities normalized, duplicates dropped (first
// occurrence wins) and the list truncated to expected_count. Blocks whose
// URL or title cannot be normalized are quarantined into `issues`, not
// silently dropped. Throws ParseLayoutError when no rule matches anything
// and the page does not positively identify itself as empty.
inline RoundSnapshot parse_serp(std::string_view html, const EngineProfile& profile,
                                const SnapshotMeta& meta,
                                std::vector<ItemIssue>* issues = nullptr) {
  if (meta.engine != profile.engine)
    throw ConfigError("profile engine '" + std::string(profile.engine.name()) +
                      "' does not match snapshot engine '" + std::string(meta.engine.name()) + "'");

  RoundSnapshot snapshot;
  snapshot.agent_id = meta.agent_id;
  snapshot.engine = meta.engine;
  snapshot.region = meta.region;
  snapshot.browser = meta.browser;
  snapshot.query_term = meta.query_term;
  snapshot.round_index = meta.round_index;
  snapshot.captured_at = meta.captured_at;
  snapshot.expected_count = meta.expected_count;

  const auto doc = parse_html(html);

  bool any_container_matched = false;
  for (const auto& rule : profile.rules) {
    const auto containers = select_all(*doc, Selector::parse(rule.container));
    if (containers.empty()) continue;
    any_container_matched = true;

    const Selector link_sel = Selector::parse(rule.link);
    const Selector title_sel = Selector::parse(rule.title);
    IdentitySet seen;
    int position = 0;
    for (const HtmlNode* container : containers) {
      ++position;
      const HtmlNode* link = rule.link.empty() ? container : select_first(*container, link_sel);
      if (link == nullptr) {
        if (issues) issues->push_back({position, "no link node matched '" + rule.link + "'"});
        continue;
      }
      const std::string* raw_url = link->attr(rule.url_attribute);
      if (raw_url == nullptr || raw_url->empty()) {
        if (issues) issues->push_back({position, "link has no '" + rule.url_attribute + "' attribute"});
        continue;
      }
      const HtmlNode* title_node =
          rule.title.empty() ? link : select_first(*container, title_sel);
      if (title_node == nullptr) {
        if (issues) issues->push_back({position, "no title node matched '" + rule.title + "'"});
        continue;
      }

      ResultItem item;
      try {
        item.url = normalize_url(*raw_url);
      } catch (const NormalizationError& e) {
        if (issues) issues->push_back({position, e.what()});
        continue;
      }
      item.title = normalize_title(title_node->text_content());
      if (item.title.empty()) {
        if (issues) issues->push_back({position, "empty title after normalization"});
        continue;
      }
      if (!seen.insert(ItemIdentity{item.url, item.title}).second) continue;  // dup in round

      item.rank = static_cast<int>(snapshot.items.size()) + 1;
      snapshot.items.push_back(std::move(item));
      if (static_cast<int>(snapshot.items.size()) >= snapshot.expected_count) break;
    }
    if (!snapshot.items.empty()) break;  // this rule worked; ignore fallbacks
  }

  if (snapshot.items.empty() && !any_container_matched) {
    const bool legit_empty =
        !profile.empty_marker.empty() &&
        select_first(*doc, Selector::parse(profile.empty_marker)) != nullptr;
    if (!legit_empty)
      throw ParseLayoutError("no extraction rule of profile '" +
                             std::string(profile.engine.name()) +
                             "' matched any node and no empty-state marker found");
  }

  snapshot.status = derive_status(snapshot.items.size(), snapshot.expected_count);
  return snapshot;
}

}  // namespace serp_audit::ingest
