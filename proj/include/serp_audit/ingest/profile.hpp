#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "serp_audit/core/enums.hpp"
#include "serp_audit/error.hpp"

namespace serp_audit::ingest {

// One way of locating results on a page. Rules are tried in order; the
// first one whose container selector yields items wins, so a profile can
// carry fallbacks for older layouts.
struct ExtractionRule {
  std::string container;            // selects one result block per item
  std::string link;                 // selects the anchor within the block; empty = the block itself
  std::string title;                // selects the title node; empty = the link node
  std::string url_attribute = "href";
};

// Declarative description of how one engine's news page is scraped.
// Profiles are data: layout drift is handled by editing the config file,
// not the code.
struct EngineProfile {
  Engine engine;
  std::vector<ExtractionRule> rules;
  std::string empty_marker;  // selector that positively identifies a no-results page
  int max_results = 50;
};

struct ProfileSet {
  std::vector<EngineProfile> profiles;

  const EngineProfile* find(const Engine& engine) const {
    for (const auto& p : profiles)
      if (p.engine == engine) return &p;
    return nullptr;
  }
};

inline ProfileSet parse_profiles(const nlohmann::json& doc) {
  ProfileSet set;
  if (!doc.is_object() || !doc.contains("profiles") || !doc["profiles"].is_array())
    throw ConfigError("profiles config must be an object with a 'profiles' array");
  for (const auto& entry : doc["profiles"]) {
    EngineProfile profile;
    if (!entry.contains("engine") || !entry["engine"].is_string())
      throw ConfigError("profile entry missing 'engine'");
    profile.engine = Engine::from_name(entry["engine"].get<std::string>());
    profile.max_results = entry.value("max_results", 50);
    if (profile.max_results < 1)
      throw ConfigError("profile for '" + std::string(profile.engine.name()) +
                        "': max_results must be positive");
    profile.empty_marker = entry.value("empty_marker", std::string{});
    if (!entry.contains("rules") || !entry["rules"].is_array() || entry["rules"].empty())
      throw ConfigError("profile for '" + std::string(profile.engine.name()) +
                        "' needs at least one extraction rule");
    for (const auto& r : entry["rules"]) {
      ExtractionRule rule;
      rule.container = r.value("container", std::string{});
      if (rule.container.empty())
        throw ConfigError("extraction rule without 'container' in profile '" +
                          std::string(profile.engine.name()) + "'");
      rule.link = r.value("link", std::string{});
      rule.title = r.value("title", std::string{});
      rule.url_attribute = r.value("url_attribute", std::string{"href"});
      profile.rules.push_back(std::move(rule));
    }
    set.profiles.push_back(std::move(profile));
  }
  return set;
}

inline ProfileSet load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profiles file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("profiles file " + path.string() + ": " + e.what());
  }
  return parse_profiles(doc);
}

}  // namespace serp_audit::ingest
