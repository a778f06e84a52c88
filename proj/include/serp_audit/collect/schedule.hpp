#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "serp_audit/core/enums.hpp"
#include "serp_audit/error.hpp"
#include "serp_audit/time.hpp"

namespace serp_audit::collect {

struct AgentSpec {
  std::string agent_id;
  Engine engine;
  Region region;
  Browser browser;
  std::string category;
};

// Cadence and roster of one collection run. Rounds fire at
// start_at + k * round_period while the fire time is <= end_at; within a
// round, term k (1-based) fires at round_start + (k-1) * term_slot.
struct ScheduleConfig {
  std::int64_t round_period_secs = minutes(21);
  std::int64_t term_slot_secs = minutes(7);
  std::map<std::string, std::vector<std::string>> category_terms;
  Timestamp start_at;
  Timestamp end_at;
  std::vector<AgentSpec> agents;
};

struct FireEvent {
  std::string agent_id;
  std::string category;
  std::string query_term;
  int round_index = 0;
  int term_index = 0;  // 0-based slot within the round
  Timestamp fire_at;
};

struct SchedulePlan {
  ScheduleConfig config;
  int rounds = 0;
  std::vector<FireEvent> events;  // sorted by (fire_at, agent_id, term_index)
};

inline void validate(const ScheduleConfig& c) {
  if (c.end_at < c.start_at) throw ConfigError("schedule: end_at before start_at");
  if (c.round_period_secs <= 0) throw ConfigError("schedule: round_period must be positive");
  if (c.term_slot_secs <= 0) throw ConfigError("schedule: term_slot must be positive");
  for (const auto& [category, terms] : c.category_terms) {
    if (terms.empty()) throw ConfigError("schedule: category '" + category + "' has no terms");
    if (terms.size() > 3)
      throw ConfigError("schedule: category '" + category + "' has more than 3 terms");
    if (c.term_slot_secs * static_cast<std::int64_t>(terms.size()) > c.round_period_secs)
      throw ConfigError("schedule: terms of category '" + category +
                        "' overflow the round period");
  }
  for (const auto& agent : c.agents) {
    if (agent.agent_id.empty()) throw ConfigError("schedule: agent without id");
    if (!c.category_terms.contains(agent.category))
      throw ConfigError("schedule: agent '" + agent.agent_id + "' references unknown category '" +
                        agent.category + "'");
  }
}

inline int round_count(const ScheduleConfig& c) {
  return static_cast<int>((c.end_at.secs - c.start_at.secs) / c.round_period_secs) + 1;
}

// Pure function of the config: equal configs give identical timetables.
inline SchedulePlan build_plan(const ScheduleConfig& config) {
  validate(config);
  SchedulePlan plan;
  plan.config = config;
  plan.rounds = round_count(config);
  for (int round = 0; round < plan.rounds; ++round) {
    const std::int64_t round_start = config.start_at.secs + round * config.round_period_secs;
    for (const auto& agent : config.agents) {
      const auto& terms = config.category_terms.at(agent.category);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        plan.events.push_back({agent.agent_id, agent.category, terms[k], round,
                               static_cast<int>(k),
                               Timestamp{round_start + static_cast<std::int64_t>(k) *
                                                           config.term_slot_secs}});
      }
    }
  }
  std::sort(plan.events.begin(), plan.events.end(),
            [](const FireEvent& a, const FireEvent& b) {
              if (a.fire_at != b.fire_at) return a.fire_at < b.fire_at;
              if (a.agent_id != b.agent_id) return a.agent_id < b.agent_id;
              return a.term_index < b.term_index;
            });
  return plan;
}

// --- 2020 US election presets ------------------------------------------
// Eastern Time was UTC-5 throughout the collection (DST ended Nov 1).

inline const std::map<std::string, std::vector<std::string>>& election_2020_categories() {
  static const std::map<std::string, std::vector<std::string>> kCategories{
      {"us", {"joe biden", "donald trump", "us elections"}},
      {"topical", {"coronavirus", "poland abortion", "nagorno-karabakh conflict"}},
      {"stable", {"first world war", "holocaust", "virtual reality"}},
  };
  return kCategories;
}

namespace detail {

inline std::vector<AgentSpec> factorial_agents(const std::vector<std::string>& categories,
                                               int replicates) {
  static const Engine kEngines[] = {Engine(EngineTraits::Kind::Baidu),
                                    Engine(EngineTraits::Kind::Bing),
                                    Engine(EngineTraits::Kind::DuckDuckGo),
                                    Engine(EngineTraits::Kind::Google),
                                    Engine(EngineTraits::Kind::Yahoo)};
  static const Region kRegions[] = {Region(RegionTraits::Kind::Oregon),
                                    Region(RegionTraits::Kind::Frankfurt)};
  static const Browser kBrowsers[] = {Browser(BrowserTraits::Kind::Chrome),
                                      Browser(BrowserTraits::Kind::Firefox)};
  std::vector<AgentSpec> agents;
  int serial = 0;
  for (const auto& region : kRegions)
    for (const auto& browser : kBrowsers)
      for (const auto& engine : kEngines)
        for (const auto& category : categories)
          for (int rep = 0; rep < replicates; ++rep) {
            char id[32];
            std::snprintf(id, sizeof id, "agent-%03d", serial++);
            agents.push_back({id, engine, region, browser, category});
          }
  return agents;
}

}  // namespace detail

// Collection A: all nine terms, election day through the morning after,
// 80 rounds, 4 agents per engine x region x browser x category cell.
inline ScheduleConfig collection_a_config() {
  ScheduleConfig c;
  c.category_terms = election_2020_categories();
  c.start_at = Timestamp::from_utc(2020, 11, 3, 12, 31, 0);  // Nov 3, 07:31 ET
  c.end_at = Timestamp::from_utc(2020, 11, 4, 16, 10, 0);    // Nov 4, 11:10 ET
  c.agents = detail::factorial_agents({"us", "topical", "stable"}, 4);
  return c;
}

// Collection B: the US-category extension at reduced scale (1 agent per
// cell). Its cadence keeps collection A's 21-minute grid but the first
// round fires two slots after A's last one - the scale-down consumed one
// slot - which is what makes the window hold exactly 329 rounds, with the
// last fire landing on the documented end instant.
inline ScheduleConfig collection_b_config() {
  ScheduleConfig c;
  c.category_terms = {{"us", election_2020_categories().at("us")}};
  c.start_at = Timestamp::from_utc(2020, 11, 4, 16, 52, 0);  // Nov 4, 11:52 ET
  c.end_at = Timestamp::from_utc(2020, 11, 9, 11, 40, 0);    // Nov 9, 06:40 ET
  c.agents = detail::factorial_agents({"us"}, 1);
  return c;
}

// --- JSON (de)serialization ----------------------------------------------

inline nlohmann::json schedule_config_to_json(const ScheduleConfig& c) {
  nlohmann::json categories = nlohmann::json::object();
  for (const auto& [name, terms] : c.category_terms) categories[name] = terms;
  nlohmann::json agents = nlohmann::json::array();
  for (const auto& a : c.agents) {
    agents.push_back({{"agent_id", a.agent_id},
                      {"engine", a.engine.name()},
                      {"region", a.region.name()},
                      {"browser", a.browser.name()},
                      {"category", a.category}});
  }
  return nlohmann::json{{"round_period_secs", c.round_period_secs},
                        {"term_slot_secs", c.term_slot_secs},
                        {"categories", std::move(categories)},
                        {"start_at", c.start_at.to_rfc3339()},
                        {"end_at", c.end_at.to_rfc3339()},
                        {"agents", std::move(agents)}};
}

inline ScheduleConfig schedule_config_from_json(const nlohmann::json& j) {
  ScheduleConfig c;
  if (j.contains("preset")) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "collection-a") c = collection_a_config();
    else if (preset == "collection-b") c = collection_b_config();
    else throw ConfigError("unknown schedule preset '" + preset + "'");
  }
  if (j.contains("round_period_secs")) c.round_period_secs = j.at("round_period_secs").get<std::int64_t>();
  if (j.contains("term_slot_secs")) c.term_slot_secs = j.at("term_slot_secs").get<std::int64_t>();
  if (j.contains("start_at")) c.start_at = Timestamp::parse_or_throw(j.at("start_at").get<std::string>());
  if (j.contains("end_at")) c.end_at = Timestamp::parse_or_throw(j.at("end_at").get<std::string>());
  if (j.contains("categories")) {
    c.category_terms.clear();
    for (const auto& [name, terms] : j.at("categories").items()) {
      if (!terms.is_array()) throw ConfigError("schedule: category '" + name + "' must list terms");
      c.category_terms[name] = terms.get<std::vector<std::string>>();
    }
  }
  if (j.contains("agents")) {
    c.agents.clear();
    for (const auto& a : j.at("agents")) {
      c.agents.push_back({a.at("agent_id").get<std::string>(),
                          Engine::from_name(a.at("engine").get<std::string>()),
                          Region::from_name(a.at("region").get<std::string>()),
                          Browser::from_name(a.at("browser").get<std::string>()),
                          a.at("category").get<std::string>()});
    }
  }
  return c;
}

inline nlohmann::json plan_to_json(const SchedulePlan& plan) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : plan.events) {
    events.push_back({{"agent_id", e.agent_id},
                      {"category", e.category},
                      {"query_term", e.query_term},
                      {"round_index", e.round_index},
                      {"term_index", e.term_index},
                      {"fire_at", e.fire_at.to_rfc3339()}});
  }
  return nlohmann::json{{"config", schedule_config_to_json(plan.config)},
                        {"rounds", plan.rounds},
                        {"events", std::move(events)}};
}

}  // namespace serp_audit::collect
