#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "serp_audit/core/snapshot.hpp"
#include "serp_audit/error.hpp"
#include "serp_audit/util/fsio.hpp"

// The snapshot log: one JSON record per line (*.snapshots.jsonl). This is
// the interchange format between collection, the metric pipeline and any
// external tooling, so both directions live here and round-trip exactly.

namespace serp_audit::ingest {

inline constexpr std::string_view kSnapshotSchemaVersion = "1";
inline constexpr std::string_view kSnapshotLogExtension = ".snapshots.jsonl";

inline nlohmann::json snapshot_to_json(const RoundSnapshot& s) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : s.items) {
    items.push_back({{"rank", item.rank}, {"url", item.url}, {"title", item.title}});
  }
  // nlohmann::json keeps object keys sorted, which makes this canonical:
  // serializing a parsed record reproduces the original line byte for byte.
  return nlohmann::json{
      {"schema_version", kSnapshotSchemaVersion},
      {"agent_id", s.agent_id},
      {"engine", s.engine.name()},
      {"region", s.region.name()},
      {"browser", s.browser.name()},
      {"query_term", s.query_term},
      {"round_index", s.round_index},
      {"captured_at", s.captured_at.to_rfc3339()},
      {"expected_count", s.expected_count},
      {"status", to_string(s.status)},
      {"items", std::move(items)},
  };
}

inline std::string snapshot_to_line(const RoundSnapshot& s) {
  return snapshot_to_json(s).dump();
}

// Throws SchemaError with a field-level diagnostic.
inline RoundSnapshot snapshot_from_json(const nlohmann::json& j) {
  const auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    return j.at(key);
  };
  const auto str = [&](const char* key) {
    const auto& v = need(key);
    if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  };
  const auto integer = [&](const char* key) {
    const auto& v = need(key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
  };

  if (str("schema_version") != kSnapshotSchemaVersion)
    throw SchemaError("unsupported schema_version '" + str("schema_version") + "' (expected '" +
                      std::string(kSnapshotSchemaVersion) + "')");

  RoundSnapshot s;
  s.agent_id = str("agent_id");
  s.engine = Engine::from_name(str("engine"));
  s.region = Region::from_name(str("region"));
  s.browser = Browser::from_name(str("browser"));
  s.query_term = str("query_term");
  s.round_index = integer("round_index");
  s.captured_at = Timestamp::parse_or_throw(str("captured_at"));
  s.expected_count = integer("expected_count");

  const std::string status = str("status");
  if (status == "complete") s.status = SnapshotStatus::Complete;
  else if (status == "incomplete") s.status = SnapshotStatus::Incomplete;
  else if (status == "missing") s.status = SnapshotStatus::Missing;
  else throw SchemaError("unknown status '" + status + "'");

  const auto& items = need("items");
  if (!items.is_array()) throw SchemaError("field 'items' must be an array");
  for (const auto& entry : items) {
    ResultItem item;
    if (!entry.is_object() || !entry.contains("rank") || !entry.contains("url") ||
        !entry.contains("title"))
      throw SchemaError("item entries need rank, url and title");
    if (!entry["rank"].is_number_integer()) throw SchemaError("item rank must be an integer");
    item.rank = entry["rank"].get<int>();
    item.url = entry["url"].get<std::string>();
    item.title = entry["title"].get<std::string>();
    s.items.push_back(std::move(item));
  }

  if (auto problem = validate(s)) throw SchemaError(*problem);
  return s;
}

struct RejectRecord {
  std::size_t line = 0;  // 1-based line number in the source
  std::string reason;
  std::string raw;  // the offending line, verbatim
};

inline std::string reject_to_line(const RejectRecord& r) {
  nlohmann::json j{{"line", r.line}, {"reason", r.reason}};
  // keep the original record when it was at least valid JSON
  auto parsed = nlohmann::json::parse(r.raw, nullptr, false);
  if (parsed.is_discarded()) j["raw"] = r.raw;
  else j["record"] = std::move(parsed);
  return j.dump();
}

struct SnapshotStreams {
  struct Stream {
    std::string agent_id;
    std::string query_term;
    std::vector<RoundSnapshot> rounds;  // strictly increasing round_index, gaps filled
  };
  std::vector<Stream> streams;  // sorted by (agent_id, query_term)
  std::vector<RejectRecord> rejects;
  std::size_t record_count = 0;  // accepted records (synthesized gaps not counted)
};

// Reads a snapshot log: validates every record, quarantines violations
// with their line numbers, groups by (agent, term), sorts by round_index
// and fills index gaps with synthesized Missing snapshots so the discard
// rules fire downstream. A schema_version mismatch is fatal.
inline SnapshotStreams read_snapshots(std::istream& in) {
  SnapshotStreams out;
  std::map<std::pair<std::string, std::string>, std::vector<RoundSnapshot>> groups;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      out.rejects.push_back({line_no, "invalid JSON", line});
      continue;
    }
    try {
      RoundSnapshot s = snapshot_from_json(j);
      groups[{s.agent_id, s.query_term}].push_back(std::move(s));
      ++out.record_count;
    } catch (const SchemaError& e) {
      const std::string reason = e.what();
      if (reason.find("schema_version") != std::string::npos)
        throw SchemaError("line " + std::to_string(line_no) + ": " + reason);
      out.rejects.push_back({line_no, reason, line});
    }
  }

  for (auto& [key, rounds] : groups) {
    std::stable_sort(rounds.begin(), rounds.end(),
                     [](const RoundSnapshot& a, const RoundSnapshot& b) {
                       return a.round_index < b.round_index;
                     });
    SnapshotStreams::Stream stream;
    stream.agent_id = key.first;
    stream.query_term = key.second;
    for (auto& snap : rounds) {
      if (!stream.rounds.empty()) {
        const RoundSnapshot& prev = stream.rounds.back();
        if (snap.round_index == prev.round_index) {
          out.rejects.push_back({0, "duplicate round_index " + std::to_string(snap.round_index) +
                                        " for agent '" + snap.agent_id + "' term '" +
                                        snap.query_term + "'",
                                 snapshot_to_line(snap)});
          --out.record_count;
          continue;
        }
        // fill the gap with Missing rounds; timestamps interpolate linearly
        const int gap = snap.round_index - prev.round_index;
        for (int k = 1; k < gap; ++k) {
          RoundSnapshot missing;
          missing.agent_id = snap.agent_id;
          missing.engine = snap.engine;
          missing.region = snap.region;
          missing.browser = snap.browser;
          missing.query_term = snap.query_term;
          missing.round_index = prev.round_index + k;
          missing.captured_at = Timestamp{prev.captured_at.secs +
                                          (snap.captured_at.secs - prev.captured_at.secs) * k / gap};
          missing.expected_count = snap.expected_count;
          missing.status = SnapshotStatus::Missing;
          missing.synthesized = true;
          stream.rounds.push_back(std::move(missing));
        }
      }
      stream.rounds.push_back(std::move(snap));
    }
    out.streams.push_back(std::move(stream));
  }
  return out;
}

inline SnapshotStreams read_snapshots_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot log: " + path.string());
  return read_snapshots(in);
}

inline void write_snapshot_log(const std::filesystem::path& path,
                               std::span<const RoundSnapshot> snapshots,
                               bool include_synthesized = false) {
  std::string buffer;
  for (const auto& s : snapshots) {
    if (s.synthesized && !include_synthesized) continue;
    buffer += snapshot_to_line(s);
    buffer.push_back('\n');
  }
  util::atomic_write_file(path, buffer);
}

inline void write_rejects(const std::filesystem::path& path,
                          std::span<const RejectRecord> rejects) {
  std::string buffer;
  for (const auto& r : rejects) {
    buffer += reject_to_line(r);
    buffer.push_back('\n');
  }
  util::atomic_write_file(path, buffer);
}

}  // namespace serp_audit::ingest
