#pragma once

#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "serp_audit/error.hpp"

namespace serp_audit {

namespace detail {

// Howard Hinnant's civil calendar algorithms.
constexpr std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int yoe = static_cast<int>(y - era * 400);
  const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

struct Civil {
  std::int64_t year;
  int month, day, hour, minute, second;
};

constexpr Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const int doe = static_cast<int>(z - era * 146097);
  const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = yoe + era * 400;
  const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const int mp = (5 * doy + 2) / 153;
  const int d = doy - (153 * mp + 2) / 5 + 1;
  const int m = mp + (mp < 10 ? 3 : -9);
  return Civil{y + (m <= 2), m, d, 0, 0, 0};
}

inline bool parse_digits(std::string_view s, std::size_t pos, int count, int& out) {
  if (pos + count > s.size()) return false;
  int v = 0;
  for (int i = 0; i < count; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

// A UTC instant with second resolution. All timestamps in the toolkit are
// UTC; offsets in inputs are converted on parse.
struct Timestamp {
  std::int64_t secs = 0;  // seconds since the Unix epoch

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

  static constexpr Timestamp from_utc(std::int64_t year, int month, int day,
                                      int hour = 0, int minute = 0, int second = 0) {
    return Timestamp{detail::days_from_civil(year, month, day) * 86400 +
                     hour * 3600 + minute * 60 + second};
  }

  // "2020-11-03T12:31:00Z". Accepts 'Z'/'z', '+HH:MM'/'-HH:MM' offsets and
  // an optional fractional second part (truncated).
  static std::optional<Timestamp> parse(std::string_view s) {
    using detail::parse_digits;
    int year, month, day, hour, minute, second;
    if (!parse_digits(s, 0, 4, year) || s.size() < 20) return std::nullopt;
    if (s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_digits(s, 5, 2, month) || !parse_digits(s, 8, 2, day)) return std::nullopt;
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
    if (!parse_digits(s, 11, 2, hour) || s[13] != ':' ||
        !parse_digits(s, 14, 2, minute) || s[16] != ':' ||
        !parse_digits(s, 17, 2, second)) {
      return std::nullopt;
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
        minute > 59 || second > 60) {
      return std::nullopt;
    }
    if (second == 60) second = 59;  // leap second: clamp
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      std::size_t digits = 0;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        ++pos;
        ++digits;
      }
      if (digits == 0) return std::nullopt;
    }
    if (pos >= s.size()) return std::nullopt;
    std::int64_t offset = 0;
    if (s[pos] == 'Z' || s[pos] == 'z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      int oh, om;
      if (pos + 6 > s.size() || !parse_digits(s, pos + 1, 2, oh) ||
          s[pos + 3] != ':' || !parse_digits(s, pos + 4, 2, om)) {
        return std::nullopt;
      }
      offset = (s[pos] == '+' ? 1 : -1) * (oh * 3600 + om * 60);
      pos += 6;
    } else {
      return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    return Timestamp{detail::days_from_civil(year, month, day) * 86400 +
                     hour * 3600 + minute * 60 + second - offset};
  }

  static Timestamp parse_or_throw(std::string_view s) {
    auto t = parse(s);
    if (!t) throw SchemaError("invalid RFC 3339 timestamp: '" + std::string(s) + "'");
    return *t;
  }

  std::string to_rfc3339() const {
    std::int64_t days = secs / 86400;
    std::int64_t rem = secs % 86400;
    if (rem < 0) {
      rem += 86400;
      days -= 1;
    }
    detail::Civil c = detail::civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02d-%02dT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(c.year), c.month, c.day,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
  }
};

constexpr std::int64_t minutes(std::int64_t m) { return m * 60; }
constexpr std::int64_t hours(std::int64_t h) { return h * 3600; }

}  // namespace serp_audit
