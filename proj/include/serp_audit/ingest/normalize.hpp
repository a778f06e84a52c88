#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/stringpiece.h>
#include <unicode/utypes.h>

#include "serp_audit/error.hpp"
#include "serp_audit/util/strings.hpp"

namespace serp_audit::ingest {

namespace detail {

// Decodes one UTF-8 code point at pos; advances pos. Invalid bytes decode
// as U+FFFD one byte at a time.
inline char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xe0) == 0xc0) {
    len = 2;
    cp = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    len = 3;
    cp = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xfffd;
  }
  if (pos + len > s.size()) {
    ++pos;
    return 0xfffd;
  }
  for (int i = 1; i < len; ++i) {
    if ((byte(pos + i) & 0xc0) != 0x80) {
      ++pos;
      return 0xfffd;
    }
    cp = (cp << 6) | (byte(pos + i) & 0x3f);
  }
  pos += len;
  return cp;
}

inline void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

// Unicode White_Space plus the odd NBSP that survives entity decoding.
inline bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d: case 0x20:
    case 0x85: case 0xa0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202f: case 0x205f: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;
  }
}

inline std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || norm == nullptr) return std::string(s);  // degrade, never crash
  std::string out;
  icu::StringByteSink<std::string> sink(&out);
  status = U_ZERO_ERROR;
  norm->normalizeUTF8(0, icu::StringPiece(s.data(), static_cast<int32_t>(s.size())), sink,
                      nullptr, status);
  if (U_FAILURE(status)) return std::string(s);
  return out;
}

}  // namespace detail

// Canonical form of a title for identity matching: NFC, surrounding
// whitespace removed, internal whitespace runs (including NBSP and friends)
// collapsed to single spaces. Case is preserved; differently-cased titles
// are different items. Returns "" for whitespace-only input; the caller
// quarantines such items.
inline std::string normalize_title(std::string_view raw) {
  const std::string composed = detail::nfc(raw);
  std::string out;
  out.reserve(composed.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < composed.size()) {
    const char32_t cp = detail::decode_utf8(composed, pos);
    if (detail::is_unicode_space(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    detail::encode_utf8(cp, out);
  }
  return out;
}

// Canonical form of a URL for identity matching. Scheme and host are
// lowercased and the fragment dropped; everything else - path, query
// string, percent-encoding - is kept verbatim, because live-coverage and
// pagination parameters distinguish genuinely different items.
// Throws NormalizationError for relative or unparseable input.
inline std::string normalize_url(std::string_view raw) {
  const std::string_view s = util::trim(raw);
  if (s.empty()) throw NormalizationError("empty URL");

  // scheme = ALPHA *(ALPHA / DIGIT / '+' / '-' / '.')
  std::size_t scheme_end = 0;
  if (std::isalpha(static_cast<unsigned char>(s[0]))) {
    scheme_end = 1;
    while (scheme_end < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[scheme_end])) ||
            s[scheme_end] == '+' || s[scheme_end] == '-' || s[scheme_end] == '.')) {
      ++scheme_end;
    }
  }
  if (scheme_end == 0 || scheme_end + 2 >= s.size() || s[scheme_end] != ':' ||
      s[scheme_end + 1] != '/' || s[scheme_end + 2] != '/') {
    throw NormalizationError("not an absolute URL: '" + std::string(raw) + "'");
  }

  const std::size_t authority_start = scheme_end + 3;
  std::size_t authority_end = s.find_first_of("/?#", authority_start);
  if (authority_end == std::string_view::npos) authority_end = s.size();
  std::string_view authority = s.substr(authority_start, authority_end - authority_start);

  std::string_view userinfo;
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = authority.substr(0, at + 1);  // keep the '@'
    authority.remove_prefix(at + 1);
  }
  // split host vs port, minding IPv6 brackets
  std::string_view host = authority;
  std::string_view port;
  if (!authority.empty() && authority.front() == '[') {
    const auto close = authority.find(']');
    if (close == std::string_view::npos)
      throw NormalizationError("unterminated IPv6 host in '" + std::string(raw) + "'");
    host = authority.substr(0, close + 1);
    port = authority.substr(close + 1);
  } else if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    port = authority.substr(colon);
  }
  if (host.empty()) throw NormalizationError("URL has no host: '" + std::string(raw) + "'");

  std::string_view rest = s.substr(authority_end);
  if (const auto hash = rest.find('#'); hash != std::string_view::npos)
    rest = rest.substr(0, hash);

  std::string out;
  out.reserve(s.size());
  out += util::to_lower(s.substr(0, scheme_end));
  out += "://";
  out += userinfo;
  out += util::to_lower(host);
  out += port;
  out += rest;
  return out;
}

}  // namespace serp_audit::ingest
