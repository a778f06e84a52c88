#pragma once

#include <cstdint>
#include <string_view>

namespace serp_audit::util {

// FNV-1a. Used wherever a hash value feeds deterministic output (seed
// derivation, identity sets); std::hash is not stable across platforms.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace serp_audit::util
