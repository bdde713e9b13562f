#pragma once

// Stable hashing for seeds and digests. Values must not change across
// platforms or releases: run directories and checkpoints are keyed on them.

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace ota {

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for (global seed, stage name, item id).
inline std::uint64_t derive_seed(std::uint64_t global, std::string_view stage, std::string_view id = {}) {
  std::uint64_t h = fnv1a64(std::to_string(global));
  h = fnv1a64("|", h);
  h = fnv1a64(stage, h);
  h = fnv1a64("|", h);
  h = fnv1a64(id, h);
  return splitmix64(h);
}

inline std::uint64_t derive_seed(std::uint64_t global, std::string_view stage, std::uint64_t id) {
  return derive_seed(global, stage, std::to_string(id));
}

inline std::string hex_digest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string digest_of(std::string_view bytes) { return hex_digest(fnv1a64(bytes)); }

}  // namespace ota
