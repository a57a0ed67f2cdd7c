#pragma once
// The update triple (key, val, time, diff) and the canonical byte encoding
// for keys and values.
//
// Keys and values are opaque byte strings compared lexicographically.
// Unsigned integers encode big-endian so byte order equals numeric order;
// composite values concatenate fixed-width fields and therefore compare
// field by field.

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "strata/time.hpp"

namespace strata {

using Datum = std::string;

struct Update {
  Datum key;
  Datum val;
  Time time;
  int64_t diff = 0;

  bool operator==(const Update& other) const {
    return key == other.key && val == other.val && time == other.time && diff == other.diff;
  }
};

// Storage order: (key, val, time) under the canonical total order on times.
inline bool canonical_update_order(const Update& a, const Update& b) {
  if (a.key != b.key) return a.key < b.key;
  if (a.val != b.val) return a.val < b.val;
  if (a.time != b.time) return lex_less(a.time, b.time);
  return false;
}

inline bool same_position(const Update& a, const Update& b) {
  return a.key == b.key && a.val == b.val && a.time == b.time;
}

inline Datum encode_u64(uint64_t v) {
  Datum out(8, '\0');
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<char>(v & 0xff);
    v >>= 8;
  }
  return out;
}

inline uint64_t decode_u64(const Datum& d, size_t offset = 0) {
  STRATA_REQUIRE(d.size() >= offset + 8, "decode_u64: datum too short");
  uint64_t v = 0;
  for (size_t i = 0; i < 8; ++i) v = (v << 8) | static_cast<uint8_t>(d[offset + i]);
  return v;
}

inline Datum encode_pair(uint64_t a, uint64_t b) { return encode_u64(a) + encode_u64(b); }

inline std::pair<uint64_t, uint64_t> decode_pair(const Datum& d) {
  return {decode_u64(d, 0), decode_u64(d, 8)};
}

// Checked diff addition; silent wraparound would corrupt accumulations.
inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t out;
  STRATA_CHECK(!__builtin_add_overflow(a, b, &out), "diff overflow: ", a, " + ", b);
  return out;
}

// FNV-1a over the canonical key bytes; deterministic, seed-free routing.
inline uint64_t fnv1a(const Datum& bytes) {
  uint64_t hash = 1469598103934665603ull;
  for (char c : bytes) {
    hash ^= static_cast<uint8_t>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string to_string(const Update& u);

}  // namespace strata
