#pragma once
// Partially ordered logical timestamps and antichain frontiers.
//
// Two concrete lattices are supported: scalar epochs (totally ordered) and
// one-level products (epoch, round) for iteration scopes, ordered
// coordinate-wise. Scalar times keep round == 0, so the coordinate-wise
// comparison applies uniformly to both kinds.
//
// Frontier compaction uses the representative function
//   rep(F, t) = glb over f in F of lub(t, f)
// which preserves how t compares to every time beyond F while mapping all
// times that compare identically onto one canonical representative.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "strata/common.hpp"

namespace strata {

enum class TimeKind : uint8_t { scalar, product };

struct Time {
  uint64_t epoch = 0;
  uint64_t round = 0;
  TimeKind kind = TimeKind::scalar;

  static Time scalar(uint64_t e) { return Time{e, 0, TimeKind::scalar}; }
  static Time product(uint64_t e, uint64_t r) { return Time{e, r, TimeKind::product}; }
  static Time minimum(TimeKind k) { return Time{0, 0, k}; }

  bool operator==(const Time& other) const {
    return kind == other.kind && epoch == other.epoch && round == other.round;
  }
  bool operator!=(const Time& other) const { return !(*this == other); }
};

inline void require_same_kind(const Time& a, const Time& b) {
  STRATA_REQUIRE(a.kind == b.kind, "time shape mismatch: scalar and product times cannot meet");
}

// Partial order: coordinate-wise. Reduces to epoch order for scalars.
inline bool less_equal(const Time& a, const Time& b) {
  require_same_kind(a, b);
  return a.epoch <= b.epoch && a.round <= b.round;
}

inline bool less_than(const Time& a, const Time& b) {
  return less_equal(a, b) && a != b;
}

inline Time lub(const Time& a, const Time& b) {
  require_same_kind(a, b);
  return Time{a.epoch > b.epoch ? a.epoch : b.epoch, a.round > b.round ? a.round : b.round, a.kind};
}

inline Time glb(const Time& a, const Time& b) {
  require_same_kind(a, b);
  return Time{a.epoch < b.epoch ? a.epoch : b.epoch, a.round < b.round ? a.round : b.round, a.kind};
}

// Canonical total order used for storage: lexicographic by coordinates.
// Any linear extension of the partial order works; this one is cheap and
// deterministic.
inline bool lex_less(const Time& a, const Time& b) {
  require_same_kind(a, b);
  if (a.epoch != b.epoch) return a.epoch < b.epoch;
  return a.round < b.round;
}

std::string to_string(const Time& t);

// Minimal set of pairwise-incomparable times. The empty antichain means
// "no future times" (a closed input). Elements are kept in canonical order.
class Antichain {
 public:
  Antichain() = default;
  explicit Antichain(const Time& t) { elems_.push_back(t); }
  Antichain(std::initializer_list<Time> ts) {
    for (const Time& t : ts) insert(t);
  }
  static Antichain minimum(TimeKind k) { return Antichain(Time::minimum(k)); }

  bool empty() const { return elems_.empty(); }
  size_t size() const { return elems_.size(); }
  const std::vector<Time>& elements() const { return elems_; }

  // True iff some element of the frontier is <= t.
  bool beyond(const Time& t) const {
    for (const Time& f : elems_)
      if (less_equal(f, t)) return true;
    return false;
  }

  // Minimal antichain of (this set) union {t}. Returns whether the set changed.
  bool insert(const Time& t);

  // Frontier order: every time beyond `other` is beyond this frontier.
  // Equivalently, every element of `other` is beyond this one.
  bool precedes(const Antichain& other) const {
    for (const Time& t : other.elems_)
      if (!beyond(t)) return false;
    return true;
  }

  // Lower envelope: minimal antichain of the union. The greatest frontier
  // preceding both inputs.
  Antichain meet(const Antichain& other) const {
    Antichain out = *this;
    for (const Time& t : other.elems_) out.insert(t);
    return out;
  }

  bool operator==(const Antichain& other) const { return elems_ == other.elems_; }
  bool operator!=(const Antichain& other) const { return !(*this == other); }

 private:
  std::vector<Time> elems_;
};

inline bool beyond(const Time& t, const Antichain& f) { return f.beyond(t); }

std::string to_string(const Antichain& f);

// Compaction representative: glb over f in F of lub(t, f). The identity for
// an empty frontier, since no reader has relaxed anything and no distinction
// may be coalesced.
Time rep(const Antichain& f, const Time& t);

// Grid-truncated indistinguishability oracle: true iff t1 and t2 compare
// identically to every time f <= bound that is beyond F. `bound` must
// dominate t1, t2, and every element of F; separating witnesses for these
// lattices are lubs of the inputs and frontier elements, which such a grid
// contains.
bool indistinguishable(const Antichain& f, const Time& t1, const Time& t2, const Time& bound);

}  // namespace strata
