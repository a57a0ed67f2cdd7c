#include "strata/time.hpp"

#include <algorithm>

namespace strata {

std::string to_string(const Time& t) {
  if (t.kind == TimeKind::scalar) return concat(t.epoch);
  return concat("(", t.epoch, ",", t.round, ")");
}

std::string to_string(const Antichain& f) {
  std::string out = "{";
  bool first = true;
  for (const Time& t : f.elements()) {
    if (!first) out += ",";
    out += to_string(t);
    first = false;
  }
  out += "}";
  return out;
}

bool Antichain::insert(const Time& t) {
  if (beyond(t)) return false;  // dominated by an existing element
  // t enters; drop every element it dominates.
  elems_.erase(std::remove_if(elems_.begin(), elems_.end(),
                              [&](const Time& e) { return less_equal(t, e); }),
               elems_.end());
  auto pos = std::lower_bound(elems_.begin(), elems_.end(), t, lex_less);
  elems_.insert(pos, t);
  return true;
}

Time rep(const Antichain& f, const Time& t) {
  if (f.empty()) return t;
  bool first = true;
  Time acc = t;
  for (const Time& elem : f.elements()) {
    Time up = lub(t, elem);
    acc = first ? up : glb(acc, up);
    first = false;
  }
  return acc;
}

namespace {

// Visits every grid point g <= bound, in no particular order.
template <typename Fn>
void for_each_grid_point(const Time& bound, Fn&& fn) {
  if (bound.kind == TimeKind::scalar) {
    for (uint64_t e = 0; e <= bound.epoch; ++e) fn(Time::scalar(e));
  } else {
    for (uint64_t e = 0; e <= bound.epoch; ++e)
      for (uint64_t r = 0; r <= bound.round; ++r) fn(Time::product(e, r));
  }
}

}  // namespace

bool indistinguishable(const Antichain& f, const Time& t1, const Time& t2, const Time& bound) {
  STRATA_REQUIRE(less_equal(t1, bound) && less_equal(t2, bound),
                 "indistinguishable: bound must dominate both times");
  for (const Time& elem : f.elements())
    STRATA_REQUIRE(less_equal(elem, bound), "indistinguishable: bound must dominate the frontier");
  bool same = true;
  for_each_grid_point(bound, [&](const Time& g) {
    if (!f.beyond(g)) return;
    if (less_equal(t1, g) != less_equal(t2, g)) same = false;
  });
  return same;
}

}  // namespace strata
