#pragma once
// Independent reference implementations used to derive expected test values.
// Everything here recomputes results from first principles (grid enumeration,
// brute-force accumulation, nested loops) and stays off the library's fast
// paths, so tests can compare the two routes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "strata/time.hpp"
#include "strata/update.hpp"

namespace oracles {

using strata::Antichain;
using strata::Time;
using strata::TimeKind;

template <typename Fn>
void for_each_grid_time(const Time& bound, Fn&& fn) {
  if (bound.kind == TimeKind::scalar) {
    for (uint64_t e = 0; e <= bound.epoch; ++e) fn(Time::scalar(e));
  } else {
    for (uint64_t e = 0; e <= bound.epoch; ++e)
      for (uint64_t r = 0; r <= bound.round; ++r) fn(Time::product(e, r));
  }
}

// Defining property of the compaction representative, checked exhaustively on
// the grid below `bound`: t and r compare identically to every grid time
// beyond the frontier.
inline bool representative_matches_on_grid(const Antichain& frontier, const Time& t, const Time& r,
                                           const Time& bound) {
  bool ok = true;
  for_each_grid_time(bound, [&](const Time& f) {
    if (!frontier.beyond(f)) return;
    if (strata::less_equal(t, f) != strata::less_equal(r, f)) ok = false;
  });
  return ok;
}

// A bound strictly dominating every coordinate in sight, with margin.
inline Time dominating_bound(const Antichain& frontier, std::initializer_list<Time> times,
                             uint64_t margin = 2) {
  uint64_t epoch = 0, round = 0;
  TimeKind kind = TimeKind::scalar;
  auto absorb = [&](const Time& t) {
    kind = t.kind;
    epoch = std::max(epoch, t.epoch);
    round = std::max(round, t.round);
  };
  for (const Time& t : frontier.elements()) absorb(t);
  for (const Time& t : times) absorb(t);
  return Time{epoch + margin, kind == TimeKind::product ? round + margin : 0, kind};
}

// Brute-force collection value: accumulate diffs of all updates at times <= t.
// Returns (key, val) -> count with zero counts removed.
inline std::map<std::pair<strata::Datum, strata::Datum>, int64_t> accumulate_at(
    const std::vector<strata::Update>& updates, const Time& t) {
  std::map<std::pair<strata::Datum, strata::Datum>, int64_t> acc;
  for (const strata::Update& u : updates) {
    if (!strata::less_equal(u.time, t)) continue;
    acc[{u.key, u.val}] += u.diff;
  }
  for (auto it = acc.begin(); it != acc.end();) {
    if (it->second == 0)
      it = acc.erase(it);
    else
      ++it;
  }
  return acc;
}

// Reference consolidation: map every time through rep(since, .), sum diffs of
// equal triples, drop zeros, and sort canonically.
inline std::vector<strata::Update> consolidate_reference(std::vector<strata::Update> updates,
                                                         const Antichain& since) {
  for (strata::Update& u : updates) u.time = strata::rep(since, u.time);
  std::map<std::tuple<strata::Datum, strata::Datum, uint64_t, uint64_t>, int64_t> acc;
  for (const strata::Update& u : updates)
    acc[{u.key, u.val, u.time.epoch, u.time.round}] += u.diff;
  std::vector<strata::Update> out;
  TimeKind kind = updates.empty() ? TimeKind::scalar : updates.front().time.kind;
  for (const auto& [k, diff] : acc) {
    if (diff == 0) continue;
    out.push_back(strata::Update{std::get<0>(k), std::get<1>(k),
                                 Time{std::get<2>(k), std::get<3>(k), kind}, diff});
  }
  std::sort(out.begin(), out.end(), strata::canonical_update_order);
  return out;
}

}  // namespace oracles
