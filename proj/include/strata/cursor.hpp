#pragma once
// Ordered navigation over one batch or the union of several.
//
// Cursors enumerate keys in ascending canonical order, values ascending
// within a key, and expose each value's (time, diff) history. The merged
// cursor concatenates histories per (key, val) across batches. Seeks use
// binary search; every step and probe is counted so callers can assert
// work proportionality.

#include <algorithm>
#include <functional>
#include <vector>

#include "strata/batch.hpp"

namespace strata {

struct CursorStats {
  uint64_t key_steps = 0;
  uint64_t val_steps = 0;
  uint64_t seek_probes = 0;
  uint64_t time_visits = 0;

  uint64_t advances() const { return key_steps + val_steps + seek_probes; }
};

class BatchCursor {
 public:
  BatchCursor(BatchPtr batch, CursorStats* stats) : batch_(std::move(batch)), stats_(stats) {
    val_ = cols().keys.empty() ? 0 : cols().key_val_bounds[0];
  }

  bool key_valid() const { return key_ < cols().keys.size(); }
  const Datum& key() const { return cols().keys[key_]; }

  void step_key() {
    if (!key_valid()) return;
    ++key_;
    if (stats_) ++stats_->key_steps;
    rewind_vals();
  }

  // Positions at the first key >= target.
  void seek_key(const Datum& target) {
    size_t lo = key_, hi = cols().keys.size();
    while (lo < hi) {
      size_t mid = lo + (hi - lo) / 2;
      if (stats_) ++stats_->seek_probes;
      if (cols().keys[mid] < target)
        lo = mid + 1;
      else
        hi = mid;
    }
    key_ = lo;
    rewind_vals();
  }

  bool val_valid() const { return key_valid() && val_ < cols().key_val_bounds[key_ + 1]; }
  const Datum& val() const { return cols().vals[val_]; }

  void step_val() {
    if (!val_valid()) return;
    ++val_;
    if (stats_) ++stats_->val_steps;
  }

  void rewind_vals() { val_ = key_valid() ? cols().key_val_bounds[key_] : 0; }

  // Visits each (time, diff) of the current (key, val).
  template <typename Fn>
  void map_times(Fn&& fn) const {
    STRATA_REQUIRE(val_valid(), "cursor: map_times past the end");
    for (uint32_t h = cols().val_hist_bounds[val_]; h < cols().val_hist_bounds[val_ + 1]; ++h) {
      if (stats_) ++stats_->time_visits;
      fn(cols().times[h], cols().diffs[h]);
    }
  }

  size_t key_count() const { return cols().keys.size(); }

 private:
  const Batch::Columns& cols() const { return batch_->columns(); }

  BatchPtr batch_;
  size_t key_ = 0;
  size_t val_ = 0;
  CursorStats* stats_;
};

// Union view over an ordered set of batches, with optional (key, val)
// filtering and time translation for arrangement wrappers.
class MergedCursor {
 public:
  using Predicate = std::function<bool(const Datum& key, const Datum& val)>;
  using TimeMap = std::function<Time(const Time&)>;

  MergedCursor(const std::vector<BatchPtr>& batches, CursorStats* stats,
               Predicate predicate = nullptr, TimeMap time_map = nullptr)
      : predicate_(std::move(predicate)), time_map_(std::move(time_map)) {
    for (const BatchPtr& b : batches)
      if (!b->empty()) subs_.emplace_back(b, stats);
    settle_key();
  }

  bool key_valid() const { return !at_key_.empty(); }
  const Datum& key() const { return subs_[at_key_.front()].key(); }

  void step_key() {
    for (size_t i : at_key_) subs_[i].step_key();
    settle_key();
  }

  void seek_key(const Datum& target) {
    for (BatchCursor& sub : subs_)
      if (sub.key_valid() && sub.key() < target) sub.seek_key(target);
    settle_key();
  }

  bool val_valid() const { return !at_val_.empty(); }
  const Datum& val() const { return subs_[at_val_.front()].val(); }

  void step_val() {
    for (size_t i : at_val_) subs_[i].step_val();
    settle_val();
  }

  void rewind_vals() {
    for (size_t i : at_key_) subs_[i].rewind_vals();
    settle_val();
  }

  // Histories from every batch holding the current (key, val), visited in
  // canonical time order.
  template <typename Fn>
  void map_times(Fn&& fn) const {
    STRATA_REQUIRE(val_valid(), "cursor: map_times past the end");
    if (at_val_.size() == 1) {
      visit_one(at_val_.front(), fn);
      return;
    }
    std::vector<std::pair<Time, int64_t>> gathered;
    for (size_t i : at_val_)
      subs_[i].map_times([&](const Time& t, int64_t d) { gathered.emplace_back(t, d); });
    std::sort(gathered.begin(), gathered.end(),
              [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    for (const auto& [t, d] : gathered) fn(time_map_ ? time_map_(t) : t, d);
  }

  // Sum of diffs at the current (key, val) over history entries <= t.
  int64_t accumulate_until(const Time& t) const {
    int64_t total = 0;
    map_times([&](const Time& ht, int64_t d) {
      if (less_equal(ht, t)) total = checked_add(total, d);
    });
    return total;
  }

 private:
  template <typename Fn>
  void visit_one(size_t idx, Fn&& fn) const {
    subs_[idx].map_times([&](const Time& t, int64_t d) { fn(time_map_ ? time_map_(t) : t, d); });
  }

  // Recomputes the current key as the minimum over sub-cursors, skipping
  // keys where no value passes the predicate.
  void settle_key() {
    for (;;) {
      at_key_.clear();
      const Datum* min_key = nullptr;
      for (size_t i = 0; i < subs_.size(); ++i) {
        if (!subs_[i].key_valid()) continue;
        if (!min_key || subs_[i].key() < *min_key) {
          min_key = &subs_[i].key();
          at_key_.clear();
          at_key_.push_back(i);
        } else if (subs_[i].key() == *min_key) {
          at_key_.push_back(i);
        }
      }
      if (!min_key) {
        at_val_.clear();
        return;
      }
      rewind_vals();
      if (val_valid()) return;
      for (size_t i : at_key_) subs_[i].step_key();
    }
  }

  void settle_val() {
    for (;;) {
      at_val_.clear();
      const Datum* min_val = nullptr;
      for (size_t i : at_key_) {
        if (!subs_[i].val_valid()) continue;
        if (!min_val || subs_[i].val() < *min_val) {
          min_val = &subs_[i].val();
          at_val_.clear();
          at_val_.push_back(i);
        } else if (subs_[i].val() == *min_val) {
          at_val_.push_back(i);
        }
      }
      if (!min_val) return;
      if (!predicate_ || predicate_(key(), *min_val)) return;
      for (size_t i : at_val_) subs_[i].step_val();
    }
  }

  std::vector<BatchCursor> subs_;
  std::vector<size_t> at_key_;
  std::vector<size_t> at_val_;
  Predicate predicate_;
  TimeMap time_map_;
};

}  // namespace strata
