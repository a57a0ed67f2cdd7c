#pragma once
// Fuel-metered merge of two adjacent batches.
//
// Work is charged in "updates examined": each call consumes up to the given
// fuel, one unit per input update, and suspends between (and within) key
// groups. The completed batch holds the consolidation of both inputs under
// the compaction frontier captured when the merge began, described by
// (first.lower, second.upper, that frontier).

#include <memory>
#include <vector>

#include "strata/batch.hpp"

namespace strata {

class InProgressMerge {
 public:
  InProgressMerge(BatchPtr first, BatchPtr second, Antichain since);

  // Consumes up to `fuel` units; `consumed` reports the units actually spent.
  // Returns the merged batch on completion, nullptr while in progress.
  BatchPtr step(uint64_t fuel, uint64_t* consumed = nullptr);

  bool complete() const { return done_; }
  uint64_t examined() const { return examined_; }
  const BatchPtr& first() const { return first_; }
  const BatchPtr& second() const { return second_; }
  size_t resident_updates() const { return first_->size() + second_->size() + output_.size(); }

 private:
  // Linear walk over a batch's updates in canonical order.
  struct Walk {
    const Batch::Columns* cols = nullptr;
    size_t key = 0;
    uint32_t val = 0;
    uint32_t hist = 0;

    explicit Walk(const Batch& b) : cols(&b.columns()) {}
    bool has() const { return hist < cols->times.size(); }
    const Datum& cur_key() const { return cols->keys[key]; }
    const Datum& cur_val() const { return cols->vals[val]; }
    Update take() {
      Update u{cols->keys[key], cols->vals[val], cols->times[hist], cols->diffs[hist]};
      ++hist;
      if (hist == cols->val_hist_bounds[val + 1]) {
        ++val;
        if (val == cols->key_val_bounds[key + 1]) ++key;
      }
      return u;
    }
  };

  void absorb(Update u);
  void flush_group();

  BatchPtr first_;
  BatchPtr second_;
  Antichain since_;
  Walk walk_first_;
  Walk walk_second_;

  // Current (key, val) group: times already rep-mapped, not yet coalesced.
  Datum group_key_;
  Datum group_val_;
  bool group_open_ = false;
  std::vector<std::pair<Time, int64_t>> group_hist_;

  std::vector<Update> output_;
  uint64_t examined_ = 0;
  bool done_ = false;
};

}  // namespace strata
