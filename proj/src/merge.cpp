#include "strata/merge.hpp"

#include <algorithm>

namespace strata {

InProgressMerge::InProgressMerge(BatchPtr first, BatchPtr second, Antichain since)
    : first_(std::move(first)),
      second_(std::move(second)),
      since_(std::move(since)),
      walk_first_(*first_),
      walk_second_(*second_) {
  STRATA_REQUIRE(first_->description().upper == second_->description().lower,
                 "merge: batches are not adjacent");
}

void InProgressMerge::absorb(Update u) {
  u.time = rep(since_, u.time);
  if (!group_open_ || group_key_ != u.key || group_val_ != u.val) {
    flush_group();
    group_key_ = u.key;
    group_val_ = u.val;
    group_open_ = true;
  }
  group_hist_.emplace_back(u.time, u.diff);
}

void InProgressMerge::flush_group() {
  if (!group_open_) return;
  // rep is monotone in the partial order but not in the canonical total
  // order, so mapped times need a re-sort before coalescing.
  std::sort(group_hist_.begin(), group_hist_.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  size_t start = output_.size();
  for (const auto& [t, d] : group_hist_) {
    if (testing::g_skip_consolidation) {
      output_.push_back(Update{group_key_, group_val_, t, d});
      continue;
    }
    if (output_.size() > start && output_.back().time == t) {
      output_.back().diff = checked_add(output_.back().diff, d);
    } else {
      output_.push_back(Update{group_key_, group_val_, t, d});
    }
  }
  if (!testing::g_skip_consolidation) {
    auto keep_end = std::remove_if(output_.begin() + start, output_.end(),
                                   [](const Update& u) { return u.diff == 0; });
    output_.erase(keep_end, output_.end());
  }
  group_hist_.clear();
  group_open_ = false;
}

BatchPtr InProgressMerge::step(uint64_t fuel, uint64_t* consumed) {
  STRATA_REQUIRE(!done_, "merge: stepping a completed merge");
  uint64_t spent = 0;
  while (spent < fuel && (walk_first_.has() || walk_second_.has())) {
    Walk* side;
    if (!walk_second_.has()) {
      side = &walk_first_;
    } else if (!walk_first_.has()) {
      side = &walk_second_;
    } else {
      // Smaller (key, val) first; ties go to the older batch.
      const auto a = std::tie(walk_first_.cur_key(), walk_first_.cur_val());
      const auto b = std::tie(walk_second_.cur_key(), walk_second_.cur_val());
      side = (b < a) ? &walk_second_ : &walk_first_;
    }
    absorb(side->take());
    ++spent;
  }
  examined_ += spent;
  if (consumed) *consumed = spent;
  if (walk_first_.has() || walk_second_.has()) return nullptr;

  flush_group();
  done_ = true;
  BatchDescription desc{first_->description().lower, second_->description().upper, since_};
  BatchPtr merged = batch_from_sorted(std::move(desc), first_->kind(), output_);
  output_.clear();
  output_.shrink_to_fit();
  return merged;
}

}  // namespace strata
