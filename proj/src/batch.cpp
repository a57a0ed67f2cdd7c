#include "strata/batch.hpp"

#include <algorithm>

namespace strata {

namespace testing {
bool g_skip_consolidation = false;
}

std::string to_string(const Update& u) {
  return concat("(key=", u.key, ", val=", u.val, ", time=", to_string(u.time), ", diff=", u.diff,
                ")");
}

namespace {

std::shared_ptr<const Batch::Columns> build_columns(const std::vector<Update>& sorted) {
  auto cols = std::make_shared<Batch::Columns>();
  for (const Update& u : sorted) {
    if (cols->keys.empty() || cols->keys.back() != u.key) {
      cols->keys.push_back(u.key);
      cols->key_val_bounds.push_back(static_cast<uint32_t>(cols->vals.size()));
      cols->vals.push_back(u.val);
      cols->val_hist_bounds.push_back(static_cast<uint32_t>(cols->times.size()));
    } else if (cols->vals.back() != u.val) {
      cols->vals.push_back(u.val);
      cols->val_hist_bounds.push_back(static_cast<uint32_t>(cols->times.size()));
    }
    cols->times.push_back(u.time);
    cols->diffs.push_back(u.diff);
  }
  cols->key_val_bounds.push_back(static_cast<uint32_t>(cols->vals.size()));
  cols->val_hist_bounds.push_back(static_cast<uint32_t>(cols->times.size()));
  return cols;
}

}  // namespace

std::vector<Update> consolidate(std::vector<Update> updates, const Antichain& since) {
  for (Update& u : updates) u.time = rep(since, u.time);
  std::sort(updates.begin(), updates.end(), canonical_update_order);
  if (testing::g_skip_consolidation) return updates;
  std::vector<Update> out;
  for (Update& u : updates) {
    if (!out.empty() && same_position(out.back(), u)) {
      out.back().diff = checked_add(out.back().diff, u.diff);
    } else {
      out.push_back(std::move(u));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Update& u) { return u.diff == 0; }),
            out.end());
  return out;
}

BatchPtr BatchBuilder::seal(Antichain lower, Antichain upper) {
  for (const Update& u : staged_) {
    if (!lower.beyond(u.time) || upper.beyond(u.time))
      raise_construction("builder_seal: staged update ", to_string(u), " outside [",
                         to_string(lower), ", ", to_string(upper), ")");
  }
  std::vector<Update> sorted = consolidate(std::move(staged_), Antichain{});
  staged_.clear();
  BatchDescription desc{std::move(lower), std::move(upper), Antichain::minimum(kind_)};
  return Batch::make(std::move(desc), build_columns(sorted), kind_);
}

BatchPtr batch_from_sorted(BatchDescription description, TimeKind kind,
                           const std::vector<Update>& sorted) {
  return Batch::make(std::move(description), build_columns(sorted), kind);
}

std::vector<Update> Batch::to_updates() const {
  std::vector<Update> out;
  const Columns& c = *columns_;
  for (size_t k = 0; k < c.keys.size(); ++k) {
    for (uint32_t v = c.key_val_bounds[k]; v < c.key_val_bounds[k + 1]; ++v) {
      for (uint32_t h = c.val_hist_bounds[v]; h < c.val_hist_bounds[v + 1]; ++h) {
        out.push_back(Update{c.keys[k], c.vals[v], c.times[h], c.diffs[h]});
      }
    }
  }
  return out;
}

void Batch::validate() const {
  const Columns& c = *columns_;
  STRATA_CHECK(c.key_val_bounds.size() == c.keys.size() + 1, "batch: key offset column size");
  STRATA_CHECK(c.val_hist_bounds.size() == c.vals.size() + 1, "batch: val offset column size");
  STRATA_CHECK(c.times.size() == c.diffs.size(), "batch: history column size");

  std::vector<Update> flat = to_updates();
  const bool compacted = description_.since != Antichain::minimum(kind_);
  for (size_t i = 0; i < flat.size(); ++i) {
    const Update& u = flat[i];
    STRATA_CHECK(u.diff != 0, "batch: zero diff at ", to_string(u));
    STRATA_CHECK(u.time == rep(description_.since, u.time),
                 "batch: time not in canonical compacted form: ", to_string(u));
    if (!compacted) {
      STRATA_CHECK(description_.lower.beyond(u.time), "batch: time below lower: ", to_string(u));
      STRATA_CHECK(!description_.upper.beyond(u.time), "batch: time beyond upper: ", to_string(u));
    }
    if (i > 0) {
      STRATA_CHECK(canonical_update_order(flat[i - 1], u), "batch: misordered at ", to_string(u));
      STRATA_CHECK(!same_position(flat[i - 1], u), "batch: duplicate position at ", to_string(u));
    }
  }
}

}  // namespace strata
