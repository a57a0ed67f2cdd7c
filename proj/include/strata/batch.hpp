#pragma once
// Immutable, sorted, indexed batches of update triples.
//
// A batch stores the updates between a `lower` and `upper` frontier, sorted
// by (key, val, time) with the fields in columns: distinct keys with offsets
// into a value column, and distinct (key, val) pairs with offsets into the
// (time, diff) history columns. `since` records the compaction frontier the
// contents have been consolidated under; times in a compacted batch are
// rep(since, original) images and may exceed `upper`.

#include <cstdint>
#include <memory>
#include <vector>

#include "strata/update.hpp"

namespace strata {

struct BatchDescription {
  Antichain lower;
  Antichain upper;
  Antichain since;
};

class Batch;
using BatchPtr = std::shared_ptr<const Batch>;

class Batch {
 public:
  // Column storage, shared between batches so a re-described batch (for
  // example after absorbing an empty neighbour) costs nothing.
  struct Columns {
    std::vector<Datum> keys;               // distinct, ascending
    std::vector<uint32_t> key_val_bounds;  // keys.size()+1 offsets into vals
    std::vector<Datum> vals;               // ascending within each key
    std::vector<uint32_t> val_hist_bounds; // vals.size()+1 offsets into history
    std::vector<Time> times;
    std::vector<int64_t> diffs;

    size_t update_count() const { return times.size(); }
  };

  Batch(BatchDescription description, std::shared_ptr<const Columns> columns, TimeKind kind)
      : description_(std::move(description)), columns_(std::move(columns)), kind_(kind) {}

  static BatchPtr make(BatchDescription description, std::shared_ptr<const Columns> columns,
                       TimeKind kind) {
    return std::make_shared<Batch>(std::move(description), std::move(columns), kind);
  }

  // Same contents under a wider description; used to absorb empty neighbours
  // without touching the columns.
  BatchPtr with_bounds(Antichain lower, Antichain upper) const {
    return make(BatchDescription{std::move(lower), std::move(upper), description_.since},
                columns_, kind_);
  }

  const BatchDescription& description() const { return description_; }
  const Columns& columns() const { return *columns_; }
  std::shared_ptr<const Columns> shared_columns() const { return columns_; }
  TimeKind kind() const { return kind_; }
  size_t size() const { return columns_->update_count(); }
  bool empty() const { return size() == 0; }

  // Checks sortedness, consolidation, and containment invariants; throws on
  // violation. Compacted contents are rep(since, .) fixed points and only
  // uncompacted batches promise containment within [lower, upper).
  void validate() const;

  std::vector<Update> to_updates() const;

 private:
  BatchDescription description_;
  std::shared_ptr<const Columns> columns_;
  TimeKind kind_;
};

// Accumulates updates, then seals them into a batch. Duplicates are allowed
// before sealing; sealing sorts, coalesces, drops zero diffs, and validates
// that every time falls within [lower, upper).
class BatchBuilder {
 public:
  explicit BatchBuilder(TimeKind kind) : kind_(kind) {}

  void push(Update u) {
    STRATA_REQUIRE(u.time.kind == kind_, "builder_push: wrong time shape for this builder");
    staged_.push_back(std::move(u));
  }

  size_t staged() const { return staged_.size(); }
  TimeKind kind() const { return kind_; }

  // Consumes the staged updates. Throws a construction error naming the
  // offending update if any time lies outside [lower, upper).
  BatchPtr seal(Antichain lower, Antichain upper);

 private:
  TimeKind kind_;
  std::vector<Update> staged_;
};

// Builds a batch directly from already-consolidated, canonically sorted
// updates (merge results, rebuilt views). Trusts the caller.
BatchPtr batch_from_sorted(BatchDescription description, TimeKind kind,
                           const std::vector<Update>& sorted);

// Replaces each time by rep(since, time), sums diffs of equal triples, drops
// zeros, and returns the result in canonical order.
std::vector<Update> consolidate(std::vector<Update> updates, const Antichain& since);

namespace testing {
// Fault injection for the verification harness's negative control: when set,
// consolidation skips coalescing entirely.
extern bool g_skip_consolidation;
}  // namespace testing

}  // namespace strata
