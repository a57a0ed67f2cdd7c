#pragma once
// The multiversioned index: an append-only-with-merging list of immutable
// batches plus a compaction frontier.
//
// A trace is mutated only by its writer (the arrange operator) on its owning
// worker thread. Readers register with a required frontier (`since`) and may
// additionally pin batch boundaries they still need to tell apart
// (`boundary_guard`); merging never fuses a pinned boundary, and
// consolidation never coalesces distinctions any reader still requires.
// When the last reader deregisters the trace releases its storage and only
// tracks frontier bookkeeping for the continuing batch stream.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "strata/cursor.hpp"
#include "strata/merge.hpp"

namespace strata {

struct TraceOptions {
  // Merge work units granted per inserted update; kEager runs every merge
  // to completion on insert, 1 is the laziest possible setting.
  uint64_t merge_effort = 8;
  static constexpr uint64_t kEager = UINT64_MAX;
};

class Trace {
 public:
  using Options = TraceOptions;

  // Flat work grant per insert, covering bookkeeping on tiny batches.
  static constexpr uint64_t kInsertGrant = 64;

  Trace(TimeKind kind, Options options = Options(), std::string name = "trace")
      : kind_(kind),
        options_(options),
        name_(std::move(name)),
        since_(Antichain::minimum(kind)),
        upper_(Antichain::minimum(kind)) {}

  TimeKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Antichain& since() const { return since_; }
  const Antichain& upper() const { return upper_; }

  // --- writer surface -------------------------------------------------

  // Binds the single writer; all inserts must present this token.
  void bind_writer(uint64_t writer) {
    STRATA_REQUIRE(!writer_bound_, "trace: writer already bound");
    writer_ = writer;
    writer_bound_ = true;
  }
  // Distinct mutation sites observed; the single-writer discipline keeps
  // this at one.
  size_t writers_observed() const { return writer_tokens_.size(); }

  // Appends a sealed batch whose lower frontier must equal the trace upper,
  // then performs at most merge_effort * |batch| + kInsertGrant units of
  // merge work (unbounded for eager traces).
  void insert(uint64_t writer, BatchPtr batch);

  // Advances the compaction frontier. Future merges consolidate under it.
  void set_logical_compaction(const Antichain& frontier);

  // Folds reader requirements into `since` and runs deferred maintenance.
  // Called by the writer between batches.
  void apply_reader_frontiers();

  // Runs every in-progress merge to completion. Needed before snapshotting
  // the batch list for an import and before pinning fresh boundaries.
  void settle_merges();

  // --- reader surface -------------------------------------------------

  using ReaderId = uint64_t;
  ReaderId register_reader(const Antichain& since);
  void deregister_reader(ReaderId id);
  void reader_set_since(ReaderId id, const Antichain& frontier);
  // Pins every batch boundary at or beyond `frontier` so prefix reads keep
  // seeing the original batch cuts; nullopt releases the pin.
  void reader_set_boundary_guard(ReaderId id, std::optional<Antichain> frontier);
  size_t reader_count() const { return readers_.size(); }

  // Live batches, oldest first; in-progress merges contribute their inputs.
  std::vector<BatchPtr> batches() const;
  // The longest batch prefix acknowledged by `through`: batches whose upper
  // precedes it. Requires the matching boundary to be pinned by a guard.
  std::vector<BatchPtr> batches_through(const Antichain& through) const;
  MergedCursor cursor(CursorStats* stats = nullptr) const {
    return MergedCursor(batches(), stats);
  }

  // --- instrumentation -------------------------------------------------

  uint64_t total_merge_work() const { return total_merge_work_; }
  uint64_t last_insert_work() const { return last_insert_work_; }
  size_t resident_updates() const;
  size_t resident_batches() const;
  bool storage_released() const { return storage_released_; }

 private:
  struct Layer {
    BatchPtr batch;                         // exactly one of these is set
    std::unique_ptr<InProgressMerge> merge;
    size_t updates() const { return batch ? batch->size() : merge->resident_updates(); }
  };

  struct Reader {
    Antichain since;
    std::optional<Antichain> guard;
  };

  void maintain(uint64_t budget);
  bool start_ready_merges();
  bool boundary_fusable(const Antichain& boundary) const;
  void release_storage();

  TimeKind kind_;
  Options options_;
  std::string name_;
  Antichain since_;
  Antichain upper_;
  std::vector<Layer> layers_;

  std::map<ReaderId, Reader> readers_;
  ReaderId next_reader_ = 1;
  bool had_readers_ = false;
  bool storage_released_ = false;

  uint64_t writer_ = 0;
  bool writer_bound_ = false;
  std::vector<uint64_t> writer_tokens_;

  uint64_t total_merge_work_ = 0;
  uint64_t last_insert_work_ = 0;
};

}  // namespace strata
