#include "strata/trace.hpp"

#include <algorithm>

namespace strata {

void Trace::insert(uint64_t writer, BatchPtr batch) {
  if (writer_bound_)
    STRATA_REQUIRE(writer == writer_, "trace '", name_, "': insert from a non-writer");
  if (std::find(writer_tokens_.begin(), writer_tokens_.end(), writer) == writer_tokens_.end())
    writer_tokens_.push_back(writer);

  STRATA_REQUIRE(batch->kind() == kind_, "trace '", name_, "': wrong time shape");
  if (batch->description().lower != upper_)
    raise_construction("trace_insert: discontiguous batch: trace upper ", to_string(upper_),
                       " vs batch lower ", to_string(batch->description().lower));
  upper_ = batch->description().upper;
  last_insert_work_ = 0;
  apply_reader_frontiers();
  if (storage_released_) return;

  const size_t batch_size = batch->size();
  layers_.push_back(Layer{std::move(batch), nullptr});
  uint64_t budget = options_.merge_effort == Options::kEager
                        ? UINT64_MAX
                        : options_.merge_effort * batch_size + kInsertGrant;
  maintain(budget);
}

void Trace::set_logical_compaction(const Antichain& frontier) {
  STRATA_REQUIRE(since_.precedes(frontier), "trace '", name_,
                 "': compaction frontier may not retreat: ", to_string(since_), " -> ",
                 to_string(frontier));
  if (!readers_.empty()) {
    Antichain meet;
    bool first = true;
    for (const auto& [id, r] : readers_) {
      meet = first ? r.since : meet.meet(r.since);
      first = false;
    }
    STRATA_REQUIRE(frontier.precedes(meet), "trace '", name_,
                   "': compaction frontier beyond reader requirements");
  }
  since_ = frontier;
}

void Trace::apply_reader_frontiers() {
  if (readers_.empty()) {
    if (had_readers_ && !storage_released_) release_storage();
    return;
  }
  Antichain meet;
  bool first = true;
  for (const auto& [id, r] : readers_) {
    meet = first ? r.since : meet.meet(r.since);
    first = false;
  }
  if (meet != since_ && since_.precedes(meet)) set_logical_compaction(meet);
}

Trace::ReaderId Trace::register_reader(const Antichain& since) {
  STRATA_REQUIRE(!storage_released_, "trace '", name_, "': storage already released");
  STRATA_REQUIRE(since_.precedes(since), "trace '", name_,
                 "': reader since must not precede the trace since");
  ReaderId id = next_reader_++;
  readers_.emplace(id, Reader{since, std::nullopt});
  had_readers_ = true;
  return id;
}

void Trace::deregister_reader(ReaderId id) {
  readers_.erase(id);
  apply_reader_frontiers();
}

void Trace::reader_set_since(ReaderId id, const Antichain& frontier) {
  auto it = readers_.find(id);
  STRATA_REQUIRE(it != readers_.end(), "trace '", name_, "': unknown reader");
  STRATA_REQUIRE(it->second.since.precedes(frontier), "handle_set_since: frontier may not retreat");
  it->second.since = frontier;
  apply_reader_frontiers();
}

void Trace::reader_set_boundary_guard(ReaderId id, std::optional<Antichain> frontier) {
  auto it = readers_.find(id);
  STRATA_REQUIRE(it != readers_.end(), "trace '", name_, "': unknown reader");
  if (frontier && !it->second.guard) {
    // A freshly pinned region must not have merges in flight across it;
    // finish them now so the batch list the reader sees stays cut-stable.
    settle_merges();
  }
  it->second.guard = std::move(frontier);
}

void Trace::settle_merges() {
  for (Layer& layer : layers_) {
    if (!layer.merge) continue;
    uint64_t consumed = 0;
    BatchPtr done = layer.merge->step(UINT64_MAX, &consumed);
    total_merge_work_ += consumed;
    last_insert_work_ += consumed;
    layer.batch = std::move(done);
    layer.merge.reset();
  }
}

bool Trace::boundary_fusable(const Antichain& boundary) const {
  for (const auto& [id, r] : readers_) {
    if (r.guard && r.guard->precedes(boundary)) return false;
  }
  return true;
}

bool Trace::start_ready_merges() {
  bool any = false;
  bool acted = true;
  while (acted) {
    acted = false;
    for (size_t i = 0; i + 1 < layers_.size(); ++i) {
      Layer& a = layers_[i];
      Layer& b = layers_[i + 1];
      if (!a.batch || !b.batch) continue;
      const BatchDescription& da = a.batch->description();
      const BatchDescription& db = b.batch->description();
      if (!boundary_fusable(da.upper)) continue;
      size_t sa = a.batch->size(), sb = b.batch->size();
      if (sa == 0 || sb == 0) {
        // Absorbing an empty neighbour is a re-description, not a merge.
        BatchPtr fused;
        if (sa == 0 && sb == 0) {
          fused = batch_from_sorted(
              BatchDescription{da.lower, db.upper, da.since.meet(db.since)}, kind_, {});
        } else if (sa == 0) {
          fused = b.batch->with_bounds(da.lower, db.upper);
        } else {
          fused = a.batch->with_bounds(da.lower, db.upper);
        }
        a.batch = std::move(fused);
        layers_.erase(layers_.begin() + i + 1);
        acted = any = true;
        break;
      }
      // Geometric bands: adjacent batches within 2x in size merge.
      if (sa <= 2 * sb && sb <= 2 * sa) {
        a.merge = std::make_unique<InProgressMerge>(a.batch, b.batch, since_);
        a.batch = nullptr;
        layers_.erase(layers_.begin() + i + 1);
        acted = any = true;
        break;
      }
    }
  }
  return any;
}

void Trace::maintain(uint64_t budget) {
  for (;;) {
    bool started = start_ready_merges();
    bool advanced = false;
    for (Layer& layer : layers_) {
      if (!layer.merge) continue;
      if (budget == 0) break;
      uint64_t consumed = 0;
      BatchPtr done = layer.merge->step(budget, &consumed);
      if (budget != UINT64_MAX) budget -= consumed;
      total_merge_work_ += consumed;
      last_insert_work_ += consumed;
      if (done) {
        layer.batch = std::move(done);
        layer.merge.reset();
        advanced = true;
      } else if (consumed > 0) {
        advanced = true;
      }
    }
    if (budget == 0) return;
    if (!started && !advanced) return;
  }
}

std::vector<BatchPtr> Trace::batches() const {
  std::vector<BatchPtr> out;
  out.reserve(layers_.size());
  for (const Layer& layer : layers_) {
    if (layer.batch) {
      out.push_back(layer.batch);
    } else {
      out.push_back(layer.merge->first());
      out.push_back(layer.merge->second());
    }
  }
  return out;
}

std::vector<BatchPtr> Trace::batches_through(const Antichain& through) const {
  std::vector<BatchPtr> all = batches();
  std::vector<BatchPtr> out;
  for (const BatchPtr& b : all) {
    if (!b->description().upper.precedes(through)) break;
    out.push_back(b);
  }
  STRATA_CHECK(out.size() == all.size() || out.empty() ||
                   out.back()->description().upper == through,
               "trace '", name_, "': no batch cut at ", to_string(through),
               " (missing boundary pin?)");
  return out;
}

size_t Trace::resident_updates() const {
  size_t total = 0;
  for (const Layer& layer : layers_) total += layer.updates();
  return total;
}

size_t Trace::resident_batches() const {
  size_t total = 0;
  for (const Layer& layer : layers_) total += layer.batch ? 1 : 2;
  return total;
}

void Trace::release_storage() {
  layers_.clear();
  storage_released_ = true;
}

}  // namespace strata
