#include "acgraph/worklist.hpp"

#include <string>

#include "acgraph/error.hpp"

namespace acgraph {

Worklist::Worklist(const OpenImage& image, PriorityOrder order,
                   Metrics* metrics, EventLog* log, TraceSink* trace)
    : image_(&image),
      order_(order),
      metrics_(metrics),
      log_(log),
      trace_(trace) {
  const std::uint64_t blocks = image.block_count();
  metas_ = std::make_unique<BlockMeta[]>(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    metas_[b].priority = neutral_priority(order_);
    metas_[b].v_start = image.block_v_start(static_cast<std::uint32_t>(b));
  }
  reuse_.assign(blocks, 0);
  in_uncached_.assign(blocks, 0);
}

void Worklist::queue_insert(std::uint32_t block, std::int32_t priority) {
  std::lock_guard lock(uncached_mu_);
  uncached_.emplace(queue_key(priority), block);
  in_uncached_[block] = 1;
}

void Worklist::queue_update(std::uint32_t block, std::int32_t before,
                            std::int32_t after) {
  if (before == after) return;
  std::lock_guard lock(uncached_mu_);
  if (!in_uncached_[block]) return;  // in flight, not queued
  uncached_.erase({queue_key(before), block});
  uncached_.emplace(queue_key(after), block);
}

void Worklist::submit(VertexId v, std::int32_t priority) {
  if (image_->is_virtual(v)) {
    throw InvariantError("activation of virtual id " + std::to_string(v));
  }
  const std::uint32_t round = round_.load(std::memory_order_relaxed);

  if (image_->is_mini(v)) {
    {
      std::lock_guard lock(resident_mu_);
      resident_.push_back(v);
    }
    outstanding_.fetch_add(1, std::memory_order_acq_rel);
    if (metrics_) metrics_->activations.fetch_add(1, std::memory_order_relaxed);
    if (log_) log_->activated(v, round);
    return;
  }

  const std::uint32_t block = image_->block_of(v).block_id;
  BlockMeta& m = metas_[block];
  MetaLock guard(m);
  const std::int32_t before = m.priority;
  const bool inserted = m.afs_insert(v, priority, order_);

  switch (m.block_state()) {
    case BlockState::Inactive:
      m.set_state(BlockState::Uncached);
      if (log_) log_->transition(block, BlockState::Inactive,
                                 BlockState::Uncached);
      if (trace_) trace_->record(round, block);
      outstanding_.fetch_add(1, std::memory_order_acq_rel);
      queue_insert(block, m.priority);
      break;
    case BlockState::Uncached:
      queue_update(block, before, m.priority);
      break;
    case BlockState::Cached:
      break;  // already queued for execution
    case BlockState::Processing:
      m.set_state(BlockState::Reactivated);
      if (log_) log_->transition(block, BlockState::Processing,
                                 BlockState::Reactivated);
      break;
    case BlockState::Reactivated:
      break;
  }
  if (inserted) {
    if (metrics_) metrics_->activations.fetch_add(1, std::memory_order_relaxed);
    if (log_) log_->activated(v, round);
  }
}

void Worklist::submit(std::span<const Activation> batch) {
  for (const Activation& a : batch) submit(a.vertex, a.priority);
}

std::optional<std::uint32_t> Worklist::pop_uncached() {
  std::lock_guard lock(uncached_mu_);
  if (uncached_.empty()) return std::nullopt;
  const auto it = uncached_.begin();
  const std::uint32_t block = it->second;
  uncached_.erase(it);
  in_uncached_[block] = 0;
  return block;
}

void Worklist::requeue_uncached(std::uint32_t block) {
  BlockMeta& m = metas_[block];
  MetaLock guard(m);
  queue_insert(block, m.priority);
}

void Worklist::load_complete(std::uint32_t block, std::uint32_t slot) {
  BlockMeta& m = metas_[block];
  MetaLock guard(m);
  if (m.block_state() != BlockState::Uncached) {
    throw InvariantError("load completion for block " + std::to_string(block) +
                         " in state " + to_string(m.block_state()));
  }
  m.set_slot(slot);
  m.set_state(BlockState::Cached);
  if (log_) log_->transition(block, BlockState::Uncached, BlockState::Cached);
  std::lock_guard lock(cached_mu_);
  cached_.push_back(block);
}

std::optional<BlockTask> Worklist::pull_cached() {
  std::uint32_t block;
  {
    std::lock_guard lock(cached_mu_);
    if (cached_.empty()) return std::nullopt;
    block = cached_.front();
    cached_.pop_front();
  }
  BlockMeta& m = metas_[block];
  MetaLock guard(m);
  if (m.block_state() != BlockState::Cached) {
    throw InvariantError("pull of block " + std::to_string(block) +
                         " in state " + to_string(m.block_state()));
  }
  BlockTask task;
  task.block = block;
  task.slot = m.slot();
  task.pages = image_->block_pages(block);
  m.afs_drain(task.frontier, order_);
  m.set_state(BlockState::Processing);
  if (log_) log_->transition(block, BlockState::Cached,
                             BlockState::Processing);
  if (metrics_) metrics_->block_tasks.fetch_add(1, std::memory_order_relaxed);
  return task;
}

std::size_t Worklist::pull_resident(std::size_t max,
                                    std::vector<VertexId>& out) {
  std::lock_guard lock(resident_mu_);
  std::size_t got = 0;
  while (got < max && !resident_.empty()) {
    out.push_back(resident_.front());
    resident_.pop_front();
    ++got;
  }
  return got;
}

void Worklist::consume_resident(std::size_t n) {
  outstanding_.fetch_sub(static_cast<std::int64_t>(n),
                         std::memory_order_acq_rel);
}

Worklist::FinishResult Worklist::finish(std::uint32_t block,
                                        std::uint32_t early_stop_threshold) {
  BlockMeta& m = metas_[block];
  MetaLock guard(m);
  const std::uint16_t pages = image_->block_pages(block);

  if (m.block_state() == BlockState::Reactivated) {
    ++reuse_[block];
    if (early_stop_threshold > 0 && reuse_[block] > early_stop_threshold) {
      // Forced eviction: back to priority scheduling via the uncached queue.
      if (log_) {
        log_->transition(block, BlockState::Reactivated, BlockState::Cached);
        log_->transition(block, BlockState::Cached, BlockState::Uncached);
      }
      const std::uint32_t slot = m.slot();
      m.clear_slot();
      m.set_state(BlockState::Uncached);
      reuse_[block] = 0;
      queue_insert(block, m.priority);
      return {FinishAction::Evicted, slot, pages};
    }
    m.set_state(BlockState::Cached);
    if (log_) log_->transition(block, BlockState::Reactivated,
                               BlockState::Cached);
    if (metrics_) {
      metrics_->blocks_reused.fetch_add(1, std::memory_order_relaxed);
    }
    {
      std::lock_guard lock(cached_mu_);
      cached_.push_back(block);
    }
    return {FinishAction::Reused, m.slot(), pages};
  }

  if (m.block_state() == BlockState::Processing) {
    const std::uint32_t slot = m.slot();
    m.clear_slot();
    m.set_state(BlockState::Inactive);
    if (log_) log_->transition(block, BlockState::Processing,
                               BlockState::Inactive);
    reuse_[block] = 0;
    outstanding_.fetch_sub(1, std::memory_order_acq_rel);
    return {FinishAction::Deactivated, slot, pages};
  }

  throw InvariantError("finish on block " + std::to_string(block) +
                       " in state " + to_string(m.block_state()));
}

bool Worklist::cached_empty() const {
  std::lock_guard lock(cached_mu_);
  return cached_.empty();
}

bool Worklist::resident_empty() const {
  std::lock_guard lock(resident_mu_);
  return resident_.empty();
}

std::size_t Worklist::uncached_size() const {
  std::lock_guard lock(uncached_mu_);
  return uncached_.size();
}

}  // namespace acgraph
