#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "acgraph/block_meta.hpp"
#include "acgraph/event_log.hpp"
#include "acgraph/image.hpp"
#include "acgraph/metrics.hpp"
#include "acgraph/trace.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

struct BlockTask {
  std::uint32_t block;
  std::uint32_t slot;
  std::uint16_t pages;
  std::vector<VertexId> frontier;
};

/// The scheduler: a FIFO of memory-resident blocks, a priority queue of
/// unloaded blocks, a FIFO of activated mini vertices, and the block metadata
/// they route through. A block id lives in at most one queue; an atomic
/// outstanding counter reaches zero exactly at global convergence.
class Worklist {
 public:
  Worklist(const OpenImage& image, PriorityOrder order,
           Metrics* metrics = nullptr, EventLog* log = nullptr,
           TraceSink* trace = nullptr);

  // ---- submission -----------------------------------------------------
  void submit(VertexId v, std::int32_t priority);
  void submit(std::span<const Activation> batch);

  // ---- scheduling primitives, driven by the engine ---------------------
  /// Best uncached block, removed from the queue; the block stays Uncached
  /// (in flight) until load_complete or requeue_uncached.
  std::optional<std::uint32_t> pop_uncached();
  void requeue_uncached(std::uint32_t block);
  void load_complete(std::uint32_t block, std::uint32_t slot);

  std::optional<BlockTask> pull_cached();
  std::size_t pull_resident(std::size_t max, std::vector<VertexId>& out);
  void consume_resident(std::size_t n);

  enum class FinishAction { Reused, Deactivated, Evicted };
  struct FinishResult {
    FinishAction action;
    std::uint32_t slot;
    std::uint16_t pages;
  };
  /// Completes a block task. Reactivated blocks re-enter the cached queue
  /// with their buffer retained unless the consecutive-reuse count exceeds
  /// early_stop_threshold (> 0), which evicts them back to the uncached
  /// queue; plain Processing blocks deactivate and give their slot back.
  FinishResult finish(std::uint32_t block,
                      std::uint32_t early_stop_threshold);

  // ---- termination ------------------------------------------------------
  std::int64_t outstanding() const {
    return outstanding_.load(std::memory_order_acquire);
  }

  bool cached_empty() const;
  bool resident_empty() const;
  std::size_t uncached_size() const;

  void set_round(std::uint32_t round) {
    round_.store(round, std::memory_order_relaxed);
  }

  BlockMeta& meta(std::uint32_t block) { return metas_[block]; }
  PriorityOrder order() const { return order_; }

 private:
  std::int64_t queue_key(std::int32_t priority) const {
    return order_ == PriorityOrder::MinFirst
               ? static_cast<std::int64_t>(priority)
               : -static_cast<std::int64_t>(priority);
  }
  // Callers hold the block's meta lock.
  void queue_insert(std::uint32_t block, std::int32_t priority);
  void queue_update(std::uint32_t block, std::int32_t before,
                    std::int32_t after);

  const OpenImage* image_;
  PriorityOrder order_;
  Metrics* metrics_;
  EventLog* log_;
  TraceSink* trace_;

  std::unique_ptr<BlockMeta[]> metas_;
  std::vector<std::uint32_t> reuse_;  // consecutive reuse count per block

  mutable std::mutex uncached_mu_;
  std::set<std::pair<std::int64_t, std::uint32_t>> uncached_;
  std::vector<std::uint8_t> in_uncached_;

  mutable std::mutex cached_mu_;
  std::deque<std::uint32_t> cached_;

  mutable std::mutex resident_mu_;
  std::deque<VertexId> resident_;

  std::atomic<std::int64_t> outstanding_{0};
  std::atomic<std::uint32_t> round_{0};
};

}  // namespace acgraph
