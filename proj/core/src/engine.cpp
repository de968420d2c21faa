#include "acgraph/engine.hpp"

#include <chrono>
#include <string>

namespace acgraph {

namespace {

constexpr std::uint8_t kMaxReadRetries = 3;

std::size_t pool_slots(const OpenImage& image, const RunConfig& cfg) {
  std::size_t slots =
      std::max<std::uint64_t>(1, cfg.buffer_bytes / kBlockBytes);
  // A run must fit the pool or its load could never be issued.
  std::uint16_t max_pages = 1;
  for (std::uint64_t b = 0; b < image.block_count(); ++b) {
    max_pages = std::max(max_pages,
                         image.block_pages(static_cast<std::uint32_t>(b)));
  }
  return std::max<std::size_t>(slots, max_pages);
}

}  // namespace

Engine::Engine(const OpenImage& image, const RunConfig& cfg, Metrics* metrics,
               EventLog* log, TraceSink* trace)
    : image_(&image),
      cfg_(cfg),
      metrics_(metrics),
      log_(log),
      worklist_(image, cfg.priority_order, metrics, log, trace),
      pool_(pool_slots(image, cfg)) {
  if (trace != nullptr && cfg.mode != ExecMode::Sync) {
    throw InvariantError("block traces require synchronous execution");
  }
  if (image.max_block_vertex_count() > kAfsDenseBits) {
    throw InvariantError(
        "image has a block with " +
        std::to_string(image.max_block_vertex_count()) +
        " vertices, beyond the dense frontier range of " +
        std::to_string(kAfsDenseBits));
  }
  const unsigned io_workers =
      cfg_.io_workers != 0 ? cfg_.io_workers : (cfg_.threads <= 1 ? 1u : 2u);
  reader_ = std::make_unique<ThreadPoolReader>(image.blocks_path(), io_workers,
                                               cfg_.direct_io);
  pending_slot_.assign(image.block_count(), 0);
  retry_count_.assign(image.block_count(), 0);
  counted_ = std::make_unique<std::atomic<std::uint8_t>[]>(image.total_ids());
  for (std::uint64_t i = 0; i < image.total_ids(); ++i) {
    counted_[i].store(0, std::memory_order_relaxed);
  }
}

void Engine::issue_read(std::uint32_t block, std::uint32_t slot) {
  const std::uint16_t pages = image_->block_pages(block);
  reader_->submit({block, static_cast<std::uint64_t>(block) * kBlockBytes,
                   static_cast<std::uint32_t>(pages * kBlockBytes),
                   pool_.slot_data(slot)});
}

void Engine::preload() {
  if (!preload_mu_.try_lock()) return;  // someone else is driving I/O
  std::lock_guard guard(preload_mu_, std::adopt_lock);

  std::vector<ReadResult> done;
  reader_->harvest(done);
  for (const ReadResult& r : done) {
    if (!r.ok) {
      if (retry_count_[r.block_id] < kMaxReadRetries) {
        ++retry_count_[r.block_id];
        issue_read(r.block_id, pending_slot_[r.block_id]);
        continue;
      }
      io_failed_.store(true, std::memory_order_release);
      abort_.store(true, std::memory_order_release);
      continue;
    }
    retry_count_[r.block_id] = 0;
    if (metrics_) {
      metrics_->on_read(static_cast<std::uint64_t>(
                            image_->block_pages(r.block_id)) *
                        kBlockBytes);
      metrics_->blocks_loaded.fetch_add(1, std::memory_order_relaxed);
    }
    worklist_.load_complete(r.block_id, pending_slot_[r.block_id]);
  }

  for (std::uint32_t i = 0; i < cfg_.preload_batch; ++i) {
    auto block = worklist_.pop_uncached();
    if (!block) break;
    const std::uint16_t pages = image_->block_pages(*block);
    auto slot = pool_.allocate_run(pages);
    if (!slot) {
      worklist_.requeue_uncached(*block);
      break;
    }
    pending_slot_[*block] = *slot;
    issue_read(*block, *slot);
  }
}

void Engine::release_if_freed(const Worklist::FinishResult& r) {
  if (r.action != Worklist::FinishAction::Reused) {
    pool_.release_run(r.slot, r.pages);
  }
}

void Engine::submit_buffer(std::vector<Activation>& buffer, SyncBuffer* sync) {
  if (buffer.empty()) return;
  if (sync != nullptr) {
    std::lock_guard lock(sync->mu);
    sync->items.insert(sync->items.end(), buffer.begin(), buffer.end());
    return;
  }
  worklist_.submit(buffer);
}

void Engine::rethrow_if_failed() {
  if (io_failed_.load(std::memory_order_acquire)) {
    throw IoError("block read failed after retries; run aborted");
  }
  std::lock_guard lock(error_mu_);
  if (first_error_) {
    auto e = first_error_;
    first_error_ = nullptr;
    std::rethrow_exception(e);
  }
}

void Engine::backoff(int& idle) {
  ++idle;
  if (idle < 64) {
    std::this_thread::yield();
  } else {
    std::this_thread::sleep_for(std::chrono::microseconds(100));
  }
}

}  // namespace acgraph
