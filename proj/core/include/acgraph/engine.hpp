#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "acgraph/buffer_pool.hpp"
#include "acgraph/error.hpp"
#include "acgraph/event_log.hpp"
#include "acgraph/image.hpp"
#include "acgraph/io_backend.hpp"
#include "acgraph/metrics.hpp"
#include "acgraph/trace.hpp"
#include "acgraph/types.hpp"
#include "acgraph/worklist.hpp"

namespace acgraph {

struct RunConfig {
  unsigned threads = 1;
  std::uint64_t buffer_bytes = 256ull << 20;
  PriorityOrder priority_order = PriorityOrder::MinFirst;
  ExecMode mode = ExecMode::Async;
  std::uint32_t early_stop_threshold = 0;  // consecutive reuses; 0 = disabled
  std::uint32_t pull_batch = 8;
  std::uint32_t preload_batch = 16;
  std::uint32_t mini_batch = 256;
  bool direct_io = false;
  unsigned io_workers = 0;  // 0 = auto: 1 reader when threads == 1, else 2
};

/// The block-centric executor. An algorithm is any type providing
///   Msg apply(VertexId u)
///   std::int32_t propagation(const Msg&, VertexId v)   // > 0 activates v
/// Executors pull batched tasks, drive the preload pipeline from within
/// pull, and submit new activations back to the worklist (async) or to a
/// fresh per-round list (sync).
class Engine {
 public:
  Engine(const OpenImage& image, const RunConfig& cfg,
         Metrics* metrics = nullptr, EventLog* log = nullptr,
         TraceSink* trace = nullptr);

  Worklist& worklist() { return worklist_; }
  const OpenImage& image() const { return *image_; }
  BufferPool& pool() { return pool_; }

  void seed(VertexId v, std::int32_t priority) { worklist_.submit(v, priority); }
  void seed(std::span<const Activation> batch) { worklist_.submit(batch); }

  /// Applies f (vertex -> priority) to every real vertex in parallel;
  /// positive results are submitted to the worklist.
  template <class F>
  void foreach_vertex(F&& f);

  /// Runs to global convergence (outstanding work reaches zero).
  template <class Algo>
  void run_async(Algo& algo);

  /// Processes exactly the currently active vertices; activations produced
  /// during the round are returned as the next frontier.
  template <class Algo>
  std::vector<Activation> run_sync_round(Algo& algo);

  /// Loops rounds, reseeding each returned frontier; returns the round count.
  template <class Algo>
  std::size_t run_sync(Algo& algo);

  bool poisoned() const { return poisoned_.load(std::memory_order_acquire); }
  std::uint32_t rounds_run() const { return round_; }

 private:
  struct SyncBuffer {
    std::mutex mu;
    std::vector<Activation> items;
  };

  void preload();
  void issue_read(std::uint32_t block, std::uint32_t slot);
  void release_if_freed(const Worklist::FinishResult& r);
  void rethrow_if_failed();
  static void backoff(int& idle);

  void submit_buffer(std::vector<Activation>& buffer, SyncBuffer* sync);

  template <class Algo>
  void process_vertex(Algo& algo, VertexId u, std::span<const std::byte> data,
                      std::vector<Activation>& out);

  template <class Algo>
  void executor(Algo& algo, SyncBuffer* sync);

  template <class Algo>
  void run_executors(Algo& algo, SyncBuffer* sync);

  const OpenImage* image_;
  RunConfig cfg_;
  Metrics* metrics_;
  EventLog* log_;
  Worklist worklist_;
  BufferPool pool_;
  std::unique_ptr<ThreadPoolReader> reader_;

  std::mutex preload_mu_;
  std::vector<std::uint32_t> pending_slot_;
  std::vector<std::uint8_t> retry_count_;

  std::atomic<bool> abort_{false};
  std::atomic<bool> poisoned_{false};
  std::atomic<bool> io_failed_{false};
  std::mutex error_mu_;
  std::exception_ptr first_error_;

  // One flag per reordered id: set on first processing, so edges_accessed
  // counts each edge region once.
  std::unique_ptr<std::atomic<std::uint8_t>[]> counted_;
  std::uint32_t round_ = 0;
};

// ---- templates ----------------------------------------------------------

template <class F>
void Engine::foreach_vertex(F&& f) {
  const std::uint64_t n = image_->total_ids();
  unsigned threads = std::max(1u, cfg_.threads);
  if (n < 4096) threads = 1;

  std::vector<std::vector<Activation>> found(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto body = [&](unsigned t) {
    try {
      const std::uint64_t chunk = (n + threads - 1) / threads;
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min(n, begin + chunk);
      for (std::uint64_t id = begin; id < end; ++id) {
        const auto v = static_cast<VertexId>(id);
        if (image_->is_virtual(v)) continue;
        const std::int32_t p = f(v);
        if (p > 0) found[t].push_back({v, p});
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& batch : found) worklist_.submit(batch);
}

template <class Algo>
void Engine::process_vertex(Algo& algo, VertexId u,
                            std::span<const std::byte> data,
                            std::vector<Activation>& out) {
  const bool mini = image_->is_mini(u);
  const auto nbrs = mini ? image_->neighbors(u) : image_->neighbors(u, data);
  if (metrics_) {
    if (counted_[u].exchange(1, std::memory_order_relaxed) == 0) {
      auto& counter =
          mini ? metrics_->mini_edges_accessed : metrics_->edges_accessed;
      counter.fetch_add(nbrs.size(), std::memory_order_relaxed);
    }
    metrics_->total_edge_visits.fetch_add(nbrs.size(),
                                          std::memory_order_relaxed);
    metrics_->vertices_processed.fetch_add(1, std::memory_order_relaxed);
  }
  if (log_) log_->processed(u, round_);

  const auto msg = algo.apply(u);
  for (VertexId v : nbrs) {
    const std::int32_t p = algo.propagation(msg, v);
    if (p > 0) out.push_back({v, p});
  }
}

template <class Algo>
void Engine::executor(Algo& algo, SyncBuffer* sync) {
  std::vector<VertexId> minis;
  std::vector<BlockTask> tasks;
  std::vector<Activation> buffer;
  int idle = 0;

  for (;;) {
    if (abort_.load(std::memory_order_acquire)) return;
    preload();

    minis.clear();
    tasks.clear();
    // Memory-resident mini vertices take precedence, then cached blocks.
    worklist_.pull_resident(cfg_.mini_batch, minis);
    for (std::uint32_t i = 0; i < cfg_.pull_batch; ++i) {
      auto task = worklist_.pull_cached();
      if (!task) break;
      tasks.push_back(std::move(*task));
    }

    if (minis.empty() && tasks.empty()) {
      if (worklist_.outstanding() == 0) return;
      backoff(idle);
      continue;
    }
    idle = 0;

    try {
      if (!minis.empty()) {
        buffer.clear();
        for (VertexId u : minis) process_vertex(algo, u, {}, buffer);
        submit_buffer(buffer, sync);
        worklist_.consume_resident(minis.size());
        if (metrics_) {
          metrics_->mini_tasks.fetch_add(1, std::memory_order_relaxed);
        }
      }
      for (BlockTask& task : tasks) {
        buffer.clear();
        const std::span<const std::byte> data{
            pool_.slot_data(task.slot),
            static_cast<std::size_t>(task.pages) * kBlockBytes};
        for (VertexId u : task.frontier) {
          process_vertex(algo, u, data, buffer);
        }
        submit_buffer(buffer, sync);
        release_if_freed(worklist_.finish(task.block,
                                          cfg_.early_stop_threshold));
      }
    } catch (...) {
      {
        std::lock_guard lock(error_mu_);
        if (!first_error_) first_error_ = std::current_exception();
      }
      poisoned_.store(true, std::memory_order_release);
      abort_.store(true, std::memory_order_release);
      return;
    }
  }
}

template <class Algo>
void Engine::run_executors(Algo& algo, SyncBuffer* sync) {
  const unsigned threads = std::max(1u, cfg_.threads);
  if (threads == 1) {
    executor(algo, sync);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([this, &algo, sync] { executor(algo, sync); });
    }
    for (auto& th : pool) th.join();
  }
  rethrow_if_failed();
}

template <class Algo>
void Engine::run_async(Algo& algo) {
  if (cfg_.mode != ExecMode::Async) {
    throw InvariantError("run_async requires async mode");
  }
  run_executors(algo, nullptr);
}

template <class Algo>
std::vector<Activation> Engine::run_sync_round(Algo& algo) {
  ++round_;
  worklist_.set_round(round_);
  SyncBuffer next;
  run_executors(algo, &next);
  return std::move(next.items);
}

template <class Algo>
std::size_t Engine::run_sync(Algo& algo) {
  std::size_t rounds = 0;
  while (worklist_.outstanding() > 0) {
    auto next = run_sync_round(algo);
    ++rounds;
    worklist_.submit(next);
  }
  return rounds;
}

}  // namespace acgraph
