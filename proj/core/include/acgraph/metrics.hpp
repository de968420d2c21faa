#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace acgraph {

inline constexpr std::uint32_t kMetricsVersion = 1;
inline constexpr std::uint32_t kSampleWindowMs = 50;

/// Run instrumentation. Counters are relaxed atomics; totals are exact only
/// once the run has quiesced. edges_accessed counts each block-resident edge
/// once (first processing of its owner), so bytes_read / edges_accessed is
/// the read-inflation figure with a 4.0 floor; total_edge_visits counts every
/// traversal and exposes work inflation.
class Metrics {
 public:
  Metrics() { reset(); }

  void reset();

  // -- recording --------------------------------------------------------
  void on_read(std::uint64_t bytes);  // adds to bytes_read + current window
  void add(std::atomic<std::uint64_t> Metrics::* counter, std::uint64_t n) {
    (this->*counter).fetch_add(n, std::memory_order_relaxed);
  }

  std::atomic<std::uint64_t> bytes_read;
  std::atomic<std::uint64_t> blocks_loaded;
  std::atomic<std::uint64_t> blocks_reused;
  std::atomic<std::uint64_t> block_tasks;
  std::atomic<std::uint64_t> mini_tasks;
  std::atomic<std::uint64_t> edges_accessed;       // distinct, block region
  std::atomic<std::uint64_t> mini_edges_accessed;  // distinct, mini region
  std::atomic<std::uint64_t> total_edge_visits;
  std::atomic<std::uint64_t> vertices_processed;   // frontier entries consumed
  std::atomic<std::uint64_t> activations;          // distinct insertions

  // -- derived ----------------------------------------------------------
  std::optional<double> bytes_per_edge() const;
  std::vector<std::uint64_t> window_bytes() const;

  /// Peak resident set in bytes, when the OS reports it.
  static std::optional<std::uint64_t> peak_rss_bytes();

  std::string report_json(bool include_windows = true) const;
  std::string report_human() const;

 private:
  std::chrono::steady_clock::time_point start_;
  mutable std::mutex window_mu_;
  std::vector<std::uint64_t> windows_;
};

}  // namespace acgraph
