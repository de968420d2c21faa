#include "acgraph/metrics.hpp"

#include <sys/resource.h>

#include <sstream>

#include <nlohmann/json.hpp>

namespace acgraph {

void Metrics::reset() {
  bytes_read = 0;
  blocks_loaded = 0;
  blocks_reused = 0;
  block_tasks = 0;
  mini_tasks = 0;
  edges_accessed = 0;
  mini_edges_accessed = 0;
  total_edge_visits = 0;
  vertices_processed = 0;
  activations = 0;
  start_ = std::chrono::steady_clock::now();
  std::lock_guard lock(window_mu_);
  windows_.clear();
}

void Metrics::on_read(std::uint64_t bytes) {
  bytes_read.fetch_add(bytes, std::memory_order_relaxed);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
  const auto window = static_cast<std::size_t>(elapsed / kSampleWindowMs);
  std::lock_guard lock(window_mu_);
  if (windows_.size() <= window) windows_.resize(window + 1, 0);
  windows_[window] += bytes;
}

std::optional<double> Metrics::bytes_per_edge() const {
  const std::uint64_t edges = edges_accessed.load(std::memory_order_relaxed);
  if (edges == 0) return std::nullopt;
  return static_cast<double>(bytes_read.load(std::memory_order_relaxed)) /
         static_cast<double>(edges);
}

std::vector<std::uint64_t> Metrics::window_bytes() const {
  std::lock_guard lock(window_mu_);
  return windows_;
}

std::optional<std::uint64_t> Metrics::peak_rss_bytes() {
  struct rusage usage {};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return std::nullopt;
  // ru_maxrss is in kilobytes on Linux.
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

std::string Metrics::report_json(bool include_windows) const {
  nlohmann::json j;
  j["metrics_version"] = kMetricsVersion;
  j["bytes_read"] = bytes_read.load();
  j["blocks_loaded"] = blocks_loaded.load();
  j["blocks_reused"] = blocks_reused.load();
  j["block_tasks"] = block_tasks.load();
  j["mini_tasks"] = mini_tasks.load();
  j["edges_accessed"] = edges_accessed.load();
  j["mini_edges_accessed"] = mini_edges_accessed.load();
  j["total_edge_visits"] = total_edge_visits.load();
  j["vertices_processed"] = vertices_processed.load();
  j["activations"] = activations.load();
  if (auto bpe = bytes_per_edge()) {
    j["bytes_per_edge"] = *bpe;
  } else {
    j["bytes_per_edge"] = nullptr;
  }
  if (include_windows) {
    j["window_ms"] = kSampleWindowMs;
    j["window_bytes"] = window_bytes();
  }
  if (auto rss = peak_rss_bytes()) {
    j["peak_rss_bytes"] = *rss;
  }
  return j.dump();
}

std::string Metrics::report_human() const {
  std::ostringstream out;
  out << "bytes_read          " << bytes_read.load() << '\n'
      << "blocks_loaded       " << blocks_loaded.load() << '\n'
      << "blocks_reused       " << blocks_reused.load() << '\n'
      << "block_tasks         " << block_tasks.load() << '\n'
      << "mini_tasks          " << mini_tasks.load() << '\n'
      << "edges_accessed      " << edges_accessed.load() << '\n'
      << "mini_edges_accessed " << mini_edges_accessed.load() << '\n'
      << "total_edge_visits   " << total_edge_visits.load() << '\n'
      << "vertices_processed  " << vertices_processed.load() << '\n'
      << "activations         " << activations.load() << '\n';
  if (auto bpe = bytes_per_edge()) {
    out << "bytes_per_edge      " << *bpe << '\n';
  }
  if (auto rss = peak_rss_bytes()) {
    out << "peak_rss_bytes      " << *rss << '\n';
  }
  return out.str();
}

}  // namespace acgraph
