#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <vector>

namespace acgraph {

// Trace file: magic "ACGT", then (u32 iteration, u32 block) pairs, LE.
inline constexpr char kTraceMagic[4] = {'A', 'C', 'G', 'T'};

struct TraceEntry {
  std::uint32_t iteration;
  std::uint32_t block;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct AccessTrace {
  std::vector<TraceEntry> entries;

  void save(const std::filesystem::path& path) const;
  static AccessTrace load(const std::filesystem::path& path);
};

/// Collects per-iteration block requests from synchronous runs.
class TraceSink {
 public:
  void record(std::uint32_t iteration, std::uint32_t block) {
    std::lock_guard lock(mu_);
    trace_.entries.push_back({iteration, block});
  }

  AccessTrace take() {
    std::lock_guard lock(mu_);
    return std::move(trace_);
  }

 private:
  std::mutex mu_;
  AccessTrace trace_;
};

}  // namespace acgraph
