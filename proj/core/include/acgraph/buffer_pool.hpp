#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "acgraph/types.hpp"

namespace acgraph {

/// Fixed pool of 4 KB page slots backed by one page-aligned allocation.
/// Allocation never blocks: callers get fewer slots (or none) when the pool
/// is drained. Multi-page requests need contiguous slot indices so a block
/// run stays one flat span.
class BufferPool {
 public:
  explicit BufferPool(std::size_t slot_count);
  ~BufferPool();

  BufferPool(const BufferPool&) = delete;
  BufferPool& operator=(const BufferPool&) = delete;

  std::size_t capacity() const { return capacity_; }
  std::size_t free_count() const;

  std::byte* slot_data(std::uint32_t slot) {
    return data_ + static_cast<std::size_t>(slot) * kBlockBytes;
  }
  const std::byte* slot_data(std::uint32_t slot) const {
    return data_ + static_cast<std::size_t>(slot) * kBlockBytes;
  }

  /// First slot of `pages` contiguous free slots, or nullopt.
  std::optional<std::uint32_t> allocate_run(std::uint32_t pages);

  /// Appends up to `want` single slots to out; returns how many were taken.
  std::size_t allocate_batch(std::size_t want,
                             std::vector<std::uint32_t>& out);

  void release_run(std::uint32_t slot, std::uint32_t pages);
  void release_batch(std::span<const std::uint32_t> slots);

 private:
  std::byte* data_ = nullptr;
  std::size_t capacity_ = 0;

  mutable std::mutex mu_;
  std::vector<std::uint64_t> free_bits_;  // 1 = free
  std::size_t free_count_ = 0;
  std::size_t cursor_ = 0;

  bool take(std::size_t slot);
  void put(std::size_t slot);
};

}  // namespace acgraph
