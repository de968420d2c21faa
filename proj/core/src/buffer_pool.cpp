#include "acgraph/buffer_pool.hpp"

#include <cstdlib>
#include <new>
#include <string>

#include "acgraph/error.hpp"

namespace acgraph {

BufferPool::BufferPool(std::size_t slot_count) : capacity_(slot_count) {
  if (slot_count == 0) throw InvariantError("buffer pool needs >= 1 slot");
  data_ = static_cast<std::byte*>(
      std::aligned_alloc(kBlockBytes, slot_count * kBlockBytes));
  if (data_ == nullptr) throw std::bad_alloc();
  free_bits_.assign((slot_count + 63) / 64, ~std::uint64_t{0});
  // Mask off the bits past capacity.
  const std::size_t tail = slot_count % 64;
  if (tail != 0) free_bits_.back() = (std::uint64_t{1} << tail) - 1;
  free_count_ = slot_count;
}

BufferPool::~BufferPool() { std::free(data_); }

std::size_t BufferPool::free_count() const {
  std::lock_guard lock(mu_);
  return free_count_;
}

bool BufferPool::take(std::size_t slot) {
  const std::uint64_t mask = std::uint64_t{1} << (slot % 64);
  if ((free_bits_[slot / 64] & mask) == 0) return false;
  free_bits_[slot / 64] &= ~mask;
  --free_count_;
  return true;
}

void BufferPool::put(std::size_t slot) {
  const std::uint64_t mask = std::uint64_t{1} << (slot % 64);
  if ((free_bits_[slot / 64] & mask) != 0) {
    throw InvariantError("double release of slot " + std::to_string(slot));
  }
  free_bits_[slot / 64] |= mask;
  ++free_count_;
}

std::optional<std::uint32_t> BufferPool::allocate_run(std::uint32_t pages) {
  if (pages == 0 || pages > capacity_) return std::nullopt;
  std::lock_guard lock(mu_);
  if (free_count_ < pages) return std::nullopt;
  if (pages == 1) {
    // Rotating cursor keeps single-slot churn away from long-run scans.
    for (std::size_t probe = 0; probe < capacity_; ++probe) {
      const std::size_t slot = (cursor_ + probe) % capacity_;
      if (take(slot)) {
        cursor_ = (slot + 1) % capacity_;
        return static_cast<std::uint32_t>(slot);
      }
    }
    return std::nullopt;
  }
  std::size_t run = 0;
  for (std::size_t slot = 0; slot < capacity_; ++slot) {
    const std::uint64_t mask = std::uint64_t{1} << (slot % 64);
    run = (free_bits_[slot / 64] & mask) != 0 ? run + 1 : 0;
    if (run == pages) {
      const std::size_t start = slot + 1 - pages;
      for (std::size_t s = start; s <= slot; ++s) take(s);
      return static_cast<std::uint32_t>(start);
    }
  }
  return std::nullopt;
}

std::size_t BufferPool::allocate_batch(std::size_t want,
                                       std::vector<std::uint32_t>& out) {
  std::lock_guard lock(mu_);
  std::size_t got = 0;
  for (std::size_t probe = 0; probe < capacity_ && got < want; ++probe) {
    const std::size_t slot = (cursor_ + probe) % capacity_;
    if (take(slot)) {
      out.push_back(static_cast<std::uint32_t>(slot));
      ++got;
    }
  }
  cursor_ = (cursor_ + 1) % capacity_;
  return got;
}

void BufferPool::release_run(std::uint32_t slot, std::uint32_t pages) {
  std::lock_guard lock(mu_);
  for (std::uint32_t p = 0; p < pages; ++p) put(slot + p);
}

void BufferPool::release_batch(std::span<const std::uint32_t> slots) {
  std::lock_guard lock(mu_);
  for (std::uint32_t s : slots) put(s);
}

}  // namespace acgraph
