#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "acgraph/types.hpp"

namespace acgraph {

enum class BlockState : std::uint8_t {
  Inactive = 0,
  Uncached = 1,
  Cached = 2,
  Processing = 3,
  Reactivated = 4,
};

const char* to_string(BlockState s);

inline constexpr std::uint32_t kAfsPayloadBytes = 45;
inline constexpr std::uint32_t kAfsSparseCapacity = kAfsPayloadBytes / 4;  // 11
inline constexpr std::uint32_t kAfsDenseBits = kAfsPayloadBytes * 8;       // 360

std::int32_t neutral_priority(PriorityOrder order);
std::int32_t combine_priority(std::int32_t a, std::int32_t b,
                              PriorityOrder order);

/// Per-block record, exactly one cache line to avoid false sharing. The low
/// bit of data_ref is a spinlock guarding every other field; the remaining
/// bits hold the buffer-slot reference (slot + 1, 0 = none). The adaptive
/// frontier set stores up to 11 ids inline and converts to a 360-bit bitmap
/// over [v_start, v_start + 360) on the 12th distinct insert.
struct alignas(64) BlockMeta {
  std::atomic<std::uint64_t> data_ref{0};
  std::int32_t priority{0};
  std::uint32_t v_start{0};
  std::uint16_t count{0};
  std::uint8_t payload[kAfsPayloadBytes]{};
  std::uint8_t state{static_cast<std::uint8_t>(BlockState::Inactive)};

  void lock();
  void unlock();

  bool has_slot() const { return (data_ref.load(std::memory_order_relaxed) >> 1) != 0; }
  std::uint32_t slot() const {
    return static_cast<std::uint32_t>(
               (data_ref.load(std::memory_order_relaxed) >> 1)) - 1;
  }
  void set_slot(std::uint32_t s);
  void clear_slot();

  BlockState block_state() const { return static_cast<BlockState>(state); }
  void set_state(BlockState s) { state = static_cast<std::uint8_t>(s); }

  /// Records v once and folds p into the block priority. Returns true when v
  /// was not already present. Caller holds the lock.
  bool afs_insert(VertexId v, std::int32_t p, PriorityOrder order);

  /// Moves all frontier ids into out and resets the set to empty with a
  /// neutral priority. Caller holds the lock.
  void afs_drain(std::vector<VertexId>& out, PriorityOrder order);

  bool afs_contains(VertexId v) const;
  bool afs_dense() const { return count > kAfsSparseCapacity; }
};

static_assert(sizeof(BlockMeta) == 64, "block metadata must stay one line");

class MetaLock {
 public:
  explicit MetaLock(BlockMeta& m) : meta_(m) { meta_.lock(); }
  ~MetaLock() { meta_.unlock(); }
  MetaLock(const MetaLock&) = delete;
  MetaLock& operator=(const MetaLock&) = delete;

 private:
  BlockMeta& meta_;
};

}  // namespace acgraph
