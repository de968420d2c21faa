#include "acgraph/block_meta.hpp"

#include <cstring>
#include <limits>
#include <string>
#include <thread>

#include "acgraph/error.hpp"

namespace acgraph {

const char* to_string(BlockState s) {
  switch (s) {
    case BlockState::Inactive: return "inactive";
    case BlockState::Uncached: return "uncached";
    case BlockState::Cached: return "cached";
    case BlockState::Processing: return "processing";
    case BlockState::Reactivated: return "reactivated";
  }
  return "?";
}

std::int32_t neutral_priority(PriorityOrder order) {
  return order == PriorityOrder::MinFirst
             ? std::numeric_limits<std::int32_t>::max()
             : std::numeric_limits<std::int32_t>::min();
}

std::int32_t combine_priority(std::int32_t a, std::int32_t b,
                              PriorityOrder order) {
  return order == PriorityOrder::MinFirst ? std::min(a, b) : std::max(a, b);
}

void BlockMeta::lock() {
  int spins = 0;
  for (;;) {
    if ((data_ref.fetch_or(1, std::memory_order_acquire) & 1) == 0) return;
    if (++spins < 64) {
#if defined(__x86_64__) || defined(__i386__)
      __builtin_ia32_pause();
#endif
    } else {
      std::this_thread::yield();
      spins = 0;
    }
  }
}

void BlockMeta::unlock() {
  data_ref.fetch_and(~std::uint64_t{1}, std::memory_order_release);
}

void BlockMeta::set_slot(std::uint32_t s) {
  const std::uint64_t lockbit =
      data_ref.load(std::memory_order_relaxed) & 1;
  data_ref.store((static_cast<std::uint64_t>(s) + 1) << 1 | lockbit,
                 std::memory_order_relaxed);
}

void BlockMeta::clear_slot() {
  data_ref.fetch_and(std::uint64_t{1}, std::memory_order_relaxed);
}

namespace {

inline VertexId sparse_get(const std::uint8_t* payload, std::uint32_t i) {
  VertexId v;
  std::memcpy(&v, payload + i * 4, 4);
  return v;
}

inline void sparse_set(std::uint8_t* payload, std::uint32_t i, VertexId v) {
  std::memcpy(payload + i * 4, &v, 4);
}

}  // namespace

bool BlockMeta::afs_insert(VertexId v, std::int32_t p, PriorityOrder order) {
  bool inserted = false;
  if (!afs_dense()) {
    bool found = false;
    for (std::uint32_t i = 0; i < count; ++i) {
      if (sparse_get(payload, i) == v) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (count < kAfsSparseCapacity) {
        sparse_set(payload, count, v);
        ++count;
      } else {
        // 12th distinct vertex: convert to the bitmap representation.
        VertexId sparse[kAfsSparseCapacity + 1];
        for (std::uint32_t i = 0; i < kAfsSparseCapacity; ++i) {
          sparse[i] = sparse_get(payload, i);
        }
        sparse[kAfsSparseCapacity] = v;
        for (VertexId id : sparse) {
          if (id - v_start >= kAfsDenseBits) {
            throw InvariantError(
                "frontier id " + std::to_string(id) +
                " outside dense range of block starting at " +
                std::to_string(v_start));
          }
        }
        std::memset(payload, 0, kAfsPayloadBytes);
        for (VertexId id : sparse) {
          const std::uint32_t bit = id - v_start;
          payload[bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
        }
        ++count;
      }
      inserted = true;
    }
  } else {
    const std::uint32_t bit = v - v_start;
    if (bit >= kAfsDenseBits) {
      throw InvariantError("frontier id " + std::to_string(v) +
                           " outside dense range of block starting at " +
                           std::to_string(v_start));
    }
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (bit % 8));
    if ((payload[bit / 8] & mask) == 0) {
      payload[bit / 8] |= mask;
      ++count;
      inserted = true;
    }
  }
  priority = combine_priority(priority, p, order);
  return inserted;
}

void BlockMeta::afs_drain(std::vector<VertexId>& out, PriorityOrder order) {
  if (!afs_dense()) {
    for (std::uint32_t i = 0; i < count; ++i) {
      out.push_back(sparse_get(payload, i));
    }
  } else {
    for (std::uint32_t byte = 0; byte < kAfsPayloadBytes; ++byte) {
      std::uint8_t bits = payload[byte];
      while (bits != 0) {
        const unsigned bit = static_cast<unsigned>(__builtin_ctz(bits));
        out.push_back(v_start + byte * 8 + bit);
        bits = static_cast<std::uint8_t>(bits & (bits - 1));
      }
    }
    std::memset(payload, 0, kAfsPayloadBytes);
  }
  count = 0;
  priority = neutral_priority(order);
}

bool BlockMeta::afs_contains(VertexId v) const {
  if (!afs_dense()) {
    for (std::uint32_t i = 0; i < count; ++i) {
      if (sparse_get(payload, i) == v) return true;
    }
    return false;
  }
  const std::uint32_t bit = v - v_start;
  if (bit >= kAfsDenseBits) return false;
  return (payload[bit / 8] & (1u << (bit % 8))) != 0;
}

}  // namespace acgraph
