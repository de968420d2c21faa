#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "acgraph/csr.hpp"
#include "acgraph/partition.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

// Bit 63 of an index entry marks a virtual vertex (a fragmentation boundary).
inline constexpr std::uint64_t kVirtualFlag = 1ull << 63;

inline constexpr std::uint64_t masked(std::uint64_t index_entry) {
  return index_entry & ~kVirtualFlag;
}

struct ReorderMap {
  std::vector<VertexId> new_of_old;  // original id -> reordered id
  std::vector<VertexId> old_of_new;  // reordered id -> original; virtual ->
                                     // kInvalidVertex
  VertexId first_mini_id = 0;        // == number of large + virtual entries

  VertexId reordered_count() const {
    return static_cast<VertexId>(old_of_new.size());
  }
};

struct VertexIndexImage {
  // first_mini_id + 1 entries: edge-unit offsets of large and virtual
  // vertices (bit 63 = virtual) plus a closing sentinel of block_count*1024.
  std::vector<std::uint64_t> index;
};

/// Emits one virtual vertex per fragmented block, sorts large + virtual
/// entries by offset to assign reordered ids, then appends mini vertices in
/// descending-degree order. Offset differences of consecutive entries (flag
/// masked) recover large-vertex degrees exactly.
std::pair<ReorderMap, VertexIndexImage> reorder_and_virtualize(
    const Placement& placement, const CsrGraph& g,
    std::span<const VertexId> mini);

struct ThetaTable {
  // Indexed by degree d in [0, delta_deg]: smallest reordered id whose
  // degree is <= d.
  std::vector<std::uint64_t> theta;

  std::uint32_t delta_deg() const {
    return static_cast<std::uint32_t>(theta.size() - 1);
  }
};

/// Degrees must arrive sorted descending (the reordered mini id order).
ThetaTable build_theta(std::span<const std::uint32_t> mini_degrees,
                       std::uint32_t delta_deg, VertexId first_mini_id);

}  // namespace acgraph
