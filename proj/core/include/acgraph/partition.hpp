#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acgraph/csr.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

struct PartitionPlan {
  std::uint32_t window_size = 8;       // sliding window, in blocks
  std::uint32_t degree_threshold = 2;  // mini/large boundary (delta_deg)
  bool parallel = false;
  std::uint32_t threads = 1;
};

struct Classification {
  std::vector<VertexId> large;  // deg > threshold, ascending id order
  std::vector<VertexId> mini;   // deg <= threshold, ascending id order
};

Classification classify(const CsrGraph& g, std::uint32_t degree_threshold);

struct VertexSlot {
  VertexId vertex;
  std::uint32_t block_id;     // first block of the run for multi-page lists
  std::uint32_t slot_offset;  // in edges within the block; 0 for multi-page
  std::uint32_t page_count;   // > 1 only when degree > kEdgesPerBlock
};

struct Placement {
  std::vector<VertexSlot> slots;           // one per large vertex, input order
  std::vector<std::uint32_t> block_fill;   // edges used per block

  std::uint32_t block_count() const {
    return static_cast<std::uint32_t>(block_fill.size());
  }
  std::uint64_t fragmentation_edges() const;
};

/// Locality-preserving last-fit packing. Each vertex goes to the rightmost
/// window block with room; otherwise a new block is created and the window
/// slides by one. Lists larger than one block get a dedicated run of
/// consecutive fresh blocks outside the window.
Placement partition_lplf(const CsrGraph& g, std::span<const VertexId> large,
                         const PartitionPlan& plan);

}  // namespace acgraph
