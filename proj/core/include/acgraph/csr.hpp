#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acgraph/types.hpp"

namespace acgraph {

/// Immutable in-memory CSR. Adjacency lists are sorted ascending and
/// deduplicated; self-loops are kept.
struct CsrGraph {
  std::vector<std::uint64_t> offsets;  // n + 1 entries, offsets[0] = 0
  std::vector<VertexId> targets;       // m entries, each < n

  std::uint32_t vertex_count() const {
    return static_cast<std::uint32_t>(offsets.size() - 1);
  }
  std::uint64_t edge_count() const { return targets.size(); }

  std::uint64_t degree(VertexId v) const;
  std::span<const VertexId> neighbors(VertexId v) const;

  /// Builds a CSR over exactly n vertices. Duplicate edges collapse; with
  /// symmetrize every (u,v) also yields (v,u). Endpoints must be < n.
  static CsrGraph from_edges(std::uint32_t n, std::span<const Edge> edges,
                             bool symmetrize);

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;
};

/// Flattens a CSR back to (src, dst) records in vertex order. Isolated
/// vertices do not appear (edge lists cannot express them).
std::vector<Edge> emit_edge_list(const CsrGraph& g);

}  // namespace acgraph
