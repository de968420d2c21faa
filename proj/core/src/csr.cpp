#include "acgraph/csr.hpp"

#include <algorithm>
#include <string>

#include "acgraph/error.hpp"

namespace acgraph {

std::uint64_t CsrGraph::degree(VertexId v) const {
  if (v >= vertex_count()) {
    throw InvariantError("degree: vertex " + std::to_string(v) +
                         " out of range [0, " + std::to_string(vertex_count()) +
                         ")");
  }
  return offsets[v + 1] - offsets[v];
}

std::span<const VertexId> CsrGraph::neighbors(VertexId v) const {
  if (v >= vertex_count()) {
    throw InvariantError("neighbors: vertex " + std::to_string(v) +
                         " out of range");
  }
  return {targets.data() + offsets[v],
          static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
}

CsrGraph CsrGraph::from_edges(std::uint32_t n, std::span<const Edge> edges,
                              bool symmetrize) {
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw InvariantError("edge (" + std::to_string(e.src) + ", " +
                           std::to_string(e.dst) + ") exceeds vertex count " +
                           std::to_string(n));
    }
  }

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges) {
    ++counts[e.src + 1];
    if (symmetrize) ++counts[e.dst + 1];
  }
  for (std::size_t v = 0; v < n; ++v) counts[v + 1] += counts[v];

  std::vector<VertexId> raw(counts[n]);
  std::vector<std::uint64_t> cursor(counts.begin(), counts.end() - 1);
  for (const Edge& e : edges) {
    raw[cursor[e.src]++] = e.dst;
    if (symmetrize) raw[cursor[e.dst]++] = e.src;
  }

  CsrGraph g;
  g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  g.targets.reserve(raw.size());
  for (std::uint32_t v = 0; v < n; ++v) {
    auto begin = raw.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto end = raw.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(begin, end);
    auto last = std::unique(begin, end);
    g.targets.insert(g.targets.end(), begin, last);
    g.offsets[v + 1] = g.targets.size();
  }
  return g;
}

std::vector<Edge> emit_edge_list(const CsrGraph& g) {
  std::vector<Edge> out;
  out.reserve(g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId t : g.neighbors(v)) out.push_back({v, t});
  }
  return out;
}

}  // namespace acgraph
