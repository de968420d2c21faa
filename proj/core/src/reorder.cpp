#include "acgraph/reorder.hpp"

#include <algorithm>
#include <string>

#include "acgraph/error.hpp"

namespace acgraph {

std::pair<ReorderMap, VertexIndexImage> reorder_and_virtualize(
    const Placement& placement, const CsrGraph& g,
    std::span<const VertexId> mini) {
  struct Entry {
    std::uint64_t offset;  // edge units from the start of the block region
    VertexId vertex;       // kInvalidVertex for virtual entries
  };
  std::vector<Entry> entries;
  entries.reserve(placement.slots.size() + placement.block_fill.size());

  for (const VertexSlot& s : placement.slots) {
    entries.push_back(
        {static_cast<std::uint64_t>(s.block_id) * kEdgesPerBlock +
             s.slot_offset,
         s.vertex});
  }
  for (std::uint32_t b = 0; b < placement.block_count(); ++b) {
    if (placement.block_fill[b] < kEdgesPerBlock) {
      entries.push_back(
          {static_cast<std::uint64_t>(b) * kEdgesPerBlock +
               placement.block_fill[b],
           kInvalidVertex});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.offset < b.offset; });

  ReorderMap map;
  map.new_of_old.assign(g.vertex_count(), kInvalidVertex);
  map.old_of_new.reserve(entries.size() + mini.size());

  VertexIndexImage image;
  image.index.reserve(entries.size() + 1);
  for (const Entry& e : entries) {
    const VertexId id = static_cast<VertexId>(map.old_of_new.size());
    map.old_of_new.push_back(e.vertex);
    if (e.vertex != kInvalidVertex) map.new_of_old[e.vertex] = id;
    image.index.push_back(e.vertex == kInvalidVertex ? e.offset | kVirtualFlag
                                                     : e.offset);
  }
  image.index.push_back(static_cast<std::uint64_t>(placement.block_count()) *
                        kEdgesPerBlock);
  map.first_mini_id = static_cast<VertexId>(map.old_of_new.size());

  // Mini vertices: descending degree, ties by ascending original id.
  std::vector<VertexId> mini_sorted(mini.begin(), mini.end());
  std::stable_sort(mini_sorted.begin(), mini_sorted.end(),
                   [&g](VertexId a, VertexId b) {
                     return g.degree(a) > g.degree(b);
                   });
  for (VertexId v : mini_sorted) {
    map.new_of_old[v] = static_cast<VertexId>(map.old_of_new.size());
    map.old_of_new.push_back(v);
  }
  return {std::move(map), std::move(image)};
}

ThetaTable build_theta(std::span<const std::uint32_t> mini_degrees,
                       std::uint32_t delta_deg, VertexId first_mini_id) {
  std::vector<std::uint64_t> class_count(delta_deg + 1, 0);
  std::uint32_t prev = kEdgesPerBlock + 1;
  bool first = true;
  for (std::uint32_t d : mini_degrees) {
    if (d > delta_deg) {
      throw InvariantError("mini degree " + std::to_string(d) +
                           " exceeds threshold " + std::to_string(delta_deg));
    }
    if (!first && d > prev) {
      throw InvariantError("mini degrees not sorted descending");
    }
    prev = d;
    first = false;
    ++class_count[d];
  }

  ThetaTable t;
  t.theta.assign(delta_deg + 1, 0);
  t.theta[delta_deg] = first_mini_id;
  for (std::uint32_t d = delta_deg; d > 0; --d) {
    t.theta[d - 1] = t.theta[d] + class_count[d];
  }
  return t;
}

}  // namespace acgraph
