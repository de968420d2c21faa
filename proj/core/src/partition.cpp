#include "acgraph/partition.hpp"

#include <deque>
#include <thread>

#include "acgraph/error.hpp"

namespace acgraph {

Classification classify(const CsrGraph& g, std::uint32_t degree_threshold) {
  Classification c;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > degree_threshold) {
      c.large.push_back(v);
    } else {
      c.mini.push_back(v);
    }
  }
  return c;
}

std::uint64_t Placement::fragmentation_edges() const {
  std::uint64_t frag = 0;
  for (std::uint32_t fill : block_fill) frag += kEdgesPerBlock - fill;
  return frag;
}

namespace {

Placement pack_sequential(const CsrGraph& g, std::span<const VertexId> large,
                          const PartitionPlan& plan) {
  if (plan.window_size == 0) {
    throw InvariantError("partition window size must be >= 1");
  }
  Placement p;
  p.slots.reserve(large.size());
  std::deque<std::uint32_t> window;  // open blocks, rightmost = most recent

  for (VertexId v : large) {
    const std::uint64_t deg = g.degree(v);
    if (deg > kEdgesPerBlock) {
      // Dedicated aligned run; never enters the window.
      const auto pages = static_cast<std::uint32_t>(
          (deg + kEdgesPerBlock - 1) / kEdgesPerBlock);
      const auto start = static_cast<std::uint32_t>(p.block_fill.size());
      for (std::uint32_t i = 0; i + 1 < pages; ++i) {
        p.block_fill.push_back(kEdgesPerBlock);
      }
      p.block_fill.push_back(static_cast<std::uint32_t>(
          deg - static_cast<std::uint64_t>(pages - 1) * kEdgesPerBlock));
      p.slots.push_back({v, start, 0, pages});
      continue;
    }

    const auto need = static_cast<std::uint32_t>(deg);
    bool placed = false;
    for (auto it = window.rbegin(); it != window.rend(); ++it) {
      const std::uint32_t b = *it;
      if (kEdgesPerBlock - p.block_fill[b] >= need) {
        p.slots.push_back({v, b, p.block_fill[b], 1});
        p.block_fill[b] += need;
        placed = true;
        break;
      }
    }
    if (!placed) {
      const auto b = static_cast<std::uint32_t>(p.block_fill.size());
      p.block_fill.push_back(need);
      p.slots.push_back({v, b, 0, 1});
      window.push_back(b);
      if (window.size() > plan.window_size) window.pop_front();
    }
  }
  return p;
}

}  // namespace

Placement partition_lplf(const CsrGraph& g, std::span<const VertexId> large,
                         const PartitionPlan& plan) {
  const std::uint32_t threads = plan.parallel ? std::max(1u, plan.threads) : 1;
  if (threads == 1 || large.size() < threads * 64) {
    return pack_sequential(g, large, plan);
  }

  // Each thread packs a contiguous chunk independently; block ids are then
  // renumbered by chunk prefix so the merged placement stays in input order.
  std::vector<Placement> parts(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (large.size() + threads - 1) / threads;
  for (std::uint32_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(large.size(), begin + chunk);
      if (begin < end) {
        parts[t] =
            pack_sequential(g, large.subspan(begin, end - begin), plan);
      }
    });
  }
  for (auto& th : pool) th.join();

  Placement merged;
  for (Placement& part : parts) {
    const auto base = static_cast<std::uint32_t>(merged.block_fill.size());
    for (VertexSlot s : part.slots) {
      s.block_id += base;
      merged.slots.push_back(s);
    }
    merged.block_fill.insert(merged.block_fill.end(), part.block_fill.begin(),
                             part.block_fill.end());
  }
  return merged;
}

}  // namespace acgraph
