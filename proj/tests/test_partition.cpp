#include <doctest.h>

#include <numeric>

#include <acgraph/error.hpp>
#include <acgraph/partition.hpp>
#include <acgraph/reorder.hpp>

#include "oracles.hpp"

using namespace acgraph;

namespace {

// Directed graph with the requested out-degree per vertex; targets cycle
// through the id space.
CsrGraph graph_with_degrees(const std::vector<std::uint32_t>& degrees) {
  const auto n = static_cast<std::uint32_t>(degrees.size());
  CsrGraph g;
  g.offsets.assign(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    g.offsets[v + 1] = g.offsets[v] + degrees[v];
    for (std::uint32_t j = 0; j < degrees[v]; ++j) {
      g.targets.push_back((v + 1 + j) % n);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("classify splits on the degree threshold") {
  SUBCASE("all degree 1") {
    auto g = graph_with_degrees({1, 1, 1, 1});
    auto c = classify(g, 2);
    CHECK(c.large.empty());
    CHECK(c.mini.size() == 4);
  }
  SUBCASE("boundary at the threshold") {
    auto g = graph_with_degrees({0, 1, 2, 3, 4});
    auto c = classify(g, 2);
    CHECK(c.large == std::vector<VertexId>{3, 4});
    CHECK(c.mini == std::vector<VertexId>{0, 1, 2});
  }
  SUBCASE("degree-3 vertices are mini at threshold 3") {
    std::vector<std::uint32_t> degrees(10, 1024);
    degrees.insert(degrees.end(), 500, 3);
    degrees.insert(degrees.end(), 1000, 2);
    degrees.insert(degrees.end(), 2000, 1);
    auto g = graph_with_degrees(degrees);
    auto c = classify(g, 3);
    CHECK(c.large.size() == 10);
    CHECK(c.mini.size() == 3500);
  }
}

TEST_CASE("last-fit packing") {
  PartitionPlan plan;

  SUBCASE("exact fit uses one full block") {
    auto g = graph_with_degrees({1024});
    auto c = classify(g, 2);
    auto p = partition_lplf(g, c.large, plan);
    CHECK(p.block_count() == 1);
    CHECK(p.block_fill[0] == 1024);
    CHECK(p.fragmentation_edges() == 0);
  }

  SUBCASE("rightmost fitting block wins") {
    auto g = graph_with_degrees({600, 600, 400});
    auto c = classify(g, 2);
    auto p = partition_lplf(g, c.large, plan);
    REQUIRE(p.block_count() == 2);
    CHECK(p.block_fill[0] == 600);
    CHECK(p.block_fill[1] == 1000);
    CHECK(p.slots[2].block_id == 1);
    CHECK(p.slots[2].slot_offset == 600);
  }

  SUBCASE("oversized list spans consecutive blocks") {
    auto g = graph_with_degrees({2048});
    auto c = classify(g, 2);
    auto p = partition_lplf(g, c.large, plan);
    CHECK(p.block_count() == 2);
    CHECK(p.slots[0].page_count == 2);
    CHECK(p.slots[0].slot_offset == 0);
    CHECK(p.block_fill[0] == 1024);
    CHECK(p.block_fill[1] == 1024);
  }

  SUBCASE("window bounds how far left placement may reach") {
    auto g = graph_with_degrees({600, 1000, 300});
    auto c = classify(g, 2);

    auto wide = partition_lplf(g, c.large, PartitionPlan{});
    REQUIRE(wide.block_count() == 2);
    CHECK(wide.block_fill[0] == 900);  // 300 reaches back into block 0

    PartitionPlan tight;
    tight.window_size = 1;  // only the newest block is a candidate
    auto narrow = partition_lplf(g, c.large, tight);
    REQUIRE(narrow.block_count() == 3);
    CHECK(narrow.block_fill[2] == 300);
  }

  SUBCASE("single list never splits across blocks") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::uint32_t> degrees;
      for (int i = 0; i < 200; ++i) {
        degrees.push_back(3 + static_cast<std::uint32_t>(rng() % 900));
      }
      auto g = graph_with_degrees(degrees);
      auto c = classify(g, 2);
      auto p = partition_lplf(g, c.large, plan);
      for (const VertexSlot& s : p.slots) {
        CHECK(s.slot_offset + g.degree(s.vertex) <= kEdgesPerBlock);
      }
    }
  }
}

TEST_CASE("exact-fit accounting holds for sequential and parallel packing") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    auto g = acgraph::testing::random_graph(rng, 1500, 12.0, trial % 2 == 0);
    auto c = classify(g, 2);
    std::uint64_t large_degree_sum = 0;
    for (VertexId v : c.large) large_degree_sum += g.degree(v);

    for (bool parallel : {false, true}) {
      PartitionPlan plan;
      plan.parallel = parallel;
      plan.threads = 4;
      auto p = partition_lplf(g, c.large, plan);
      std::uint64_t fills = std::accumulate(p.block_fill.begin(),
                                            p.block_fill.end(),
                                            std::uint64_t{0});
      CHECK(fills == large_degree_sum);
      CHECK(fills + p.fragmentation_edges() ==
            static_cast<std::uint64_t>(p.block_count()) * kEdgesPerBlock);
      for (std::uint32_t fill : p.block_fill) CHECK(fill <= kEdgesPerBlock);
      CHECK(p.slots.size() == c.large.size());
      // Input order is preserved.
      for (std::size_t i = 0; i < p.slots.size(); ++i) {
        CHECK(p.slots[i].vertex == c.large[i]);
      }
    }
  }
}

TEST_CASE("reorder emits one virtual vertex per fragmented block") {
  SUBCASE("two vertices and a boundary") {
    auto g = graph_with_degrees({600, 400});
    auto c = classify(g, 2);
    auto p = partition_lplf(g, c.large, PartitionPlan{});
    REQUIRE(p.block_count() == 1);
    CHECK(p.block_fill[0] == 1000);
    auto [map, image] = reorder_and_virtualize(p, g, c.mini);
    REQUIRE(map.first_mini_id == 3);  // v600, v400, one virtual
    CHECK(map.old_of_new[0] == 0);
    CHECK(map.old_of_new[1] == 1);
    CHECK(map.old_of_new[2] == kInvalidVertex);
    CHECK(image.index[2] == (1000 | kVirtualFlag));
    CHECK(image.index[3] == 1024);  // sentinel
  }

  SUBCASE("full block emits no virtual vertex") {
    auto g = graph_with_degrees({1024});
    auto c = classify(g, 2);
    auto p = partition_lplf(g, c.large, PartitionPlan{});
    auto [map, image] = reorder_and_virtualize(p, g, c.mini);
    CHECK(map.first_mini_id == 1);
    CHECK(image.index.size() == 2);
    CHECK(image.index[1] == 1024);
  }

  SUBCASE("virtual vertex id follows the block's last list") {
    // Mirrors the schematic: the boundary entry lands right after the last
    // real vertex of its block in reordered id order.
    auto g = graph_with_degrees({600, 300, 500});
    auto c = classify(g, 2);
    auto p = partition_lplf(g, c.large, PartitionPlan{});
    auto [map, image] = reorder_and_virtualize(p, g, c.mini);
    // Block 0: 600+300 = 900 fill, virtual at 900; block 1: 500, virtual.
    REQUIRE(map.first_mini_id == 5);
    CHECK(map.old_of_new[0] == 0);
    CHECK(map.old_of_new[1] == 1);
    CHECK(map.old_of_new[2] == kInvalidVertex);  // id i+1 after block 0 lists
    CHECK(map.old_of_new[3] == 2);
    CHECK(map.old_of_new[4] == kInvalidVertex);
  }
}

TEST_CASE("degree recovery via masked offset differences") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = acgraph::testing::random_graph(rng, 800, 10.0, false);
    auto c = classify(g, 2);
    auto p = partition_lplf(g, c.large, PartitionPlan{});
    auto [map, image] = reorder_and_virtualize(p, g, c.mini);
    for (VertexId id = 0; id < map.first_mini_id; ++id) {
      if (map.old_of_new[id] == kInvalidVertex) continue;
      const std::uint64_t deg =
          masked(image.index[id + 1]) - masked(image.index[id]);
      CHECK(deg == g.degree(map.old_of_new[id]));
    }
    // Real ids inside one block form a contiguous range.
    std::vector<std::int64_t> last_block_seen;
    std::int64_t prev_block = -1;
    for (VertexId id = 0; id < map.first_mini_id; ++id) {
      if (map.old_of_new[id] == kInvalidVertex) continue;
      const auto block = static_cast<std::int64_t>(
          masked(image.index[id]) / kEdgesPerBlock);
      if (block != prev_block) {
        for (std::int64_t seen : last_block_seen) CHECK(seen != block);
        last_block_seen.push_back(block);
        prev_block = block;
      }
    }
  }
}

TEST_CASE("theta table") {
  SUBCASE("worked histogram") {
    std::vector<std::uint32_t> degrees;
    degrees.insert(degrees.end(), 500, 3);
    degrees.insert(degrees.end(), 1000, 2);
    degrees.insert(degrees.end(), 2000, 1);
    auto t = build_theta(degrees, 3, 10);
    REQUIRE(t.theta.size() == 4);
    CHECK(t.theta[3] == 10);
    CHECK(t.theta[2] == 510);
    CHECK(t.theta[1] == 1510);
    CHECK(t.theta[0] == 3510);
  }
  SUBCASE("no mini vertices") {
    auto t = build_theta({}, 2, 42);
    CHECK(t.theta == std::vector<std::uint64_t>{42, 42, 42});
  }
  SUBCASE("direct evaluation") {
    std::vector<std::uint32_t> degrees;
    degrees.insert(degrees.end(), 4, 2);
    degrees.insert(degrees.end(), 3, 1);
    degrees.insert(degrees.end(), 2, 0);
    auto t = build_theta(degrees, 2, 5);
    CHECK(t.theta == std::vector<std::uint64_t>{12, 9, 5});
  }
  SUBCASE("unsorted input is rejected") {
    std::vector<std::uint32_t> degrees{1, 2};
    CHECK_THROWS_AS(build_theta(degrees, 2, 0), InvariantError);
  }
}
