#include <doctest.h>

#include <stdexcept>

#include <acgraph/algorithms.hpp>
#include <acgraph/engine.hpp>
#include <acgraph/error.hpp>
#include <acgraph/image_write.hpp>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace acgraph;
using namespace acgraph::testing;

namespace {

// Path graph packed as large vertices (threshold 0) so waves of neighbor
// activations keep landing in the already-loaded block.
struct ChainFixture {
  TempDir tmp{"engine_chain"};
  OpenImage image;

  explicit ChainFixture(std::uint32_t length = 120)
      : image([&] {
          std::vector<Edge> edges;
          for (VertexId v = 0; v + 1 < length; ++v) edges.push_back({v, v + 1});
          auto g = CsrGraph::from_edges(length, edges, true);
          PartitionPlan plan;
          plan.degree_threshold = 0;
          build_image(g, plan, tmp.path());
          return OpenImage::open(tmp.path());
        }()) {}
};

struct NullAlgo {
  int apply(VertexId) const { return 0; }
  std::int32_t propagation(const int&, VertexId) const { return 0; }
};

struct ThrowingAlgo {
  int apply(VertexId) const { throw std::runtime_error("user failure"); }
  std::int32_t propagation(const int&, VertexId) const { return 0; }
};

}  // namespace

TEST_CASE("empty worklist returns immediately") {
  ChainFixture f;
  Engine engine(f.image, RunConfig{});
  NullAlgo algo;
  engine.run_async(algo);  // must not hang
  CHECK(engine.worklist().outstanding() == 0);
}

TEST_CASE("foreach_vertex") {
  ChainFixture f;
  SUBCASE("zero priorities leave the worklist unchanged") {
    Metrics metrics;
    Engine engine(f.image, RunConfig{}, &metrics);
    engine.foreach_vertex([](VertexId) -> std::int32_t { return 0; });
    CHECK(engine.worklist().outstanding() == 0);
    CHECK(metrics.activations.load() == 0);
  }
  SUBCASE("every real vertex activates exactly once, virtual never") {
    Metrics metrics;
    Engine engine(f.image, RunConfig{}, &metrics);
    std::atomic<std::uint64_t> visits{0};
    engine.foreach_vertex([&](VertexId) -> std::int32_t {
      visits.fetch_add(1);
      return 1;
    });
    std::uint64_t real = 0;
    for (VertexId v = 0; v < f.image.total_ids(); ++v) {
      if (!f.image.is_virtual(v)) ++real;
    }
    CHECK(visits.load() == real);
    CHECK(metrics.activations.load() == real);
    NullAlgo algo;
    engine.run_async(algo);
    CHECK(metrics.vertices_processed.load() == real);
  }
}

TEST_CASE("block reuse avoids repeat reads") {
  ChainFixture f;
  Metrics metrics;
  EventLog log;
  RunConfig cfg;
  cfg.buffer_bytes = 8 * 4096;
  AlgoContext ctx{&metrics, &log, nullptr};

  auto dis = bfs(f.image, 0, cfg, ctx);
  for (std::uint32_t v = 0; v < 120; ++v) CHECK(dis[v] == v);

  CHECK(metrics.blocks_reused.load() > 0);
  CHECK(metrics.blocks_loaded.load() < metrics.block_tasks.load());
  CHECK(metrics.blocks_loaded.load() + metrics.blocks_reused.load() ==
        metrics.block_tasks.load());

  // A reactivated block is reprocessed without a disk read in between:
  // replay the log counting loads and processing starts per block.
  std::uint64_t loads = 0, processings = 0;
  for (const auto& e : log.snapshot()) {
    if (e.kind != EventLog::Kind::Transition) continue;
    const auto from = static_cast<BlockState>(e.a);
    const auto to = static_cast<BlockState>(e.b);
    if (from == BlockState::Uncached && to == BlockState::Cached) ++loads;
    if (from == BlockState::Cached && to == BlockState::Processing) {
      ++processings;
    }
  }
  CHECK(loads == metrics.blocks_loaded.load());
  CHECK(processings > loads);

  std::string why;
  CHECK_MESSAGE(check_transitions(log.snapshot(), &why), why);
}

TEST_CASE("no lost activations") {
  ChainFixture f;
  Metrics metrics;
  RunConfig cfg;
  cfg.threads = 4;
  cfg.buffer_bytes = 2 * 4096;
  bfs(f.image, 0, cfg, {&metrics, nullptr, nullptr});
  CHECK(metrics.activations.load() == metrics.vertices_processed.load());
}

TEST_CASE("one slot pool stays live under many threads") {
  TempDir tmp("engine_tiny");
  std::mt19937_64 rng(99);
  auto g = random_graph(rng, 400, 10.0, true);
  build_image(g, PartitionPlan{}, tmp.path());
  auto image = OpenImage::open(tmp.path());

  RunConfig cfg;
  cfg.threads = 8;
  cfg.buffer_bytes = 4096;  // one slot
  auto dis = bfs(image, 0, cfg);
  auto expect = bfs_oracle(g, 0);
  CHECK(dis == expect);
}

TEST_CASE("user failure poisons the run") {
  ChainFixture f;
  Engine engine(f.image, RunConfig{});
  engine.seed(0, 1);
  ThrowingAlgo algo;
  CHECK_THROWS_AS(engine.run_async(algo), std::runtime_error);
  CHECK(engine.poisoned());
}

TEST_CASE("read failure aborts the run fail-stop") {
  ChainFixture f;
  Engine engine(f.image, RunConfig{});
  // Shrink the block file under the already-open descriptor: reads hit EOF.
  std::filesystem::resize_file(f.image.blocks_path(), 0);
  engine.seed(0, 1);
  NullAlgo algo;
  CHECK_THROWS_AS(engine.run_async(algo), IoError);
}

TEST_CASE("mini-only images never touch the block file") {
  TempDir tmp("engine_mini");
  auto g = CsrGraph::from_edges(3, {{Edge{0, 1}, Edge{1, 2}}}, true);
  build_image(g, PartitionPlan{}, tmp.path());
  auto image = OpenImage::open(tmp.path());

  Metrics metrics;
  auto dis = bfs(image, 0, RunConfig{}, {&metrics, nullptr, nullptr});
  CHECK(dis == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(metrics.bytes_read.load() == 0);
  CHECK(metrics.mini_tasks.load() > 0);
}

TEST_CASE("async mode refuses a trace sink") {
  ChainFixture f;
  TraceSink sink;
  RunConfig cfg;  // async
  CHECK_THROWS_AS(Engine(f.image, cfg, nullptr, nullptr, &sink),
                  InvariantError);
}
