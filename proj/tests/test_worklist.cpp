#include <doctest.h>

#include <acgraph/error.hpp>
#include <acgraph/image_write.hpp>
#include <acgraph/worklist.hpp>

#include "helpers.hpp"

using namespace acgraph;
using namespace acgraph::testing;

namespace {

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

// Three packed blocks with two large vertices each, a trailing virtual entry
// per block, then two mini vertices.
struct Fixture {
  TempDir tmp{"worklist"};
  OpenImage image;

  Fixture()
      : image([this] {
          auto g = graph_with_degrees({600, 400, 600, 400, 600, 400, 1, 2});
          build_image(g, PartitionPlan{}, tmp.path());
          return OpenImage::open(tmp.path());
        }()) {}
};

}  // namespace

TEST_CASE("first activation moves a block to the uncached queue") {
  Fixture f;
  Worklist w(f.image, PriorityOrder::MinFirst);
  CHECK(w.outstanding() == 0);
  w.submit(0, 4);  // large vertex of block 0
  CHECK(w.outstanding() == 1);
  CHECK(w.uncached_size() == 1);
  CHECK(w.meta(0).block_state() == BlockState::Uncached);
  CHECK(w.meta(0).priority == 4);
}

TEST_CASE("activations of one uncached block keep a single queue entry") {
  Fixture f;
  Worklist w(f.image, PriorityOrder::MinFirst);
  w.submit(0, 7);
  w.submit(1, 2);  // same block, better priority
  CHECK(w.uncached_size() == 1);
  CHECK(w.meta(0).priority == 2);
  CHECK(w.outstanding() == 1);  // one active block unit
}

TEST_CASE("uncached queue pops by priority under both orders") {
  Fixture f;
  SUBCASE("min first") {
    Worklist w(f.image, PriorityOrder::MinFirst);
    w.submit(0, 9);  // block 0
    w.submit(3, 1);  // block 1
    w.submit(6, 5);  // block 2
    CHECK(*w.pop_uncached() == 1);
    CHECK(*w.pop_uncached() == 2);
    CHECK(*w.pop_uncached() == 0);
    CHECK_FALSE(w.pop_uncached().has_value());
  }
  SUBCASE("max first") {
    Worklist w(f.image, PriorityOrder::MaxFirst);
    w.submit(0, 9);
    w.submit(3, 1);
    w.submit(6, 5);
    CHECK(*w.pop_uncached() == 0);
    CHECK(*w.pop_uncached() == 2);
    CHECK(*w.pop_uncached() == 1);
  }
}

TEST_CASE("mini activations take the resident queue") {
  Fixture f;
  Worklist w(f.image, PriorityOrder::MinFirst);
  const VertexId mini = f.image.first_mini_id();
  w.submit(mini, 1);
  CHECK(w.outstanding() == 1);
  CHECK(w.uncached_size() == 0);
  std::vector<VertexId> out;
  CHECK(w.pull_resident(8, out) == 1);
  CHECK(out[0] == mini);
  w.consume_resident(1);
  CHECK(w.outstanding() == 0);
}

TEST_CASE("virtual activations are rejected") {
  Fixture f;
  Worklist w(f.image, PriorityOrder::MinFirst);
  REQUIRE(f.image.is_virtual(2));
  CHECK_THROWS_AS(w.submit(2, 1), InvariantError);
}

TEST_CASE("full block lifecycle with reuse and eviction") {
  Fixture f;
  EventLog log;
  Worklist w(f.image, PriorityOrder::MinFirst, nullptr, &log);

  w.submit(0, 3);
  auto popped = w.pop_uncached();
  REQUIRE(popped.has_value());
  CHECK(*popped == 0);
  CHECK(w.meta(0).block_state() == BlockState::Uncached);  // in flight

  // Activations while in flight fold into the AFS without a queue entry.
  w.submit(1, 1);
  CHECK(w.uncached_size() == 0);

  w.load_complete(0, 5);
  CHECK(w.meta(0).block_state() == BlockState::Cached);
  auto task = w.pull_cached();
  REQUIRE(task.has_value());
  CHECK(task->block == 0);
  CHECK(task->slot == 5);
  REQUIRE(task->frontier.size() == 2);
  CHECK(w.meta(0).count == 0);  // drained
  CHECK(w.meta(0).priority == neutral_priority(PriorityOrder::MinFirst));

  SUBCASE("finish without reactivation deactivates and frees the slot") {
    auto r = w.finish(0, 0);
    CHECK(r.action == Worklist::FinishAction::Deactivated);
    CHECK(r.slot == 5);
    CHECK(w.meta(0).block_state() == BlockState::Inactive);
    CHECK(w.outstanding() == 0);
  }

  SUBCASE("reactivation during processing re-enters the cached queue") {
    w.submit(0, 2);  // lands while Processing
    CHECK(w.meta(0).block_state() == BlockState::Reactivated);
    auto r = w.finish(0, 0);
    CHECK(r.action == Worklist::FinishAction::Reused);
    CHECK(w.meta(0).block_state() == BlockState::Cached);
    auto again = w.pull_cached();
    REQUIRE(again.has_value());
    CHECK(again->block == 0);
    CHECK(again->slot == 5);  // same buffer, no load in between
  }

  SUBCASE("early stop evicts after the threshold") {
    // threshold 2: two consecutive reuses pass, the third reactivation
    // finish evicts.
    for (int round = 0; round < 2; ++round) {
      w.submit(0, 2);
      auto r = w.finish(0, 2);
      CHECK(r.action == Worklist::FinishAction::Reused);
      auto t = w.pull_cached();
      REQUIRE(t.has_value());
    }
    w.submit(0, 2);
    auto r = w.finish(0, 2);
    CHECK(r.action == Worklist::FinishAction::Evicted);
    CHECK(r.slot == 5);
    CHECK(w.meta(0).block_state() == BlockState::Uncached);
    CHECK(w.uncached_size() == 1);
    CHECK(w.outstanding() == 1);  // still an active unit
    std::string why;
    CHECK_MESSAGE(check_transitions(log.snapshot(), &why), why);
  }
}

TEST_CASE("finish on an idle block is a contract violation") {
  Fixture f;
  Worklist w(f.image, PriorityOrder::MinFirst);
  CHECK_THROWS_AS(w.finish(0, 0), InvariantError);
}

TEST_CASE("state driven routing keeps cached blocks unqueued") {
  Fixture f;
  Worklist w(f.image, PriorityOrder::MinFirst);
  w.submit(0, 3);
  REQUIRE(w.pop_uncached().has_value());
  w.load_complete(0, 1);
  // New activation of a cached block: AFS grows, no queue movement.
  w.submit(1, 1);
  CHECK(w.uncached_size() == 0);
  auto task = w.pull_cached();
  REQUIRE(task.has_value());
  CHECK(task->frontier.size() == 2);
}
