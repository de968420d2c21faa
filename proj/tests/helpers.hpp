#pragma once

// Shared plumbing for the unit and acceptance suites.

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <acgraph/block_meta.hpp>
#include <acgraph/csr.hpp>
#include <acgraph/event_log.hpp>
#include <acgraph/image.hpp>
#include <acgraph/image_write.hpp>
#include <acgraph/io_backend.hpp>
#include <acgraph/reorder.hpp>

namespace acgraph::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<std::uint64_t> counter{0};
    dir_ = std::filesystem::temp_directory_path() /
           ("acgraph_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  const std::filesystem::path& path() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// Adjacency of a real reordered vertex fetched through the image, issuing a
// synchronous read of its block run when needed.
inline std::vector<VertexId> fetch_neighbors(const OpenImage& image,
                                             VertexId v) {
  if (image.is_mini(v)) {
    auto span = image.neighbors(v);
    return {span.begin(), span.end()};
  }
  const BlockRef ref = image.block_of(v);
  std::vector<std::byte> data(static_cast<std::size_t>(ref.page_count) * 4096);
  read_block_run(image.blocks_path(), ref.block_id, ref.page_count,
                 data.data());
  auto span = image.neighbors(v, data);
  return {span.begin(), span.end()};
}

// Expected adjacency of reordered vertex v, mapped from the CSR oracle.
inline std::vector<VertexId> oracle_neighbors(const CsrGraph& g,
                                              const ReorderMap& map,
                                              VertexId v) {
  std::vector<VertexId> out;
  for (VertexId t : g.neighbors(map.old_of_new[v])) {
    out.push_back(map.new_of_old[t]);
  }
  return out;
}

inline bool legal_transition(BlockState from, BlockState to) {
  using S = BlockState;
  return (from == S::Inactive && to == S::Uncached) ||
         (from == S::Uncached && to == S::Cached) ||
         (from == S::Cached && to == S::Processing) ||
         (from == S::Processing && to == S::Reactivated) ||
         (from == S::Processing && to == S::Inactive) ||
         (from == S::Reactivated && to == S::Cached) ||
         (from == S::Cached && to == S::Uncached);
}

// Every logged transition must be a legal edge AND chain correctly per block.
inline bool check_transitions(const std::vector<EventLog::Event>& events,
                              std::string* why = nullptr) {
  std::vector<BlockState> state;
  for (const auto& e : events) {
    if (e.kind != EventLog::Kind::Transition) continue;
    const auto from = static_cast<BlockState>(e.a);
    const auto to = static_cast<BlockState>(e.b);
    if (!legal_transition(from, to)) {
      if (why) {
        *why = "illegal edge " + std::string(to_string(from)) + " -> " +
               to_string(to);
      }
      return false;
    }
    if (state.size() <= e.subject) {
      state.resize(e.subject + 1, BlockState::Inactive);
    }
    if (state[e.subject] != from) {
      if (why) {
        *why = "block " + std::to_string(e.subject) + " jumped from " +
               to_string(state[e.subject]) + " via edge starting at " +
               to_string(from);
      }
      return false;
    }
    state[e.subject] = to;
  }
  return true;
}

// Sync-mode barrier: a vertex processed in round r must have no activation
// recorded at round >= r.
inline bool check_round_barrier(const std::vector<EventLog::Event>& events,
                                std::string* why = nullptr) {
  std::vector<std::int64_t> last_activation;
  auto slot = [&last_activation](std::uint32_t v) -> std::int64_t& {
    if (last_activation.size() <= v) last_activation.resize(v + 1, -1);
    return last_activation[v];
  };
  for (const auto& e : events) {
    if (e.kind == EventLog::Kind::Activated) {
      auto& s = slot(e.subject);
      s = std::max<std::int64_t>(s, e.a);
    } else if (e.kind == EventLog::Kind::Processed) {
      if (slot(e.subject) >= static_cast<std::int64_t>(e.a)) {
        if (why) {
          *why = "vertex " + std::to_string(e.subject) + " activated in round " +
                 std::to_string(slot(e.subject)) + " but processed in round " +
                 std::to_string(e.a);
        }
        return false;
      }
    }
  }
  return true;
}

}  // namespace acgraph::testing
