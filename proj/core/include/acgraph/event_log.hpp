#pragma once

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <vector>

#include "acgraph/block_meta.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

/// In-memory recorder for the engine's observable events, used by the
/// invariant test suites and dumpable as JSON lines.
class EventLog {
 public:
  enum class Kind : std::uint8_t { Transition, Activated, Processed };

  struct Event {
    Kind kind;
    std::uint64_t t_ns;
    std::uint32_t subject;  // block id or vertex id
    std::uint32_t a;        // transition: from state; others: round
    std::uint32_t b;        // transition: to state
  };

  void transition(std::uint32_t block, BlockState from, BlockState to);
  void activated(VertexId v, std::uint32_t round);
  void processed(VertexId v, std::uint32_t round);

  std::vector<Event> snapshot() const;
  void clear();

  /// One JSON object per line: {"t_ns":..,"kind":..,...}.
  void dump_json_lines(std::ostream& out) const;

 private:
  std::uint64_t now_ns() const;

  mutable std::mutex mu_;
  std::vector<Event> events_;
};

}  // namespace acgraph
