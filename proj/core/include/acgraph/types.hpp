#pragma once

#include <cstddef>
#include <cstdint>

namespace acgraph {

using VertexId = std::uint32_t;

inline constexpr VertexId kInvalidVertex = 0xFFFFFFFFu;

// A block is one 4 KB disk page holding 4-byte edges.
inline constexpr std::size_t kBlockBytes = 4096;
inline constexpr std::uint32_t kEdgesPerBlock = 1024;

struct Edge {
  VertexId src;
  VertexId dst;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Activation {
  VertexId vertex;
  std::int32_t priority;

  friend bool operator==(const Activation&, const Activation&) = default;
};

enum class PriorityOrder : std::uint8_t { MinFirst, MaxFirst };
enum class ExecMode : std::uint8_t { Async, Sync };

}  // namespace acgraph
