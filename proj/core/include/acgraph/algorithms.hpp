#pragma once

#include <cstdint>
#include <vector>

#include "acgraph/engine.hpp"
#include "acgraph/image.hpp"
#include "acgraph/types.hpp"

namespace acgraph {

// Results are reported in original id space, translated through v2id.

inline constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;

struct AlgoContext {
  Metrics* metrics = nullptr;
  EventLog* log = nullptr;
  TraceSink* trace = nullptr;
};

/// Hop distances from source; kUnreachable where no path exists.
/// Vertex priority is its distance (min-first).
std::vector<std::uint32_t> bfs(const OpenImage& image, VertexId source,
                               const RunConfig& cfg, AlgoContext ctx = {});

/// Label propagation on a symmetrized image: label[v] = smallest original id
/// in v's component.
std::vector<VertexId> wcc(const OpenImage& image, const RunConfig& cfg,
                          AlgoContext ctx = {});

/// 1 where the vertex survives k-core peeling, 0 where pruned.
std::vector<std::uint8_t> kcore(const OpenImage& image, std::uint32_t k,
                                const RunConfig& cfg, AlgoContext ctx = {});

struct PprParams {
  double alpha = 0.15;
  double r_max = 1e-9;
};

struct PprResult {
  std::vector<double> pi;        // settled estimate per original vertex
  std::vector<double> residual;  // remaining mass per original vertex
  std::size_t rounds = 0;        // sync mode only
};

/// Forward push from a single source until every residual is below
/// r_max * max(deg, 1).
PprResult ppr_single_source(const OpenImage& image, VertexId source,
                            const PprParams& params, const RunConfig& cfg,
                            AlgoContext ctx = {});

/// PageRank as forward push with uniform initial residual 1/n.
PprResult pagerank(const OpenImage& image, const PprParams& params,
                   const RunConfig& cfg, AlgoContext ctx = {});

struct MisResult {
  std::vector<std::uint8_t> in_set;  // per original vertex
  std::size_t rounds = 0;
};

/// Maximal independent set over a seeded random label permutation, executed
/// in rounds under synchronous semantics. The same seed reproduces the same
/// set bit for bit.
MisResult mis(const OpenImage& image, std::uint64_t seed, const RunConfig& cfg,
              AlgoContext ctx = {});

}  // namespace acgraph
