#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "acgraph/trace.hpp"

namespace acgraph {

enum class CachePolicy : std::uint8_t { Opt, Lru, Sub };

const char* to_string(CachePolicy p);
CachePolicy cache_policy_from_string(const std::string& name);

struct PolicyResult {
  CachePolicy policy;
  std::size_t capacity;  // blocks
  std::uint64_t misses;

  std::uint64_t bytes() const { return misses * 4096; }
};

/// Demand-paging replay of a recorded block trace.
///   Opt: evict the resident block with the farthest next use (never used
///        again counts as infinite; ties go to the smallest id).
///   Lru: standard least-recently-used.
///   Sub: evict a seeded-random resident block absent from the next
///        iteration's access set, falling back to any resident block.
PolicyResult simulate(const AccessTrace& trace, CachePolicy policy,
                      std::size_t capacity, std::uint64_t seed = 0);

/// CSV rows "policy,capacity,misses,bytes" with a header line.
std::string results_csv(std::span<const PolicyResult> results);

}  // namespace acgraph
