#include "acgraph/cache_sim.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <list>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "acgraph/detail/bytes.hpp"
#include "acgraph/error.hpp"

namespace acgraph {

void AccessTrace::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(kTraceMagic, 4);
  for (const TraceEntry& e : entries) {
    detail::write_le32(out, e.iteration);
    detail::write_le32(out, e.block);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

AccessTrace AccessTrace::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kTraceMagic, 4) != 0) {
    throw IoError("not a block trace: " + path.string());
  }
  AccessTrace trace;
  std::uint32_t iteration, block;
  while (detail::read_le32(in, iteration)) {
    if (!detail::read_le32(in, block)) {
      throw IoError("truncated trace: " + path.string());
    }
    if (!trace.entries.empty() && iteration < trace.entries.back().iteration) {
      throw IoError("trace iterations not nondecreasing: " + path.string());
    }
    trace.entries.push_back({iteration, block});
  }
  return trace;
}

const char* to_string(CachePolicy p) {
  switch (p) {
    case CachePolicy::Opt: return "opt";
    case CachePolicy::Lru: return "lru";
    case CachePolicy::Sub: return "sub";
  }
  return "?";
}

CachePolicy cache_policy_from_string(const std::string& name) {
  if (name == "opt") return CachePolicy::Opt;
  if (name == "lru") return CachePolicy::Lru;
  if (name == "sub") return CachePolicy::Sub;
  throw UsageError("unknown cache policy: " + name);
}

namespace {

std::uint64_t simulate_opt(const AccessTrace& trace, std::size_t capacity) {
  const auto& seq = trace.entries;
  const std::size_t n = seq.size();
  constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

  // next_use[i] = next position of seq[i].block after i.
  std::vector<std::size_t> next_use(n, kNever);
  std::unordered_map<std::uint32_t, std::size_t> last_seen;
  for (std::size_t i = n; i-- > 0;) {
    auto it = last_seen.find(seq[i].block);
    next_use[i] = it == last_seen.end() ? kNever : it->second;
    last_seen[seq[i].block] = i;
  }

  // Resident set ordered most-evictable first: farthest next use, then
  // smallest block id.
  struct Victim {
    std::size_t next;
    std::uint32_t block;
    bool operator<(const Victim& o) const {
      if (next != o.next) return next > o.next;
      return block < o.block;
    }
  };
  std::set<Victim> order;
  std::unordered_map<std::uint32_t, std::size_t> resident;  // block -> next

  std::uint64_t misses = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t block = seq[i].block;
    auto it = resident.find(block);
    if (it != resident.end()) {
      order.erase({it->second, block});
      it->second = next_use[i];
      order.insert({next_use[i], block});
      continue;
    }
    ++misses;
    if (resident.size() == capacity) {
      const Victim victim = *order.begin();
      order.erase(order.begin());
      resident.erase(victim.block);
    }
    resident.emplace(block, next_use[i]);
    order.insert({next_use[i], block});
  }
  return misses;
}

std::uint64_t simulate_lru(const AccessTrace& trace, std::size_t capacity) {
  std::list<std::uint32_t> lru;  // front = most recent
  std::unordered_map<std::uint32_t, std::list<std::uint32_t>::iterator> pos;
  std::uint64_t misses = 0;
  for (const TraceEntry& e : trace.entries) {
    auto it = pos.find(e.block);
    if (it != pos.end()) {
      lru.splice(lru.begin(), lru, it->second);
      continue;
    }
    ++misses;
    if (pos.size() == capacity) {
      pos.erase(lru.back());
      lru.pop_back();
    }
    lru.push_front(e.block);
    pos[e.block] = lru.begin();
  }
  return misses;
}

std::uint64_t simulate_sub(const AccessTrace& trace, std::size_t capacity,
                           std::uint64_t seed) {
  // Access set per iteration, for the "unused next iteration" heuristic.
  std::unordered_map<std::uint32_t, std::unordered_set<std::uint32_t>>
      iteration_sets;
  for (const TraceEntry& e : trace.entries) {
    iteration_sets[e.iteration].insert(e.block);
  }

  std::mt19937_64 rng(seed);
  std::set<std::uint32_t> resident;  // ordered for reproducible sampling
  std::uint64_t misses = 0;
  for (const TraceEntry& e : trace.entries) {
    if (resident.count(e.block) != 0) continue;
    ++misses;
    if (resident.size() == capacity) {
      std::vector<std::uint32_t> candidates;
      const auto next_it = iteration_sets.find(e.iteration + 1);
      if (next_it != iteration_sets.end()) {
        for (std::uint32_t b : resident) {
          if (next_it->second.count(b) == 0) candidates.push_back(b);
        }
      } else {
        candidates.assign(resident.begin(), resident.end());
      }
      if (candidates.empty()) {
        candidates.assign(resident.begin(), resident.end());
      }
      const std::uint32_t victim =
          candidates[rng() % candidates.size()];
      resident.erase(victim);
    }
    resident.insert(e.block);
  }
  return misses;
}

}  // namespace

PolicyResult simulate(const AccessTrace& trace, CachePolicy policy,
                      std::size_t capacity, std::uint64_t seed) {
  if (capacity == 0) throw UsageError("cache capacity must be >= 1");
  std::uint64_t misses = 0;
  switch (policy) {
    case CachePolicy::Opt: misses = simulate_opt(trace, capacity); break;
    case CachePolicy::Lru: misses = simulate_lru(trace, capacity); break;
    case CachePolicy::Sub: misses = simulate_sub(trace, capacity, seed); break;
  }
  return {policy, capacity, misses};
}

std::string results_csv(std::span<const PolicyResult> results) {
  std::ostringstream out;
  out << "policy,capacity,misses,bytes\n";
  for (const PolicyResult& r : results) {
    out << to_string(r.policy) << ',' << r.capacity << ',' << r.misses << ','
        << r.bytes() << '\n';
  }
  return out.str();
}

}  // namespace acgraph
