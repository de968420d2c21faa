#include "acgraph/algorithms.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace acgraph {

namespace {

struct IdMaps {
  std::vector<VertexId> v2id;        // reordered -> original
  std::vector<VertexId> new_of_old;  // original -> reordered
};

IdMaps load_maps(const OpenImage& image) {
  IdMaps m;
  m.v2id = image.load_v2id();
  m.new_of_old.assign(image.n_original(), kInvalidVertex);
  for (std::size_t id = 0; id < m.v2id.size(); ++id) {
    if (m.v2id[id] != kInvalidVertex) {
      m.new_of_old[m.v2id[id]] = static_cast<VertexId>(id);
    }
  }
  return m;
}

VertexId translate_source(const OpenImage& image, const IdMaps& maps,
                          VertexId source) {
  if (source >= image.n_original()) {
    throw UsageError("source vertex " + std::to_string(source) +
                     " out of range [0, " +
                     std::to_string(image.n_original()) + ")");
  }
  return maps.new_of_old[source];
}

std::int32_t clamp_priority(std::uint64_t value) {
  constexpr auto kMax =
      static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max());
  return static_cast<std::int32_t>(std::min(value, kMax - 1));
}

double atomic_add(std::atomic<double>& a, double x) {
  double cur = a.load(std::memory_order_relaxed);
  while (!a.compare_exchange_weak(cur, cur + x, std::memory_order_acq_rel,
                                  std::memory_order_relaxed)) {
  }
  return cur + x;
}

// ---- BFS ----------------------------------------------------------------

struct BfsAlgo {
  std::atomic<std::uint32_t>* dis;

  std::uint32_t apply(VertexId u) const {
    return dis[u].load(std::memory_order_acquire);
  }

  std::int32_t propagation(const std::uint32_t& msg, VertexId v) const {
    const std::uint32_t cand = msg + 1;
    std::uint32_t d = dis[v].load(std::memory_order_acquire);
    while (d > cand) {
      if (dis[v].compare_exchange_weak(d, cand, std::memory_order_acq_rel,
                                       std::memory_order_acquire)) {
        return clamp_priority(cand);
      }
    }
    return 0;
  }
};

// ---- WCC ----------------------------------------------------------------

struct WccAlgo {
  std::atomic<VertexId>* label;

  VertexId apply(VertexId u) const {
    return label[u].load(std::memory_order_acquire);
  }

  std::int32_t propagation(const VertexId& msg, VertexId v) const {
    VertexId l = label[v].load(std::memory_order_acquire);
    while (l > msg) {
      if (label[v].compare_exchange_weak(l, msg, std::memory_order_acq_rel,
                                         std::memory_order_acquire)) {
        // Shift by one so label 0 still reads as an activation.
        return clamp_priority(msg) + 1;
      }
    }
    return 0;
  }
};

// ---- k-core -------------------------------------------------------------

struct KcoreAlgo {
  std::atomic<std::int32_t>* deg_live;
  std::int32_t k;

  int apply(VertexId) const { return 0; }

  std::int32_t propagation(const int&, VertexId v) const {
    const std::int32_t before =
        deg_live[v].fetch_sub(1, std::memory_order_acq_rel);
    // Activate exactly on the k -> k-1 crossing, so each vertex is pruned
    // at most once.
    return before == k ? 1 : 0;
  }
};

// ---- PPR ----------------------------------------------------------------

struct PprState {
  const OpenImage* image;
  double alpha;
  double r_max;
  std::unique_ptr<std::atomic<double>[]> pi;
  std::unique_ptr<std::atomic<double>[]> residual;
  std::unique_ptr<std::atomic<std::uint8_t>[]> in_frontier;
};

struct PprAlgo {
  PprState* s;

  double apply(VertexId u) const {
    // Leave the frontier before draining, so mass arriving from here on
    // re-activates u rather than getting lost.
    s->in_frontier[u].store(0, std::memory_order_release);
    const double ru = s->residual[u].exchange(0.0, std::memory_order_acq_rel);
    if (ru <= 0.0) return 0.0;
    const std::uint64_t deg = s->image->degree_of(u);
    if (deg == 0) {
      // Dangling vertex: the self-retaining teleport settles the whole
      // residual in the limit, so fold it into pi directly.
      atomic_add(s->pi[u], ru);
      return 0.0;
    }
    atomic_add(s->pi[u], s->alpha * ru);
    return (1.0 - s->alpha) * ru / static_cast<double>(deg);
  }

  std::int32_t propagation(const double& share, VertexId v) const {
    if (share <= 0.0) return 0;
    const double after = atomic_add(s->residual[v], share);
    const std::uint64_t deg = s->image->degree_of(v);
    const double threshold =
        s->r_max * static_cast<double>(deg == 0 ? 1 : deg);
    if (after >= threshold &&
        s->in_frontier[v].exchange(1, std::memory_order_acq_rel) == 0) {
      return 1;
    }
    return 0;
  }
};

PprResult run_ppr(const OpenImage& image, const PprParams& params,
                  const RunConfig& cfg, AlgoContext ctx, VertexId source,
                  bool uniform) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) {
    throw UsageError("alpha must lie in (0, 1)");
  }
  if (!(params.r_max > 0.0)) throw UsageError("r_max must be positive");

  IdMaps maps = load_maps(image);
  const std::uint64_t ids = image.total_ids();
  PprState state{&image, params.alpha, params.r_max,
                 std::make_unique<std::atomic<double>[]>(ids),
                 std::make_unique<std::atomic<double>[]>(ids),
                 std::make_unique<std::atomic<std::uint8_t>[]>(ids)};
  for (std::uint64_t i = 0; i < ids; ++i) {
    state.pi[i].store(0.0, std::memory_order_relaxed);
    state.residual[i].store(0.0, std::memory_order_relaxed);
    state.in_frontier[i].store(0, std::memory_order_relaxed);
  }

  Engine engine(image, cfg, ctx.metrics, ctx.log, ctx.trace);
  PprAlgo algo{&state};

  if (uniform) {
    const double init =
        image.n_original() > 0 ? 1.0 / static_cast<double>(image.n_original())
                               : 0.0;
    engine.foreach_vertex([&](VertexId v) -> std::int32_t {
      state.residual[v].store(init, std::memory_order_relaxed);
      const std::uint64_t deg = image.degree_of(v);
      const double threshold =
          params.r_max * static_cast<double>(deg == 0 ? 1 : deg);
      if (init >= threshold) {
        state.in_frontier[v].store(1, std::memory_order_relaxed);
        return 1;
      }
      return 0;
    });
  } else {
    const VertexId src = translate_source(image, maps, source);
    state.residual[src].store(1.0, std::memory_order_relaxed);
    state.in_frontier[src].store(1, std::memory_order_relaxed);
    engine.seed(src, 1);
  }

  PprResult result;
  if (cfg.mode == ExecMode::Sync) {
    result.rounds = engine.run_sync(algo);
  } else {
    engine.run_async(algo);
  }

  result.pi.assign(image.n_original(), 0.0);
  result.residual.assign(image.n_original(), 0.0);
  for (std::uint64_t id = 0; id < ids; ++id) {
    const VertexId original = maps.v2id[id];
    if (original == kInvalidVertex) continue;
    result.pi[original] = state.pi[id].load(std::memory_order_relaxed);
    result.residual[original] =
        state.residual[id].load(std::memory_order_relaxed);
  }
  return result;
}

// ---- MIS ----------------------------------------------------------------

struct MisState {
  const std::uint32_t* label;
  std::atomic<std::uint8_t>* live;
  std::atomic<std::uint8_t>* candidate;
  std::atomic<std::uint8_t>* in_set;
  std::atomic<std::int64_t>* live_count;
};

struct MisMarkPhase {
  MisState* s;

  struct Msg {
    std::uint32_t label;
    bool live;
  };

  Msg apply(VertexId u) const {
    return {s->label[u],
            s->live[u].load(std::memory_order_acquire) != 0};
  }

  std::int32_t propagation(const Msg& m, VertexId v) const {
    // A live lower-labeled neighbor disqualifies v this round.
    if (m.live && s->live[v].load(std::memory_order_acquire) != 0 &&
        m.label < s->label[v]) {
      s->candidate[v].store(0, std::memory_order_release);
    }
    return 0;
  }
};

struct MisSelectPhase {
  MisState* s;

  struct Msg {
    bool selected;
  };

  Msg apply(VertexId u) const {
    if (s->live[u].load(std::memory_order_acquire) != 0 &&
        s->candidate[u].load(std::memory_order_acquire) != 0) {
      // Adjacent candidates cannot both survive the mark phase, so the
      // selection is race free.
      if (s->live[u].exchange(0, std::memory_order_acq_rel) != 0) {
        s->in_set[u].store(1, std::memory_order_release);
        s->live_count->fetch_sub(1, std::memory_order_acq_rel);
      }
      return {true};
    }
    return {false};
  }

  std::int32_t propagation(const Msg& m, VertexId v) const {
    if (m.selected && s->live[v].exchange(0, std::memory_order_acq_rel) != 0) {
      s->live_count->fetch_sub(1, std::memory_order_acq_rel);
    }
    return 0;
  }
};

}  // namespace

std::vector<std::uint32_t> bfs(const OpenImage& image, VertexId source,
                               const RunConfig& cfg, AlgoContext ctx) {
  IdMaps maps = load_maps(image);
  const VertexId src = translate_source(image, maps, source);

  const std::uint64_t ids = image.total_ids();
  auto dis = std::make_unique<std::atomic<std::uint32_t>[]>(ids);
  for (std::uint64_t i = 0; i < ids; ++i) {
    dis[i].store(kUnreachable, std::memory_order_relaxed);
  }
  dis[src].store(0, std::memory_order_relaxed);

  Engine engine(image, cfg, ctx.metrics, ctx.log, ctx.trace);
  engine.seed(src, 0);
  BfsAlgo algo{dis.get()};
  if (cfg.mode == ExecMode::Sync) {
    engine.run_sync(algo);
  } else {
    engine.run_async(algo);
  }

  std::vector<std::uint32_t> out(image.n_original(), kUnreachable);
  for (std::uint64_t id = 0; id < ids; ++id) {
    if (maps.v2id[id] != kInvalidVertex) {
      out[maps.v2id[id]] = dis[id].load(std::memory_order_relaxed);
    }
  }
  return out;
}

std::vector<VertexId> wcc(const OpenImage& image, const RunConfig& cfg,
                          AlgoContext ctx) {
  IdMaps maps = load_maps(image);
  const std::uint64_t ids = image.total_ids();
  auto label = std::make_unique<std::atomic<VertexId>[]>(ids);
  for (std::uint64_t i = 0; i < ids; ++i) {
    label[i].store(kInvalidVertex, std::memory_order_relaxed);
  }

  Engine engine(image, cfg, ctx.metrics, ctx.log, ctx.trace);
  engine.foreach_vertex([&](VertexId v) -> std::int32_t {
    const VertexId original = maps.v2id[v];
    label[v].store(original, std::memory_order_relaxed);
    return clamp_priority(original) + 1;
  });

  WccAlgo algo{label.get()};
  if (cfg.mode == ExecMode::Sync) {
    engine.run_sync(algo);
  } else {
    engine.run_async(algo);
  }

  std::vector<VertexId> out(image.n_original(), kInvalidVertex);
  for (std::uint64_t id = 0; id < ids; ++id) {
    if (maps.v2id[id] != kInvalidVertex) {
      out[maps.v2id[id]] = label[id].load(std::memory_order_relaxed);
    }
  }
  return out;
}

std::vector<std::uint8_t> kcore(const OpenImage& image, std::uint32_t k,
                                const RunConfig& cfg, AlgoContext ctx) {
  IdMaps maps = load_maps(image);
  const std::uint64_t ids = image.total_ids();
  auto deg_live = std::make_unique<std::atomic<std::int32_t>[]>(ids);
  for (std::uint64_t i = 0; i < ids; ++i) {
    deg_live[i].store(0, std::memory_order_relaxed);
  }

  Engine engine(image, cfg, ctx.metrics, ctx.log, ctx.trace);
  const auto ki = static_cast<std::int32_t>(k);
  engine.foreach_vertex([&](VertexId v) -> std::int32_t {
    const auto deg = static_cast<std::int32_t>(image.degree_of(v));
    deg_live[v].store(deg, std::memory_order_relaxed);
    return deg < ki ? 1 : 0;
  });

  KcoreAlgo algo{deg_live.get(), ki};
  if (cfg.mode == ExecMode::Sync) {
    engine.run_sync(algo);
  } else {
    engine.run_async(algo);
  }

  std::vector<std::uint8_t> out(image.n_original(), 0);
  for (std::uint64_t id = 0; id < ids; ++id) {
    if (maps.v2id[id] != kInvalidVertex) {
      out[maps.v2id[id]] =
          deg_live[id].load(std::memory_order_relaxed) >= ki ? 1 : 0;
    }
  }
  return out;
}

PprResult ppr_single_source(const OpenImage& image, VertexId source,
                            const PprParams& params, const RunConfig& cfg,
                            AlgoContext ctx) {
  return run_ppr(image, params, cfg, ctx, source, /*uniform=*/false);
}

PprResult pagerank(const OpenImage& image, const PprParams& params,
                   const RunConfig& cfg, AlgoContext ctx) {
  return run_ppr(image, params, cfg, ctx, 0, /*uniform=*/true);
}

MisResult mis(const OpenImage& image, std::uint64_t seed, const RunConfig& cfg,
              AlgoContext ctx) {
  IdMaps maps = load_maps(image);
  const std::uint64_t n = image.n_original();
  const std::uint64_t ids = image.total_ids();

  // Seeded random bijection over original ids.
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<std::uint32_t> label(ids, kInvalidVertex);
  auto live = std::make_unique<std::atomic<std::uint8_t>[]>(ids);
  auto candidate = std::make_unique<std::atomic<std::uint8_t>[]>(ids);
  auto in_set = std::make_unique<std::atomic<std::uint8_t>[]>(ids);
  std::atomic<std::int64_t> live_count{0};
  for (std::uint64_t id = 0; id < ids; ++id) {
    const bool real = maps.v2id[id] != kInvalidVertex;
    if (real) label[id] = perm[maps.v2id[id]];
    live[id].store(real ? 1 : 0, std::memory_order_relaxed);
    candidate[id].store(0, std::memory_order_relaxed);
    in_set[id].store(0, std::memory_order_relaxed);
    if (real) live_count.fetch_add(1, std::memory_order_relaxed);
  }

  RunConfig sync_cfg = cfg;
  sync_cfg.mode = ExecMode::Sync;
  Engine engine(image, sync_cfg, ctx.metrics, ctx.log, ctx.trace);

  MisState state{label.data(), live.get(), candidate.get(), in_set.get(),
                 &live_count};
  MisMarkPhase mark{&state};
  MisSelectPhase select{&state};

  MisResult result;
  while (live_count.load(std::memory_order_acquire) > 0) {
    engine.foreach_vertex([&](VertexId v) -> std::int32_t {
      if (state.live[v].load(std::memory_order_relaxed) != 0) {
        state.candidate[v].store(1, std::memory_order_relaxed);
        return 1;
      }
      return 0;
    });
    engine.run_sync_round(mark);

    engine.foreach_vertex([&](VertexId v) -> std::int32_t {
      return state.live[v].load(std::memory_order_relaxed) != 0 ? 1 : 0;
    });
    engine.run_sync_round(select);
    ++result.rounds;
  }

  result.in_set.assign(n, 0);
  for (std::uint64_t id = 0; id < ids; ++id) {
    if (maps.v2id[id] != kInvalidVertex) {
      result.in_set[maps.v2id[id]] =
          in_set[id].load(std::memory_order_relaxed);
    }
  }
  return result;
}

}  // namespace acgraph
