#pragma once

#include <algorithm>
#include <atomic>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "specpath/spectral.hpp"

namespace specpath {

enum class PathDirection {
  PinnedAtTarget,          // descent from source on the landscape pinned at target
  PinnedAtSourceReversed,  // descent from target on the landscape pinned at source, reversed
};

inline const char* to_string(PathDirection d) {
  return d == PathDirection::PinnedAtTarget ? "pinned-at-target"
                                            : "pinned-at-source-reversed";
}

struct PathResult {
  std::vector<VertexId> vertices;  // source first, target last; never empty
  PathDirection direction = PathDirection::PinnedAtTarget;
  LaplacianKind kind = LaplacianKind::Combinatorial;
  // Smallest relative gap by which a step's argmin beat the runner-up;
  // infinity when no step was contested. Diagnostic for near-noise decisions.
  double min_decision_margin = std::numeric_limits<double>::infinity();

  std::size_t length() const { return vertices.size() - 1; }  // edge count
};

// From each vertex move to the neighbor with the smallest descent key (ties
// to the smallest index), accepting a step only if it strictly decreases the
// key, until the pinned vertex is reached. Hard cap of n steps.
inline PathResult greedy_descent(const Graph& g, const SpectralLandscape& ls,
                                 VertexId source) {
  if (source >= g.n()) throw GraphError("descent source out of range");

  PathResult out;
  out.kind = ls.kind;
  out.direction = PathDirection::PinnedAtTarget;
  out.vertices.push_back(source);

  VertexId cur = source;
  double cur_key = descent_key(g, ls, cur);
  const std::size_t cap = g.n();
  std::size_t steps = 0;
  while (cur != ls.pinned) {
    if (steps++ >= cap)
      throw DescentError("descent step cap exceeded starting from vertex " +
                         std::to_string(source));
    bool have = false;
    VertexId best = 0;
    double best_key = 0.0;
    double runner_up = std::numeric_limits<double>::infinity();
    for (VertexId w : g.neighbors(cur)) {
      const double kw = descent_key(g, ls, w);
      if (!have) {
        best = w;
        best_key = kw;
        have = true;
      } else if (kw < best_key) {
        runner_up = best_key;
        best = w;
        best_key = kw;
      } else {
        runner_up = std::min(runner_up, kw);
      }
    }
    if (!have)
      throw DescentError("vertex " + std::to_string(cur) + " has no neighbors");
    if (!(best_key < cur_key))
      throw DescentError("greedy descent stuck at vertex " +
                         std::to_string(cur) + " (no strictly smaller neighbor)");
    if (std::isfinite(runner_up) && runner_up > 0.0)
      out.min_decision_margin = std::min(out.min_decision_margin,
                                         (runner_up - best_key) / runner_up);
    out.vertices.push_back(best);
    cur = best;
    cur_key = best_key;
  }
  return out;
}

// Checks every PathResult invariant against the landscape that built the
// path: endpoints, adjacency, simplicity, the n-1 length bound, and strict
// key descent in build order.
inline void validate_path_result(const Graph& g, const SpectralLandscape& ls,
                                 const PathResult& p, VertexId source,
                                 VertexId target) {
  const auto& vs = p.vertices;
  if (vs.empty() || vs.front() != source || vs.back() != target)
    throw DescentError("path endpoints do not match the requested pair");
  if (vs.size() > g.n())
    throw DescentError("path exceeds n-1 edges");
  std::vector<VertexId> sorted(vs);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DescentError("path revisits a vertex");
  for (std::size_t k = 0; k + 1 < vs.size(); ++k)
    if (!g.has_edge(vs[k], vs[k + 1]))
      throw DescentError("path step is not an edge");

  if (vs.size() < 2) return;
  const bool reversed = p.direction == PathDirection::PinnedAtSourceReversed;
  const VertexId built_pin = reversed ? source : target;
  if (ls.pinned != built_pin)
    throw DescentError("path validated against the wrong landscape");
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const VertexId v = reversed ? vs[vs.size() - 1 - k] : vs[k];
    const double key = descent_key(g, ls, v);
    if (!(key < prev)) throw DescentError("descent key not strictly decreasing");
    prev = key;
  }
}

// ---------------------------------------------------------------------------
// Landscape cache

// Shared cache keyed by (pinned vertex, kind). Safe for concurrent readers;
// each key is computed at most once, concurrent requests for the same key
// wait on the first computation. Failures propagate to every waiter.
class LandscapeCache {
 public:
  using Ptr = std::shared_ptr<const SpectralLandscape>;

  LandscapeCache(const Graph& g, SolverConfig cfg = {}) : g_(&g), cfg_(cfg) {}

  Ptr get(VertexId pinned, LaplacianKind kind) {
    const Key key{pinned, static_cast<int>(kind)};
    std::promise<Ptr> promise;
    std::shared_future<Ptr> fut;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it == cache_.end()) {
        fut = promise.get_future().share();
        cache_.emplace(key, fut);
        owner = true;
      } else {
        fut = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(std::make_shared<const SpectralLandscape>(
            compute_landscape(*g_, pinned, kind, cfg_)));
        solves_.fetch_add(1, std::memory_order_relaxed);
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
    }
    return fut.get();
  }

  std::size_t solve_count() const {
    return solves_.load(std::memory_order_relaxed);
  }

  const SolverConfig& config() const { return cfg_; }

  // Completed landscapes in deterministic (pinned, kind) order. Call after
  // all computations have finished.
  std::vector<Ptr> snapshot() const {
    std::vector<std::shared_future<Ptr>> futs;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      futs.reserve(cache_.size());
      for (const auto& [key, fut] : cache_) futs.push_back(fut);
    }
    std::vector<Ptr> out;
    out.reserve(futs.size());
    for (auto& f : futs) out.push_back(f.get());
    return out;
  }

 private:
  using Key = std::pair<VertexId, int>;

  const Graph* g_;
  SolverConfig cfg_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_future<Ptr>> cache_;
  std::atomic<std::size_t> solves_{0};
};

// ---------------------------------------------------------------------------
// Full query

// Pin at the target and descend from the source; with symmetrize, also pin
// at the source, descend from the target, reverse, and keep the shorter path
// (ties go to the pinned-at-target path). source == target yields the empty
// path of length 0.
inline PathResult spectral_path(const Graph& g, VertexId source,
                                VertexId target, LaplacianKind kind,
                                bool symmetrize, LandscapeCache& cache) {
  if (source >= g.n() || target >= g.n())
    throw GraphError("path endpoint out of range");
  if (source == target) {
    PathResult trivial;
    trivial.kind = kind;
    trivial.vertices.push_back(source);
    return trivial;
  }
  PathResult forward = greedy_descent(g, *cache.get(target, kind), source);
  if (!symmetrize) return forward;

  PathResult backward = greedy_descent(g, *cache.get(source, kind), target);
  std::reverse(backward.vertices.begin(), backward.vertices.end());
  backward.direction = PathDirection::PinnedAtSourceReversed;
  return backward.length() < forward.length() ? backward : forward;
}

inline PathResult spectral_path(const Graph& g, VertexId source,
                                VertexId target,
                                LaplacianKind kind = LaplacianKind::Combinatorial,
                                const SolverConfig& cfg = {},
                                bool symmetrize = true) {
  LandscapeCache cache(g, cfg);
  return spectral_path(g, source, target, kind, symmetrize, cache);
}

}  // namespace specpath
