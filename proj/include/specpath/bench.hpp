#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "specpath/parallel.hpp"
#include "specpath/pathfinder.hpp"

namespace specpath {

// FNV-1a over raw bytes; identifies user-supplied graph files in reports.
inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  return std::string(buf, 16);
}

struct PairOutcome {
  VertexId source = 0;
  VertexId target = 0;
  int spectral_length = 0;
  int exact_length = 0;  // BFS distance
  int excess = 0;        // spectral - exact, always >= 0
};

struct GraphDescriptor {
  std::string family;  // "er" | "geometric" | "tree" | "builtin" | "file"
  std::string name;    // builtin name or file path
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  bool seeded = false;
  std::string file_hash;  // FNV-1a when family == "file"
  VertexId n = 0;
  std::size_t m = 0;
};

struct PairSelection {
  enum class Mode { All, Random };
  Mode mode = Mode::All;
  std::size_t k = 0;            // requested pair count when Random
  std::uint64_t pair_seed = 1;  // sample seed when Random
};

struct PairPolicyInfo {
  std::string mode;  // "all" | "random"
  std::size_t requested_k = 0;
  std::uint64_t pair_seed = 0;
  bool clamped = false;  // random request covered every pair
  bool ordered = false;  // both directions evaluated (symmetrize off)
  std::size_t pairs = 0;
};

struct SolverStats {
  std::size_t landscapes = 0;
  std::size_t dense_solves = 0;
  long long outer_iterations = 0;
  double max_residual = 0.0;
  double min_certificate_margin = std::numeric_limits<double>::infinity();
};

struct PhaseTimings {
  double landscapes_s = 0.0;
  double bfs_s = 0.0;
  double paths_s = 0.0;
  double total_s = 0.0;
};

struct BenchmarkReport {
  GraphDescriptor graph;
  LaplacianKind kind = LaplacianKind::Combinatorial;
  bool symmetrize = true;
  PairPolicyInfo pair_policy;
  std::size_t pairs_evaluated = 0;
  double fraction_optimal = 1.0;
  double mean_excess = 0.0;
  int max_excess = 0;
  PairOutcome max_excess_witness;
  double mean_length_ratio = 1.0;
  double max_length_ratio = 1.0;
  PairOutcome max_ratio_witness;
  std::size_t near_noise_decisions = 0;  // argmin gap within 10x residual_tol
  std::size_t paths_validated = 0;
  SolverStats solver;
  // Wall-clock diagnostics; excluded from the canonical report so identical
  // seeds give byte-identical documents.
  PhaseTimings timings;
};

struct BenchOptions {
  LaplacianKind kind = LaplacianKind::Combinatorial;
  SolverConfig cfg;
  bool symmetrize = true;
  unsigned threads = 0;  // 0 = available parallelism
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

inline void require_connected(const Graph& g) {
  auto labeling = components(g);
  if (labeling.count == 1) return;
  std::vector<std::size_t> sizes(labeling.count, 0);
  for (int c : labeling.component_of) ++sizes[c];
  std::string msg = "graph disconnected: " + std::to_string(labeling.count) +
                    " components (sizes";
  for (std::size_t s : sizes) msg += " " + std::to_string(s);
  msg += ")";
  throw GraphError(msg);
}

}  // namespace detail

// Every unordered pair u < v, or every ordered pair when ordered is set.
inline std::vector<std::pair<VertexId, VertexId>> all_pairs(VertexId n,
                                                            bool ordered) {
  std::vector<std::pair<VertexId, VertexId>> out;
  if (n < 2) return out;
  if (ordered) {
    out.reserve(std::size_t(n) * (n - 1));
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v)
        if (u != v) out.emplace_back(u, v);
  } else {
    out.reserve(std::size_t(n) * (n - 1) / 2);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) out.emplace_back(u, v);
  }
  return out;
}

// k distinct unordered pairs, uniformly sampled with the given seed and
// returned in canonical ascending order. Requests covering every pair clamp
// to all pairs.
inline std::pair<std::vector<std::pair<VertexId, VertexId>>, bool>
sample_pairs(VertexId n, std::size_t k, std::uint64_t seed) {
  const std::size_t total = n < 2 ? 0 : std::size_t(n) * (n - 1) / 2;
  if (k >= total) return {all_pairs(n, false), true};
  std::set<std::pair<VertexId, VertexId>> chosen;
  Rng rng(seed);
  while (chosen.size() < k) {
    auto u = static_cast<VertexId>(rng.next_index(n));
    auto v = static_cast<VertexId>(rng.next_index(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    chosen.emplace(u, v);
  }
  return {std::vector<std::pair<VertexId, VertexId>>(chosen.begin(),
                                                     chosen.end()),
          false};
}

// Core evaluation: landscapes and BFS tables first (each computed once), then
// one spectral path per pair, each validated against the landscape that built
// it. Results land in per-pair slots and are aggregated in canonical order,
// so reports do not depend on thread scheduling.
inline BenchmarkReport evaluate_pairs(
    const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs,
    const BenchOptions& opt, GraphDescriptor descriptor,
    PairPolicyInfo policy) {
  detail::require_connected(g);
  const auto t_start = std::chrono::steady_clock::now();

  BenchmarkReport report;
  descriptor.n = g.n();
  descriptor.m = g.m();
  report.graph = std::move(descriptor);
  report.kind = opt.kind;
  report.symmetrize = opt.symmetrize;
  policy.pairs = pairs.size();
  report.pair_policy = std::move(policy);
  report.pairs_evaluated = pairs.size();

  LandscapeCache cache(g, opt.cfg);

  // Landscapes: one per distinct pinned vertex.
  std::vector<VertexId> pins;
  pins.reserve(pairs.size() * 2);
  for (auto [u, v] : pairs) {
    pins.push_back(v);
    if (opt.symmetrize) pins.push_back(u);
  }
  std::sort(pins.begin(), pins.end());
  pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
  parallel_for(pins.size(), opt.threads,
               [&](std::size_t i) { cache.get(pins[i], opt.kind); });
  const double t_landscapes = detail::seconds_since(t_start);

  // Exact distances from every distinct source.
  std::vector<VertexId> sources;
  sources.reserve(pairs.size());
  for (auto [u, v] : pairs) sources.push_back(u);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::vector<int> source_slot(g.n(), -1);
  for (std::size_t i = 0; i < sources.size(); ++i) source_slot[sources[i]] = int(i);
  std::vector<std::vector<int>> dist(sources.size());
  parallel_for(sources.size(), opt.threads,
               [&](std::size_t i) { dist[i] = bfs_distances(g, sources[i]); });
  const double t_bfs = detail::seconds_since(t_start);

  std::vector<PairOutcome> outcomes(pairs.size());
  std::vector<unsigned char> noisy(pairs.size(), 0);
  parallel_for(pairs.size(), opt.threads, [&](std::size_t i) {
    const auto [u, v] = pairs[i];
    PathResult path = spectral_path(g, u, v, opt.kind, opt.symmetrize, cache);
    const auto& built_on =
        path.direction == PathDirection::PinnedAtTarget ? v : u;
    validate_path_result(g, *cache.get(built_on, opt.kind), path, u, v);
    const int exact = dist[source_slot[u]][v];
    if (exact < 0) throw InternalError("pair endpoints not connected");
    const int excess = static_cast<int>(path.length()) - exact;
    if (excess < 0)
      throw InternalError("spectral path shorter than BFS distance");
    outcomes[i] = {u, v, static_cast<int>(path.length()), exact, excess};
    noisy[i] = path.min_decision_margin < 10.0 * opt.cfg.residual_tol ? 1 : 0;
  });
  const double t_paths = detail::seconds_since(t_start);

  // Aggregate sequentially in canonical pair order.
  long long total_excess = 0;
  std::size_t optimal = 0;
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    total_excess += o.excess;
    if (o.excess == 0) ++optimal;
    const double ratio = double(o.spectral_length) / double(o.exact_length);
    ratio_sum += ratio;
    if (o.excess > report.max_excess) {
      report.max_excess = o.excess;
      report.max_excess_witness = o;
    }
    if (ratio > report.max_length_ratio) {
      report.max_length_ratio = ratio;
      report.max_ratio_witness = o;
    }
    report.near_noise_decisions += noisy[i];
  }
  if (!outcomes.empty()) {
    report.fraction_optimal = double(optimal) / double(outcomes.size());
    report.mean_excess = double(total_excess) / double(outcomes.size());
    report.mean_length_ratio = ratio_sum / double(outcomes.size());
  }
  report.paths_validated = outcomes.size();

  for (const auto& ls : cache.snapshot()) {
    ++report.solver.landscapes;
    report.solver.min_certificate_margin =
        std::min(report.solver.min_certificate_margin,
                 ls->min_certificate_margin);
    for (const auto& comp : ls->components) {
      if (comp.dense) ++report.solver.dense_solves;
      report.solver.outer_iterations += comp.iterations;
      report.solver.max_residual =
          std::max(report.solver.max_residual, comp.residual);
    }
  }

  report.timings.landscapes_s = t_landscapes;
  report.timings.bfs_s = t_bfs - t_landscapes;
  report.timings.paths_s = t_paths - t_bfs;
  report.timings.total_s = detail::seconds_since(t_start);
  return report;
}

// Every pair once per direction policy: unordered pairs when symmetrize is
// on (the result is then direction-independent by construction), ordered
// pairs otherwise.
inline BenchmarkReport run_all_pairs(const Graph& g, const BenchOptions& opt,
                                     GraphDescriptor descriptor = {}) {
  PairPolicyInfo policy;
  policy.mode = "all";
  policy.ordered = !opt.symmetrize;
  return evaluate_pairs(g, all_pairs(g.n(), !opt.symmetrize), opt,
                        std::move(descriptor), policy);
}

// k uniformly sampled distinct unordered pairs; with symmetrize off each
// sampled pair is evaluated in both directions.
inline BenchmarkReport run_random_pairs(const Graph& g, std::size_t k,
                                        std::uint64_t pair_seed,
                                        const BenchOptions& opt,
                                        GraphDescriptor descriptor = {}) {
  if (k == 0) throw ValidationError("pair sample size must be >= 1");
  auto [sampled, clamped] = sample_pairs(g.n(), k, pair_seed);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  if (opt.symmetrize) {
    pairs = std::move(sampled);
  } else {
    pairs.reserve(2 * sampled.size());
    for (auto [u, v] : sampled) {
      pairs.emplace_back(u, v);
      pairs.emplace_back(v, u);
    }
  }
  PairPolicyInfo policy;
  policy.mode = "random";
  policy.requested_k = k;
  policy.pair_seed = pair_seed;
  policy.clamped = clamped;
  policy.ordered = !opt.symmetrize;
  return evaluate_pairs(g, pairs, opt, std::move(descriptor), policy);
}

inline BenchmarkReport run_with_selection(const Graph& g,
                                          const PairSelection& sel,
                                          const BenchOptions& opt,
                                          GraphDescriptor descriptor = {}) {
  if (sel.mode == PairSelection::Mode::All)
    return run_all_pairs(g, opt, std::move(descriptor));
  return run_random_pairs(g, sel.k, sel.pair_seed, opt, std::move(descriptor));
}

// ---------------------------------------------------------------------------
// Family sweeps

struct FamilySweepSpec {
  std::string family;  // "er" | "geometric" | "tree"
  std::vector<VertexId> ns;
  std::vector<double> ps;  // er only
  double width = 3.0;      // geometric
  double height = 1.0;
  double radius = 0.3;
  int repetitions = 1;
  std::uint64_t seed = 1;
  int max_attempts = 200;  // connected redraws per instance
  PairSelection pairs;
};

struct SweepPoint {
  std::map<std::string, double> params;
  int repetitions = 0;
  int discarded = 0;  // disconnected draws
  double mean_fraction_optimal = 0.0;
  double min_fraction_optimal = 1.0;
  double mean_mean_excess = 0.0;
  double max_mean_excess = 0.0;
};

struct SweepResult {
  std::string family;
  std::vector<BenchmarkReport> instances;
  std::vector<SweepPoint> points;
  int total_discarded = 0;
};

// One report per (parameter point, repetition). Disconnected samples are
// discarded and redrawn with a fresh sub-seed; the discard count is recorded.
inline SweepResult run_family_sweep(const FamilySweepSpec& spec,
                                    const BenchOptions& opt) {
  if (spec.family != "er" && spec.family != "geometric" &&
      spec.family != "tree")
    throw ValidationError("unknown family '" + spec.family + "'");
  if (spec.ns.empty()) throw ValidationError("sweep needs at least one n");
  if (spec.family == "er" && spec.ps.empty())
    throw ValidationError("er sweep needs at least one p");
  if (spec.repetitions < 1)
    throw ValidationError("repetitions must be >= 1");

  struct Point {
    VertexId n;
    double p;
  };
  std::vector<Point> grid;
  if (spec.family == "er") {
    for (VertexId n : spec.ns)
      for (double p : spec.ps) grid.push_back({n, p});
  } else {
    for (VertexId n : spec.ns) grid.push_back({n, 0.0});
  }

  SweepResult result;
  result.family = spec.family;
  for (std::size_t pi = 0; pi < grid.size(); ++pi) {
    SweepPoint point;
    point.params["n"] = double(grid[pi].n);
    if (spec.family == "er") point.params["p"] = grid[pi].p;
    if (spec.family == "geometric") {
      point.params["width"] = spec.width;
      point.params["height"] = spec.height;
      point.params["radius"] = spec.radius;
    }
    point.repetitions = spec.repetitions;

    for (int rep = 0; rep < spec.repetitions; ++rep) {
      Graph g;
      std::uint64_t used_seed = 0;
      bool got = false;
      for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
        used_seed = mix_seed(spec.seed, pi, std::uint64_t(rep),
                             std::uint64_t(attempt));
        if (spec.family == "er")
          g = gen_erdos_renyi(grid[pi].n, grid[pi].p, used_seed);
        else if (spec.family == "tree")
          g = gen_random_tree(grid[pi].n, used_seed);
        else
          g = gen_random_geometric(grid[pi].n, spec.width, spec.height,
                                   spec.radius, used_seed)
                  .graph;
        if (components(g).count == 1) {
          got = true;
          break;
        }
        ++point.discarded;
      }
      if (!got)
        throw GraphError("no connected sample after " +
                         std::to_string(spec.max_attempts) + " attempts (" +
                         spec.family + ", n=" + std::to_string(grid[pi].n) +
                         ")");

      GraphDescriptor d;
      d.family = spec.family;
      d.params = point.params;
      d.seed = used_seed;
      d.seeded = true;

      PairSelection sel = spec.pairs;
      if (sel.mode == PairSelection::Mode::Random)
        sel.pair_seed = mix_seed(spec.pairs.pair_seed, pi, std::uint64_t(rep));
      result.instances.push_back(run_with_selection(g, sel, opt, std::move(d)));

      const auto& r = result.instances.back();
      point.mean_fraction_optimal += r.fraction_optimal;
      point.min_fraction_optimal =
          std::min(point.min_fraction_optimal, r.fraction_optimal);
      point.mean_mean_excess += r.mean_excess;
      point.max_mean_excess = std::max(point.max_mean_excess, r.mean_excess);
    }
    point.mean_fraction_optimal /= spec.repetitions;
    point.mean_mean_excess /= spec.repetitions;
    result.total_discarded += point.discarded;
    result.points.push_back(std::move(point));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Kind comparison

struct CompareReport {
  std::vector<BenchmarkReport> reports;  // combinatorial, random-walk, sym-normalized
};

inline CompareReport compare_kinds(const Graph& g, const PairSelection& sel,
                                   BenchOptions opt,
                                   GraphDescriptor descriptor = {}) {
  CompareReport out;
  for (LaplacianKind kind : kAllKinds) {
    opt.kind = kind;
    out.reports.push_back(run_with_selection(g, sel, opt, descriptor));
  }
  return out;
}

}  // namespace specpath
