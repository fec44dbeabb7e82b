#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specpath/errors.hpp"
#include "specpath/rng.hpp"

namespace specpath {

using VertexId = std::uint32_t;

// Sentinel used by bfs_distances for vertices in another component.
constexpr int kUnreachable = -1;

// Simple undirected graph in compressed adjacency form. Immutable after
// construction; neighbor lists are sorted ascending, no self-loops, no
// duplicate edges, adjacency is symmetric by construction.
class Graph {
 public:
  Graph() = default;

  // Canonical builder. Edges may appear in any order and orientation;
  // duplicates collapse. Self-loops and out-of-range endpoints are rejected.
  static Graph from_edges(VertexId n,
                          std::vector<std::pair<VertexId, VertexId>> edges) {
    for (auto& [u, v] : edges) {
      if (u >= n || v >= n)
        throw ValidationError("edge endpoint out of range: " +
                              std::to_string(u) + " " + std::to_string(v));
      if (u == v)
        throw ValidationError("self-loop on vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_ = n;
    g.m_ = edges.size();
    std::vector<std::size_t> deg(n, 0);
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(2 * g.m_);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (min,max), so every neighbor list fills ascending.
    for (auto [u, v] : edges) {
      g.adj_[cursor[u]++] = v;
      g.adj_[cursor[v]++] = u;
    }
    return g;
  }

  VertexId n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }

  VertexId degree(VertexId v) const {
    return static_cast<VertexId>(offsets_[v + 1] - offsets_[v]);
  }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

 private:
  VertexId n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adj_;
};

struct ComponentLabeling {
  std::vector<int> component_of;  // dense labels in [0, count); -1 = excluded
  int count = 0;
};

inline std::vector<int> bfs_distances(const Graph& g, VertexId source) {
  if (source >= g.n()) throw GraphError("bfs source out of range");
  std::vector<int> dist(g.n(), kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(g.n());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline ComponentLabeling components(const Graph& g) {
  ComponentLabeling out;
  out.component_of.assign(g.n(), -1);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (out.component_of[s] != -1) continue;
    out.component_of[s] = out.count;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId w : g.neighbors(queue[head])) {
        if (out.component_of[w] == -1) {
          out.component_of[w] = out.count;
          queue.push_back(w);
        }
      }
    }
    ++out.count;
  }
  return out;
}

// Components of G - pinned, labeled over the original vertex ids; the pinned
// vertex keeps label -1.
inline ComponentLabeling pinned_components(const Graph& g, VertexId pinned) {
  if (pinned >= g.n()) throw GraphError("pinned vertex out of range");
  ComponentLabeling out;
  out.component_of.assign(g.n(), -1);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (s == pinned || out.component_of[s] != -1) continue;
    out.component_of[s] = out.count;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId w : g.neighbors(queue[head])) {
        if (w != pinned && out.component_of[w] == -1) {
          out.component_of[w] = out.count;
          queue.push_back(w);
        }
      }
    }
    ++out.count;
  }
  return out;
}

struct VertexRemoval {
  Graph graph;                     // G - i with dense relabeled vertices
  std::vector<VertexId> old_of_new;
  std::vector<int> new_of_old;     // -1 at the removed vertex
};

inline VertexRemoval remove_vertex(const Graph& g, VertexId i) {
  if (i >= g.n()) throw GraphError("vertex to remove out of range");
  VertexRemoval out;
  out.new_of_old.assign(g.n(), -1);
  out.old_of_new.reserve(g.n() - 1);
  for (VertexId v = 0; v < g.n(); ++v) {
    if (v == i) continue;
    out.new_of_old[v] = static_cast<int>(out.old_of_new.size());
    out.old_of_new.push_back(v);
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < g.n(); ++u) {
    if (u == i) continue;
    for (VertexId w : g.neighbors(u)) {
      if (w == i || w <= u) continue;
      edges.emplace_back(static_cast<VertexId>(out.new_of_old[u]),
                         static_cast<VertexId>(out.new_of_old[w]));
    }
  }
  out.graph = Graph::from_edges(g.n() - 1, std::move(edges));
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

// A parsed graph keeps the file's vertex labels so the CLI can speak them;
// internally everything is dense 0-based.
struct ParsedGraph {
  Graph graph;
  std::vector<long long> label_of;  // internal id -> original label, ascending
  bool compacted = false;           // labels were renumbered
  bool had_header = false;

  long long original_label(VertexId v) const { return label_of[v]; }

  std::optional<VertexId> internal_of(long long label) const {
    auto it = std::lower_bound(label_of.begin(), label_of.end(), label);
    if (it == label_of.end() || *it != label) return std::nullopt;
    return static_cast<VertexId>(it - label_of.begin());
  }
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == '\v'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !(line[j] == ' ' || line[j] == '\t' ||
                                line[j] == '\r' || line[j] == '\v'))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long long parse_nonneg(std::string_view tok, std::size_t lineno) {
  long long v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last || v < 0)
    throw ParseError(lineno, "malformed token '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

// Edge-list format: one "u v" pair per line, nonnegative integer labels,
// blank lines and '#' comments ignored. An optional first line "n <count>"
// fixes the vertex count (labels must then be < count, unused labels become
// isolated vertices). Without a header, the labels that appear are compacted
// to 0..k-1 in ascending order and remembered in label_of; for files whose
// labels are already dense 0-based this is the identity.
inline ParsedGraph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  bool have_header = false;
  long long header_n = 0;
  std::vector<std::pair<long long, long long>> raw;
  std::vector<std::size_t> raw_line;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!seen_content && toks[0] == "n") {
      if (toks.size() != 2)
        throw ParseError(lineno, "malformed header, expected 'n <count>'");
      header_n = detail::parse_nonneg(toks[1], lineno);
      if (header_n > 100'000'000)
        throw ParseError(lineno, "vertex count too large");
      have_header = true;
      seen_content = true;
      continue;
    }
    seen_content = true;
    if (toks.size() != 2)
      throw ParseError(lineno, "expected 'u v', got " +
                                   std::to_string(toks.size()) + " tokens");
    long long u = detail::parse_nonneg(toks[0], lineno);
    long long v = detail::parse_nonneg(toks[1], lineno);
    if (u == v)
      throw ValidationError("self-loop on vertex " + std::to_string(u) +
                            " at line " + std::to_string(lineno));
    raw.emplace_back(u, v);
    raw_line.push_back(lineno);
  }

  ParsedGraph out;
  out.had_header = have_header;
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());

  if (have_header) {
    for (std::size_t k = 0; k < raw.size(); ++k) {
      auto [u, v] = raw[k];
      if (u >= header_n || v >= header_n)
        throw ParseError(raw_line[k], "vertex label exceeds declared count");
      edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    out.label_of.resize(static_cast<std::size_t>(header_n));
    for (long long v = 0; v < header_n; ++v) out.label_of[v] = v;
    out.graph = Graph::from_edges(static_cast<VertexId>(header_n),
                                  std::move(edges));
    return out;
  }

  std::vector<long long> labels;
  labels.reserve(2 * raw.size());
  for (auto [u, v] : raw) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto index_of = [&](long long label) {
    return static_cast<VertexId>(
        std::lower_bound(labels.begin(), labels.end(), label) -
        labels.begin());
  };
  for (auto [u, v] : raw) edges.emplace_back(index_of(u), index_of(v));
  const VertexId n = static_cast<VertexId>(labels.size());
  out.compacted = false;
  for (VertexId v = 0; v < n; ++v)
    if (labels[v] != v) out.compacted = true;
  out.label_of = std::move(labels);
  out.graph = Graph::from_edges(n, std::move(edges));
  return out;
}

// ---------------------------------------------------------------------------
// Builtin and generated graphs

// The 3-regular Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9,
// spokes k <-> k+5.
inline Graph petersen() {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId k = 0; k < 5; ++k) {
    e.emplace_back(k, (k + 1) % 5);
    e.emplace_back(k, k + 5);
    e.emplace_back(k + 5, (k + 2) % 5 + 5);
  }
  return Graph::from_edges(10, std::move(e));
}

// G(n,p): each of the n(n-1)/2 pairs becomes an edge independently with
// probability p. May be disconnected; callers must check.
inline Graph gen_erdos_renyi(VertexId n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError("edge probability must lie in [0,1]");
  Rng rng(seed);
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.next_double() < p) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

struct GeometricGraph {
  Graph graph;
  std::vector<std::array<double, 2>> points;
};

// n points uniform in [0,width] x [0,height]; edge iff Euclidean distance
// <= radius.
inline GeometricGraph gen_random_geometric(VertexId n, double width,
                                           double height, double radius,
                                           std::uint64_t seed) {
  if (!(width > 0.0) || !(height > 0.0))
    throw ValidationError("rectangle dimensions must be positive");
  if (!(radius >= 0.0)) throw ValidationError("radius must be nonnegative");
  Rng rng(seed);
  GeometricGraph out;
  out.points.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    out.points[v][0] = rng.next_double() * width;
    out.points[v][1] = rng.next_double() * height;
  }
  const double r2 = radius * radius;
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      const double dx = out.points[u][0] - out.points[v][0];
      const double dy = out.points[u][1] - out.points[v][1];
      if (dx * dx + dy * dy <= r2) e.emplace_back(u, v);
    }
  }
  out.graph = Graph::from_edges(n, std::move(e));
  return out;
}

// Decodes a Pruefer sequence of length n-2 into the tree it encodes.
inline Graph decode_prufer(VertexId n, std::span<const VertexId> seq) {
  if (n < 2) throw ValidationError("prufer decode needs n >= 2");
  if (seq.size() != static_cast<std::size_t>(n) - 2)
    throw ValidationError("prufer sequence must have length n-2");
  std::vector<VertexId> deg(n, 1);
  for (VertexId a : seq) {
    if (a >= n) throw ValidationError("prufer entry out of range");
    ++deg[a];
  }
  std::set<VertexId> leaves;
  for (VertexId v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.insert(v);
  std::vector<std::pair<VertexId, VertexId>> e;
  e.reserve(n - 1);
  for (VertexId a : seq) {
    const VertexId leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    e.emplace_back(leaf, a);
    if (--deg[a] == 1) leaves.insert(a);
  }
  const VertexId x = *leaves.begin();
  const VertexId y = *std::next(leaves.begin());
  e.emplace_back(x, y);
  return Graph::from_edges(n, std::move(e));
}

// Uniform random labeled tree via a random Pruefer sequence.
inline Graph gen_random_tree(VertexId n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("tree needs at least one vertex");
  if (n == 1) return Graph::from_edges(1, {});
  if (n == 2) return Graph::from_edges(2, {{0, 1}});
  Rng rng(seed);
  std::vector<VertexId> seq(n - 2);
  for (auto& a : seq) a = static_cast<VertexId>(rng.next_index(n));
  return decode_prufer(n, seq);
}

// ---------------------------------------------------------------------------
// Writers

// Shortest round-trip representation; used everywhere a double is printed so
// outputs are byte-stable.
inline std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

// Writes the canonical edge-list form with an explicit header so isolated
// vertices survive a round trip.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.n() << "\n";
  for (VertexId u = 0; u < g.n(); ++u)
    for (VertexId w : g.neighbors(u))
      if (w > u) out << u << " " << w << "\n";
}

inline void write_coordinates_csv(std::span<const std::array<double, 2>> pts,
                                  std::ostream& out) {
  out << "index,x,y\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out << i << "," << format_double(pts[i][0]) << ","
        << format_double(pts[i][1]) << "\n";
}

}  // namespace specpath
