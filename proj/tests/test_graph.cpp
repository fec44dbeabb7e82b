#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "specpath/specpath.hpp"
#include "test_support.hpp"

using namespace specpath;
using namespace testsup;

TEST_CASE("edge list parsing") {
  SECTION("plain two-edge file") {
    std::istringstream in("0 1\n1 2");
    auto parsed = parse_edge_list(in);
    REQUIRE(parsed.graph.n() == 3);
    REQUIRE(parsed.graph.m() == 2);
    REQUIRE(parsed.graph.has_edge(0, 1));
    REQUIRE(parsed.graph.has_edge(1, 2));
    REQUIRE_FALSE(parsed.graph.has_edge(0, 2));
    REQUIRE_FALSE(parsed.compacted);
  }
  SECTION("duplicate edge collapses, either orientation") {
    std::istringstream in("0 1\n1 0");
    auto parsed = parse_edge_list(in);
    REQUIRE(parsed.graph.n() == 2);
    REQUIRE(parsed.graph.m() == 1);
  }
  SECTION("self-loop rejected") {
    std::istringstream in("0 0");
    REQUIRE_THROWS_AS(parse_edge_list(in), ValidationError);
  }
  SECTION("comments and blank lines ignored") {
    std::istringstream in("# a graph\n\n0 1\n   \n# trailing\n1 2\n");
    REQUIRE(parse_edge_list(in).graph.m() == 2);
  }
  SECTION("malformed token reports the line") {
    std::istringstream in("0 1\n1 x\n");
    try {
      parse_edge_list(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.line() == 2);
    }
  }
  SECTION("three tokens on a line is malformed") {
    std::istringstream in("0 1 2\n");
    REQUIRE_THROWS_AS(parse_edge_list(in), ParseError);
  }
  SECTION("header fixes the vertex count") {
    std::istringstream in("n 5\n0 1\n");
    auto parsed = parse_edge_list(in);
    REQUIRE(parsed.graph.n() == 5);
    REQUIRE(parsed.graph.m() == 1);
    REQUIRE(parsed.had_header);
  }
  SECTION("header bound enforced") {
    std::istringstream in("n 2\n0 5\n");
    REQUIRE_THROWS_AS(parse_edge_list(in), ParseError);
  }
  SECTION("sparse labels compact and keep the originals") {
    std::istringstream in("10 20\n20 30\n");
    auto parsed = parse_edge_list(in);
    REQUIRE(parsed.graph.n() == 3);
    REQUIRE(parsed.compacted);
    REQUIRE(parsed.original_label(0) == 10);
    REQUIRE(parsed.original_label(2) == 30);
    REQUIRE(parsed.internal_of(20).value() == 1);
    REQUIRE_FALSE(parsed.internal_of(15).has_value());
  }
  SECTION("one-based labels (paper convention) shift to zero-based") {
    std::istringstream in("1 2\n2 3\n3 1\n");
    auto parsed = parse_edge_list(in);
    REQUIRE(parsed.graph.n() == 3);
    REQUIRE(parsed.compacted);
    REQUIRE(oracle_connected(parsed.graph));
  }
}

TEST_CASE("petersen graph") {
  Graph g = petersen();
  REQUIRE(g.n() == 10);
  REQUIRE(g.m() == 15);
  for (VertexId v = 0; v < 10; ++v) REQUIRE(g.degree(v) == 3);
  REQUIRE(invariants_hold(g));
  REQUIRE(oracle_connected(g));
  REQUIRE(oracle_girth(g) == 5);
  REQUIRE(oracle_diameter(g) == 2);
  REQUIRE_FALSE(oracle_bipartite(g));
}

TEST_CASE("erdos-renyi generator") {
  SECTION("p = 0 gives the empty graph") {
    REQUIRE(gen_erdos_renyi(5, 0.0, 1).m() == 0);
  }
  SECTION("p = 1 gives the complete graph") {
    Graph g = gen_erdos_renyi(5, 1.0, 1);
    REQUIRE(g.m() == 10);
  }
  SECTION("same seed, same edge set") {
    Graph a = gen_erdos_renyi(100, 0.1, 42);
    Graph b = gen_erdos_renyi(100, 0.1, 42);
    REQUIRE(a.m() == b.m());
    for (VertexId u = 0; u < 100; ++u) {
      auto na = a.neighbors(u);
      auto nb = b.neighbors(u);
      REQUIRE(std::equal(na.begin(), na.end(), nb.begin(), nb.end()));
    }
    REQUIRE(invariants_hold(a));
  }
  SECTION("bad probability rejected") {
    REQUIRE_THROWS_AS(gen_erdos_renyi(5, 1.5, 1), ValidationError);
  }
}

TEST_CASE("random geometric generator") {
  SECTION("zero radius gives no edges") {
    auto geo = gen_random_geometric(10, 3.0, 1.0, 0.0, 7);
    REQUIRE(geo.graph.m() == 0);
    REQUIRE(geo.points.size() == 10);
  }
  SECTION("edges follow the sampled distances exactly") {
    // Seed search: find one two-point draw within the radius and one
    // outside, verifying m against a brute-force distance check.
    bool saw_close = false, saw_far = false;
    for (std::uint64_t seed = 1; seed <= 400 && !(saw_close && saw_far);
         ++seed) {
      auto geo = gen_random_geometric(2, 3.0, 1.0, 0.3, seed);
      const double dx = geo.points[0][0] - geo.points[1][0];
      const double dy = geo.points[0][1] - geo.points[1][1];
      const bool within = std::sqrt(dx * dx + dy * dy) <= 0.3;
      REQUIRE(geo.graph.m() == (within ? 1u : 0u));
      (within ? saw_close : saw_far) = true;
    }
    REQUIRE(saw_close);
    REQUIRE(saw_far);
  }
  SECTION("paper-scale instance") {
    auto geo = gen_random_geometric(300, 3.0, 1.0, 0.3, 1);
    REQUIRE(geo.graph.n() == 300);
    REQUIRE(invariants_hold(geo.graph));
    for (const auto& pt : geo.points) {
      REQUIRE((pt[0] >= 0.0 && pt[0] <= 3.0));
      REQUIRE((pt[1] >= 0.0 && pt[1] <= 1.0));
    }
    // brute-force cross-check of the edge rule on a sample of pairs
    for (VertexId u = 0; u < 300; u += 17) {
      for (VertexId v = u + 1; v < 300; v += 13) {
        const double dx = geo.points[u][0] - geo.points[v][0];
        const double dy = geo.points[u][1] - geo.points[v][1];
        REQUIRE(geo.graph.has_edge(u, v) == (dx * dx + dy * dy <= 0.09));
      }
    }
  }
}

TEST_CASE("random trees") {
  SECTION("n = 1") {
    Graph g = gen_random_tree(1, 3);
    REQUIRE(g.n() == 1);
    REQUIRE(g.m() == 0);
  }
  SECTION("n = 2") {
    Graph g = gen_random_tree(2, 3);
    REQUIRE(g.m() == 1);
    REQUIRE(g.has_edge(0, 1));
  }
  SECTION("n = 50 is a connected acyclic graph") {
    Graph g = gen_random_tree(50, 11);
    REQUIRE(g.m() == 49);
    REQUIRE(oracle_connected(g));
    REQUIRE(oracle_girth(g) == 0);
  }
}

TEST_CASE("prufer round trip") {
  SECTION("exhaustive for n <= 5") {
    for (VertexId n = 3; n <= 5; ++n) {
      const std::size_t len = n - 2;
      std::vector<VertexId> seq(len, 0);
      for (;;) {
        Graph t = decode_prufer(n, seq);
        REQUIRE(t.m() == n - 1);
        REQUIRE(oracle_connected(t));
        REQUIRE(prufer_encode(t) == seq);
        // next sequence in lexicographic order
        std::size_t k = 0;
        while (k < len && seq[k] == n - 1) seq[k++] = 0;
        if (k == len) break;
        ++seq[k];
      }
    }
  }
  SECTION("random trees up to n = 10") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const VertexId n = 3 + static_cast<VertexId>(seed % 8);
      Rng rng(seed);
      std::vector<VertexId> seq(n - 2);
      for (auto& a : seq) a = static_cast<VertexId>(rng.next_index(n));
      REQUIRE(prufer_encode(decode_prufer(n, seq)) == seq);
    }
  }
}

TEST_CASE("bfs distances") {
  SECTION("path graph") {
    Graph g = path_graph(4);
    REQUIRE(bfs_distances(g, 0) == std::vector<int>{0, 1, 2, 3});
  }
  SECTION("complete graph") {
    Graph g = complete_graph(5);
    REQUIRE(bfs_distances(g, 0) == std::vector<int>{0, 1, 1, 1, 1});
  }
  SECTION("unreachable vertices") {
    Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    auto d = bfs_distances(g, 0);
    REQUIRE(d[1] == 1);
    REQUIRE(d[2] == kUnreachable);
    REQUIRE(d[3] == kUnreachable);
  }
  SECTION("triangle property on assorted graphs") {
    const Graph graphs[] = {petersen(), path_graph(9), cycle_graph(8),
                            random_connected_er(20, 0.2, 5),
                            gen_random_tree(20, 5)};
    for (const auto& g : graphs) {
      for (VertexId s = 0; s < g.n(); ++s) {
        auto d = bfs_distances(g, s);
        for (VertexId u = 0; u < g.n(); ++u)
          for (VertexId w : g.neighbors(u)) {
            REQUIRE(d[w] <= d[u] + 1);
            REQUIRE(d[u] <= d[w] + 1);
          }
      }
    }
  }
}

TEST_CASE("components and vertex removal") {
  SECTION("star minus its hub decouples into isolated leaves") {
    auto rem = remove_vertex(star_graph(3), 0);
    REQUIRE(rem.graph.n() == 3);
    REQUIRE(rem.graph.m() == 0);
    REQUIRE(components(rem.graph).count == 3);
  }
  SECTION("path minus its middle") {
    auto rem = remove_vertex(path_graph(3), 1);
    REQUIRE(rem.graph.m() == 0);
    REQUIRE(components(rem.graph).count == 2);
    REQUIRE(rem.old_of_new == std::vector<VertexId>{0, 2});
    REQUIRE(rem.new_of_old == std::vector<int>{0, -1, 1});
  }
  SECTION("complete graph minus any vertex stays complete") {
    for (VertexId i = 0; i < 4; ++i) {
      auto rem = remove_vertex(complete_graph(4), i);
      REQUIRE(rem.graph.n() == 3);
      REQUIRE(rem.graph.m() == 3);
    }
  }
  SECTION("labels agree with brute-force reachability on small graphs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const VertexId n = 4 + static_cast<VertexId>(seed % 9);
      Graph g = gen_erdos_renyi(n, 0.25, seed);  // connected or not
      const VertexId i = static_cast<VertexId>(seed % n);
      auto rem = remove_vertex(g, i);
      auto labeling = components(rem.graph);
      auto reach = oracle_reachability(rem.graph);
      for (VertexId u = 0; u < rem.graph.n(); ++u)
        for (VertexId v = 0; v < rem.graph.n(); ++v)
          REQUIRE((labeling.component_of[u] == labeling.component_of[v]) ==
                  (reach[u].count(v) > 0));
    }
  }
  SECTION("pinned components label the original ids") {
    auto lab = pinned_components(star_graph(3), 0);
    REQUIRE(lab.count == 3);
    REQUIRE(lab.component_of[0] == -1);
    REQUIRE(lab.component_of[1] == 0);
    REQUIRE(lab.component_of[3] == 2);
  }
}

TEST_CASE("construction invariants on generated graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    REQUIRE(invariants_hold(gen_erdos_renyi(30, 0.15, seed)));
    REQUIRE(invariants_hold(gen_random_tree(30, seed)));
    REQUIRE(invariants_hold(
        gen_random_geometric(40, 2.0, 2.0, 0.5, seed).graph));
  }
  REQUIRE_THROWS_AS(Graph::from_edges(3, {{0, 0}}), ValidationError);
  REQUIRE_THROWS_AS(Graph::from_edges(3, {{0, 5}}), ValidationError);
}

TEST_CASE("writers round trip") {
  Graph g = gen_erdos_renyi(23, 0.2, 9);
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  auto parsed = parse_edge_list(in);
  REQUIRE(parsed.graph.n() == g.n());
  REQUIRE(parsed.graph.m() == g.m());
  for (VertexId u = 0; u < g.n(); ++u) {
    auto na = g.neighbors(u);
    auto nb = parsed.graph.neighbors(u);
    REQUIRE(std::equal(na.begin(), na.end(), nb.begin(), nb.end()));
  }

  auto geo = gen_random_geometric(5, 1.0, 1.0, 0.4, 2);
  std::ostringstream csv;
  write_coordinates_csv(geo.points, csv);
  const std::string text = csv.str();
  REQUIRE(text.rfind("index,x,y\n", 0) == 0);
  REQUIRE(std::count(text.begin(), text.end(), '\n') == 6);
}
