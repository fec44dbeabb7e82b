// Command-line frontend: solve, landscape, gen, bench, compare.
//
// Exit codes: 0 success, 1 usage error, 2 input/graph error, 3 solver or
// convergence error. Every error path prints exactly one diagnostic line to
// stderr. All randomized behavior is seeded; identical invocations produce
// byte-identical stdout and output files (wall-clock diagnostics go to
// stderr, and timings enter the report JSON only with --timings).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specpath/specpath.hpp"

namespace {

using namespace specpath;

struct GlobalOpts {
  std::string laplacian = "combinatorial";
  bool symmetrize = true;
  std::uint64_t seed = 1;
  double tol_residual = 1e-8;
  double tol_eig = 1e-10;
  unsigned threads = 0;
  std::string output;

  LaplacianKind kind() const { return laplacian_kind_from_string(laplacian); }
  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.residual_tol = tol_residual;
    cfg.eig_tol = tol_eig;
    return cfg;
  }
  BenchOptions bench(LaplacianKind k) const {
    BenchOptions opt;
    opt.kind = k;
    opt.cfg = solver();
    opt.symmetrize = symmetrize;
    opt.threads = threads;
    return opt;
  }
};

struct LoadedGraph {
  Graph graph;
  std::vector<long long> labels;  // internal -> original
  GraphDescriptor descriptor;

  VertexId internal_of(long long label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label)
      throw GraphError("vertex label " + std::to_string(label) +
                       " not present in the graph");
    return static_cast<VertexId>(it - labels.begin());
  }
};

LoadedGraph load_graph(const std::string& file, const std::string& builtin) {
  if (file.empty() == builtin.empty())
    throw ValidationError("give exactly one of --file or --builtin");
  LoadedGraph out;
  if (!builtin.empty()) {
    if (builtin != "petersen")
      throw ValidationError("unknown builtin graph '" + builtin + "'");
    out.graph = petersen();
    out.labels.resize(out.graph.n());
    for (VertexId v = 0; v < out.graph.n(); ++v) out.labels[v] = v;
    out.descriptor.family = "builtin";
    out.descriptor.name = builtin;
    return out;
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) throw GraphError("cannot read file '" + file + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  std::istringstream stream(bytes);
  ParsedGraph parsed = parse_edge_list(stream);
  out.graph = std::move(parsed.graph);
  out.labels = std::move(parsed.label_of);
  out.descriptor.family = "file";
  out.descriptor.name = file;
  out.descriptor.file_hash = fnv1a64_hex(bytes);
  return out;
}

void write_output_or_stdout(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GraphError("cannot write file '" + path + "'");
  out << data;
}

PairSelection parse_pair_selection(const std::string& pairs,
                                   std::uint64_t pair_seed) {
  PairSelection sel;
  sel.pair_seed = pair_seed;
  if (pairs == "all") return sel;
  try {
    std::size_t pos = 0;
    const long long k = std::stoll(pairs, &pos);
    if (pos != pairs.size() || k < 1) throw std::invalid_argument("range");
    sel.mode = PairSelection::Mode::Random;
    sel.k = static_cast<std::size_t>(k);
  } catch (const std::exception&) {
    throw ValidationError("--pairs expects 'all' or a positive count, got '" +
                          pairs + "'");
  }
  return sel;
}

void emit_timings(const PhaseTimings& t) {
  std::cerr << "timings: landscapes " << format_double(t.landscapes_s)
            << "s, bfs " << format_double(t.bfs_s) << "s, paths "
            << format_double(t.paths_s) << "s, total "
            << format_double(t.total_s) << "s\n";
}

// --- solve ---------------------------------------------------------------

int cmd_solve(const GlobalOpts& g, const LoadedGraph& lg, long long from,
              long long to, bool verify) {
  const VertexId source = lg.internal_of(from);
  const VertexId target = lg.internal_of(to);
  LandscapeCache cache(lg.graph, g.solver());
  PathResult path =
      spectral_path(lg.graph, source, target, g.kind(), g.symmetrize, cache);

  std::ostringstream out;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    if (i) out << " ";
    out << lg.labels[path.vertices[i]];
  }
  out << "\n";
  out << "length " << path.length() << "\n";
  if (verify) {
    const int exact = bfs_distances(lg.graph, source)[target];
    out << "bfs " << exact << "\n";
    out << "excess " << (static_cast<long long>(path.length()) - exact) << "\n";
  }
  write_output_or_stdout(g.output, out.str());
  return 0;
}

// --- landscape -----------------------------------------------------------

int cmd_landscape(const GlobalOpts& g, const LoadedGraph& lg, long long pin) {
  const VertexId pinned = lg.internal_of(pin);
  SpectralLandscape ls =
      compute_landscape(lg.graph, pinned, g.kind(), g.solver());
  std::ostringstream out;
  write_landscape_csv(out, lg.graph, ls, &lg.labels);
  write_output_or_stdout(g.output, out.str());
  return 0;
}

// --- gen -----------------------------------------------------------------

int cmd_gen(const GlobalOpts& g, const std::string& family, VertexId n,
            double p, double width, double height, double radius,
            const std::string& coords_path) {
  std::ostringstream out;
  if (family == "er") {
    write_edge_list(gen_erdos_renyi(n, p, g.seed), out);
  } else if (family == "tree") {
    write_edge_list(gen_random_tree(n, g.seed), out);
  } else if (family == "geometric") {
    auto geo = gen_random_geometric(n, width, height, radius, g.seed);
    write_edge_list(geo.graph, out);
    if (!coords_path.empty()) {
      std::ofstream cs(coords_path, std::ios::binary | std::ios::trunc);
      if (!cs) throw GraphError("cannot write file '" + coords_path + "'");
      write_coordinates_csv(geo.points, cs);
    }
  } else {
    throw ValidationError("unknown family '" + family + "'");
  }
  write_output_or_stdout(g.output, out.str());
  return 0;
}

// --- bench ---------------------------------------------------------------

int cmd_bench(const GlobalOpts& g, const std::string& family,
              const std::string& file, const std::string& builtin,
              const std::vector<VertexId>& ns, const std::vector<double>& ps,
              double width, double height, double radius, int reps,
              const std::string& pairs, std::uint64_t pair_seed,
              bool timings) {
  const PairSelection sel = parse_pair_selection(pairs, pair_seed);
  const BenchOptions opt = g.bench(g.kind());

  if (family == "file" || family == "builtin") {
    LoadedGraph lg = load_graph(family == "file" ? file : "",
                                family == "builtin" ? builtin : "");
    BenchmarkReport report =
        run_with_selection(lg.graph, sel, opt, lg.descriptor);
    const std::string doc = to_json(report, timings, &lg.labels).dump(2) + "\n";
    write_output_or_stdout(g.output, doc);
    if (!g.output.empty()) print_summary(std::cout, report);
    emit_timings(report.timings);
    return 0;
  }

  FamilySweepSpec spec;
  spec.family = family;
  spec.ns = ns;
  spec.ps = ps;
  spec.width = width;
  spec.height = height;
  spec.radius = radius;
  spec.repetitions = reps;
  spec.seed = g.seed;
  spec.pairs = sel;
  SweepResult sweep = run_family_sweep(spec, opt);
  const std::string doc = to_json(sweep, timings).dump(2) + "\n";
  write_output_or_stdout(g.output, doc);
  if (!g.output.empty()) print_summary(std::cout, sweep);
  PhaseTimings total;
  for (const auto& r : sweep.instances) {
    total.landscapes_s += r.timings.landscapes_s;
    total.bfs_s += r.timings.bfs_s;
    total.paths_s += r.timings.paths_s;
    total.total_s += r.timings.total_s;
  }
  emit_timings(total);
  return 0;
}

// --- compare -------------------------------------------------------------

int cmd_compare(const GlobalOpts& g, const LoadedGraph& lg,
                const std::string& pairs, std::uint64_t pair_seed,
                bool timings) {
  const PairSelection sel = parse_pair_selection(pairs, pair_seed);
  CompareReport cmp =
      compare_kinds(lg.graph, sel, g.bench(g.kind()), lg.descriptor);
  const std::string doc = to_json(cmp, timings, &lg.labels).dump(2) + "\n";
  write_output_or_stdout(g.output, doc);
  if (!g.output.empty()) print_summary(std::cout, cmp);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral shortest paths: pinned-Laplacian landscapes, greedy "
               "descent, and BFS-verified benchmarks"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--laplacian", g.laplacian, "Laplacian variant")
      ->check(CLI::IsMember({"combinatorial", "random-walk", "sym-normalized"}))
      ->capture_default_str();
  app.add_flag("--symmetrize,!--no-symmetrize", g.symmetrize,
               "run the descent from both endpoints and keep the shorter path")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "generator seed")->capture_default_str();
  app.add_option("--tol-residual", g.tol_residual, "eigensolver residual bound")
      ->capture_default_str();
  app.add_option("--tol-eig", g.tol_eig, "eigenvalue-change stopping bound")
      ->capture_default_str();
  app.add_option("--threads", g.threads,
                 "worker threads (0 = available parallelism)")
      ->capture_default_str();
  app.add_option("--output", g.output, "write results to this file");

  std::string file, builtin;
  long long from = 0, to = 0, pin = 0;
  bool verify = false;

  auto* solve = app.add_subcommand("solve", "find a path between two vertices");
  solve->fallthrough();
  solve->add_option("--file", file, "edge-list file");
  solve->add_option("--builtin", builtin, "builtin graph (petersen)");
  solve->add_option("--from", from, "source vertex")->required();
  solve->add_option("--to", to, "target vertex")->required();
  solve->add_flag("--verify", verify, "also print the BFS distance and excess");

  auto* landscape =
      app.add_subcommand("landscape", "dump the eigenvector landscape as CSV");
  landscape->fallthrough();
  landscape->add_option("--file", file, "edge-list file");
  landscape->add_option("--builtin", builtin, "builtin graph (petersen)");
  landscape->add_option("--pin", pin, "pinned vertex")->required();

  std::string family = "er";
  VertexId gen_n = 100;
  double gen_p = 0.1, width = 3.0, height = 1.0, radius = 0.3;
  std::string coords_path;

  auto* gen = app.add_subcommand("gen", "generate a graph as an edge list");
  gen->fallthrough();
  gen->add_option("--family", family, "er | geometric | tree")->required();
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--p", gen_p, "edge probability (er)");
  gen->add_option("--width", width, "rectangle width (geometric)");
  gen->add_option("--height", height, "rectangle height (geometric)");
  gen->add_option("--radius", radius, "connection radius (geometric)");
  gen->add_option("--coords", coords_path,
                  "also write point coordinates CSV (geometric)");

  std::vector<VertexId> bench_ns;
  std::vector<double> bench_ps;
  int reps = 1;
  std::string pairs = "all";
  std::uint64_t pair_seed = 1;
  bool timings = false;

  auto* bench = app.add_subcommand(
      "bench", "compare spectral paths against BFS and emit a JSON report");
  bench->fallthrough();
  bench->add_option("--family", family, "er | geometric | tree | file | builtin")
      ->required();
  bench->add_option("--file", file, "edge-list file (family=file)");
  bench->add_option("--builtin", builtin, "builtin graph (family=builtin)");
  bench->add_option("--n", bench_ns, "vertex counts (repeatable)");
  bench->add_option("--p", bench_ps, "edge probabilities (er, repeatable)");
  bench->add_option("--width", width, "rectangle width (geometric)");
  bench->add_option("--height", height, "rectangle height (geometric)");
  bench->add_option("--radius", radius, "connection radius (geometric)");
  bench->add_option("--reps", reps, "repetitions per parameter point")
      ->capture_default_str();
  bench->add_option("--pairs", pairs, "'all' or a sampled pair count")
      ->capture_default_str();
  bench->add_option("--pair-seed", pair_seed, "pair sampling seed")
      ->capture_default_str();
  bench->add_flag("--timings", timings,
                  "include wall-clock timings in the report JSON");

  auto* compare = app.add_subcommand(
      "compare", "run the benchmark for all three Laplacian kinds");
  compare->fallthrough();
  compare->add_option("--file", file, "edge-list file");
  compare->add_option("--builtin", builtin, "builtin graph (petersen)");
  compare->add_option("--pairs", pairs, "'all' or a sampled pair count")
      ->capture_default_str();
  compare->add_option("--pair-seed", pair_seed, "pair sampling seed")
      ->capture_default_str();
  compare->add_flag("--timings", timings,
                    "include wall-clock timings in the report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(solve))
      return cmd_solve(g, load_graph(file, builtin), from, to, verify);
    if (app.got_subcommand(landscape))
      return cmd_landscape(g, load_graph(file, builtin), pin);
    if (app.got_subcommand(gen))
      return cmd_gen(g, family, gen_n, gen_p, width, height, radius,
                     coords_path);
    if (app.got_subcommand(bench))
      return cmd_bench(g, family, file, builtin, bench_ns, bench_ps, width,
                       height, radius, reps, pairs, pair_seed, timings);
    if (app.got_subcommand(compare))
      return cmd_compare(g, load_graph(file, builtin), pairs, pair_seed,
                         timings);
    std::cerr << "error: usage: no subcommand\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return 2;
  } catch (const GraphError& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: solver: " << e.what() << "\n";
    return 3;
  } catch (const LandscapeError& e) {
    std::cerr << "error: solver: " << e.what() << "\n";
    return 3;
  } catch (const DescentError& e) {
    std::cerr << "error: solver: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 3;
  }
}
