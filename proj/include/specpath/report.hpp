#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "specpath/bench.hpp"

namespace specpath {

namespace detail {

inline long long as_label(VertexId v, const std::vector<long long>* labels) {
  return labels ? (*labels)[v] : static_cast<long long>(v);
}

}  // namespace detail

// Canonical JSON form of a report. nlohmann::json keeps object keys sorted,
// and every number is emitted with its shortest round-trip representation,
// so identical runs serialize to identical bytes. Timings vary run to run
// and are only included on request.
inline nlohmann::json to_json(const BenchmarkReport& r,
                              bool include_timings = false,
                              const std::vector<long long>* labels = nullptr) {
  nlohmann::json graph;
  graph["family"] = r.graph.family;
  if (!r.graph.name.empty()) graph["name"] = r.graph.name;
  graph["n"] = r.graph.n;
  graph["m"] = r.graph.m;
  if (!r.graph.params.empty()) graph["params"] = r.graph.params;
  if (r.graph.seeded) graph["seed"] = r.graph.seed;
  if (!r.graph.file_hash.empty()) graph["file_hash"] = r.graph.file_hash;

  nlohmann::json policy;
  policy["mode"] = r.pair_policy.mode;
  policy["pairs"] = r.pair_policy.pairs;
  policy["ordered"] = r.pair_policy.ordered;
  if (r.pair_policy.mode == "random") {
    policy["requested_k"] = r.pair_policy.requested_k;
    policy["pair_seed"] = r.pair_policy.pair_seed;
    policy["clamped"] = r.pair_policy.clamped;
  }

  nlohmann::json j;
  j["schema"] = "specpath-report-v1";
  j["graph"] = graph;
  j["laplacian"] = to_string(r.kind);
  j["symmetrize"] = r.symmetrize;
  j["pair_policy"] = policy;
  j["pairs_evaluated"] = r.pairs_evaluated;
  j["fraction_optimal"] = r.fraction_optimal;
  j["mean_excess"] = r.mean_excess;
  j["max_excess"] = {
      {"value", r.max_excess},
      {"source", detail::as_label(r.max_excess_witness.source, labels)},
      {"target", detail::as_label(r.max_excess_witness.target, labels)},
  };
  j["length_ratio"] = {
      {"mean", r.mean_length_ratio},
      {"max", r.max_length_ratio},
      {"max_source", detail::as_label(r.max_ratio_witness.source, labels)},
      {"max_target", detail::as_label(r.max_ratio_witness.target, labels)},
  };
  j["near_noise_decisions"] = r.near_noise_decisions;
  j["paths_validated"] = r.paths_validated;
  j["solver"] = {
      {"landscapes", r.solver.landscapes},
      {"dense_solves", r.solver.dense_solves},
      {"outer_iterations", r.solver.outer_iterations},
      {"max_residual", r.solver.max_residual},
      {"min_certificate_margin", r.solver.min_certificate_margin},
  };
  if (include_timings)
    j["timings"] = {
        {"landscapes_s", r.timings.landscapes_s},
        {"bfs_s", r.timings.bfs_s},
        {"paths_s", r.timings.paths_s},
        {"total_s", r.timings.total_s},
    };
  return j;
}

inline nlohmann::json to_json(const SweepResult& s,
                              bool include_timings = false) {
  nlohmann::json j;
  j["schema"] = "specpath-sweep-v1";
  j["family"] = s.family;
  j["total_discarded"] = s.total_discarded;
  auto& instances = j["instances"] = nlohmann::json::array();
  for (const auto& r : s.instances)
    instances.push_back(to_json(r, include_timings));
  auto& points = j["points"] = nlohmann::json::array();
  for (const auto& p : s.points) {
    points.push_back({
        {"params", p.params},
        {"repetitions", p.repetitions},
        {"discarded", p.discarded},
        {"mean_fraction_optimal", p.mean_fraction_optimal},
        {"min_fraction_optimal", p.min_fraction_optimal},
        {"mean_mean_excess", p.mean_mean_excess},
        {"max_mean_excess", p.max_mean_excess},
    });
  }
  return j;
}

inline nlohmann::json to_json(const CompareReport& c,
                              bool include_timings = false,
                              const std::vector<long long>* labels = nullptr) {
  nlohmann::json j;
  j["schema"] = "specpath-compare-v1";
  for (const auto& r : c.reports)
    j["per_kind"][to_string(r.kind)] = to_json(r, include_timings, labels);
  return j;
}

// ---------------------------------------------------------------------------
// Human-readable summaries (stdout); deterministic, no timings.

inline std::string describe_graph(const GraphDescriptor& g) {
  std::string out = g.family;
  if (!g.name.empty()) out += ":" + g.name;
  out += "(n=" + std::to_string(g.n) + ",m=" + std::to_string(g.m);
  for (const auto& [key, value] : g.params) {
    if (key == "n") continue;
    out += "," + key + "=" + format_double(value);
  }
  if (g.seeded) out += ",seed=" + std::to_string(g.seed);
  out += ")";
  return out;
}

inline void print_summary_header(std::ostream& os) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-44s %-14s %-4s %8s %9s %12s %5s\n",
                "graph", "laplacian", "sym", "pairs", "optimal", "mean_excess",
                "max");
  os << buf;
}

inline void print_summary_row(std::ostream& os, const BenchmarkReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-44s %-14s %-4s %8zu %9.4f %12.6f %5d\n",
                describe_graph(r.graph).c_str(), to_string(r.kind),
                r.symmetrize ? "on" : "off", r.pairs_evaluated,
                r.fraction_optimal, r.mean_excess, r.max_excess);
  os << buf;
}

inline void print_summary(std::ostream& os, const BenchmarkReport& r) {
  print_summary_header(os);
  print_summary_row(os, r);
}

inline void print_summary(std::ostream& os, const SweepResult& s) {
  print_summary_header(os);
  for (const auto& r : s.instances) print_summary_row(os, r);
  os << "discarded disconnected samples: " << s.total_discarded << "\n";
}

inline void print_summary(std::ostream& os, const CompareReport& c) {
  print_summary_header(os);
  for (const auto& r : c.reports) print_summary_row(os, r);
}

// ---------------------------------------------------------------------------
// Landscape dump

// CSV "vertex,phi,component,mu"; the pinned vertex carries component -1 and
// mu 0.
inline void write_landscape_csv(std::ostream& os, const Graph& g,
                                const SpectralLandscape& ls,
                                const std::vector<long long>* labels = nullptr) {
  os << "vertex,phi,component,mu\n";
  for (VertexId v = 0; v < g.n(); ++v) {
    const int comp = ls.component_of.component_of[v];
    const double mu = comp >= 0 ? ls.components[comp].mu : 0.0;
    os << detail::as_label(v, labels) << "," << format_double(ls.phi[v]) << ","
       << comp << "," << format_double(mu) << "\n";
  }
}

}  // namespace specpath
