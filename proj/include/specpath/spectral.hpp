#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "specpath/graph.hpp"
#include "specpath/jacobi.hpp"

namespace specpath {

enum class LaplacianKind {
  Combinatorial,        // L = D - A
  RandomWalk,           // Id - D^{-1} A, solved via the symmetric form
  SymmetricNormalized,  // Id - D^{-1/2} A D^{-1/2}
};

inline const char* to_string(LaplacianKind k) {
  switch (k) {
    case LaplacianKind::Combinatorial: return "combinatorial";
    case LaplacianKind::RandomWalk: return "random-walk";
    case LaplacianKind::SymmetricNormalized: return "sym-normalized";
  }
  return "?";
}

inline LaplacianKind laplacian_kind_from_string(const std::string& s) {
  if (s == "combinatorial") return LaplacianKind::Combinatorial;
  if (s == "random-walk") return LaplacianKind::RandomWalk;
  if (s == "sym-normalized") return LaplacianKind::SymmetricNormalized;
  throw ValidationError("unknown laplacian kind '" + s + "'");
}

constexpr LaplacianKind kAllKinds[] = {LaplacianKind::Combinatorial,
                                       LaplacianKind::RandomWalk,
                                       LaplacianKind::SymmetricNormalized};

struct SolverConfig {
  double residual_tol = 1e-8;  // ||M v - mu v|| bound at unit norm
  double eig_tol = 1e-10;      // relative Rayleigh-quotient change
  int max_outer = 500;         // inverse-iteration cap
  int max_inner = 20000;       // conjugate-gradient cap per solve
  int dense_threshold = 64;    // at or below: dense Jacobi path
};

// Relative residual for the inner conjugate-gradient solves.
constexpr double kCgTolerance = 1e-12;

// Required strict margin of the descent certificate on every landscape.
constexpr double kCertificateMargin = 1e-10;

// ---------------------------------------------------------------------------
// Pinned Laplacian assembly

struct PinnedComponent {
  std::vector<VertexId> vertices;      // original ids, ascending
  Eigen::SparseMatrix<double> matrix;  // symmetric SPD block
};

struct PinnedSystem {
  VertexId pinned = 0;
  LaplacianKind kind = LaplacianKind::Combinatorial;
  std::vector<PinnedComponent> components;
};

// Principal submatrix of the chosen Laplacian with row/column `pinned`
// deleted, split block-diagonally by the components of G - pinned. Degrees
// come from the original graph. The RandomWalk kind assembles the
// symmetric-normalized block; compute_landscape applies the similarity
// transform to its eigenvector afterwards.
inline PinnedSystem assemble_pinned_laplacian(const Graph& g, VertexId pinned,
                                              LaplacianKind kind) {
  if (pinned >= g.n()) throw GraphError("pinned vertex out of range");
  {
    auto whole = components(g);
    if (whole.count != 1)
      throw GraphError("graph disconnected: " + std::to_string(whole.count) +
                       " components");
  }
  const auto comps = pinned_components(g, pinned);

  PinnedSystem sys;
  sys.pinned = pinned;
  sys.kind = kind;
  sys.components.resize(comps.count);
  std::vector<int> local(g.n(), -1);
  for (VertexId v = 0; v < g.n(); ++v) {
    const int c = comps.component_of[v];
    if (c < 0) continue;
    local[v] = static_cast<int>(sys.components[c].vertices.size());
    sys.components[c].vertices.push_back(v);
  }

  const bool combinatorial = kind == LaplacianKind::Combinatorial;
  for (auto& comp : sys.components) {
    const int d = static_cast<int>(comp.vertices.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(comp.vertices.size() * 4);
    for (int lv = 0; lv < d; ++lv) {
      const VertexId ov = comp.vertices[lv];
      trip.emplace_back(lv, lv, combinatorial ? double(g.degree(ov)) : 1.0);
      for (VertexId w : g.neighbors(ov)) {
        if (w == pinned) continue;
        const double off =
            combinatorial
                ? -1.0
                : -1.0 / std::sqrt(double(g.degree(ov)) * double(g.degree(w)));
        trip.emplace_back(lv, local[w], off);
      }
    }
    comp.matrix.resize(d, d);
    comp.matrix.setFromTriplets(trip.begin(), trip.end());
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Smallest eigenpair

struct EigenResult {
  double mu = 0.0;
  Eigen::VectorXd vec;  // unit norm
  int iterations = 0;   // outer iterations (or Jacobi sweeps on the dense path)
  double residual = 0.0;
  bool dense = false;
};

// Smallest eigenpair of a sparse SPD matrix. Blocks at or below
// dense_threshold go to the dense Jacobi solver; larger blocks use inverse
// power iteration from the normalized all-ones vector, with Jacobi
// (diagonal) preconditioned conjugate-gradient inner solves.
inline EigenResult smallest_eigenpair(const Eigen::SparseMatrix<double>& m,
                                      const SolverConfig& cfg = {}) {
  const int d = static_cast<int>(m.rows());
  if (d == 0) throw InternalError("smallest_eigenpair: empty matrix");

  EigenResult out;
  if (d <= cfg.dense_threshold) {
    auto sys = jacobi_eigensystem(Eigen::MatrixXd(m));
    out.mu = sys.eigenvalues(0);
    out.vec = sys.eigenvectors.col(0);
    out.iterations = sys.sweeps;
    out.residual = (m * out.vec - out.mu * out.vec).norm();
    out.dense = true;
    if (!(out.mu > 0.0))
      throw InternalError("pinned Laplacian block not positive definite");
    return out;
  }

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                           Eigen::Lower | Eigen::Upper>
      cg;
  cg.setTolerance(kCgTolerance);
  cg.setMaxIterations(cfg.max_inner);
  cg.compute(m);
  if (cg.info() != Eigen::Success)
    throw InternalError("conjugate-gradient setup failed");

  Eigen::VectorXd x = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(double(d)));
  Eigen::VectorXd mx = m * x;
  double rho = x.dot(mx);
  double res = (mx - rho * x).norm();

  for (int outer = 1; outer <= cfg.max_outer; ++outer) {
    Eigen::VectorXd y = cg.solveWithGuess(x, x);
    if (cg.info() == Eigen::NumericalIssue || cg.info() == Eigen::InvalidInput)
      throw InternalError("conjugate-gradient breakdown (matrix not SPD?)");
    if (cg.info() == Eigen::NoConvergence)
      throw ConvergenceError("inner linear solve hit its iteration cap",
                             cg.error());
    const double yn = y.norm();
    if (!(yn > 0.0) || !std::isfinite(yn))
      throw InternalError("inverse iteration produced a degenerate vector");
    x = y / yn;
    mx = m * x;
    const double rho_new = x.dot(mx);
    res = (mx - rho_new * x).norm();
    const bool eig_ok = std::abs(rho_new - rho) <= cfg.eig_tol * std::abs(rho_new);
    rho = rho_new;
    if (eig_ok && res <= cfg.residual_tol) {
      if (!(rho > 0.0))
        throw InternalError("pinned Laplacian block not positive definite");
      out.mu = rho;
      out.vec = std::move(x);
      out.iterations = outer;
      out.residual = res;
      return out;
    }
  }
  throw ConvergenceError("inverse iteration hit max_outer without converging",
                         res);
}

// ---------------------------------------------------------------------------
// Quadratic forms

template <class Matrix>
double rayleigh_quotient(const Matrix& m, const Eigen::VectorXd& v) {
  const double nrm2 = v.squaredNorm();
  if (nrm2 == 0.0) throw ValidationError("rayleigh quotient of zero vector");
  return v.dot(m * v) / nrm2;
}

// <f, L f> computed edge-by-edge; the graph-side twin of the assembled
// matrix's quadratic form.
inline double dirichlet_energy(const Graph& g, std::span<const double> f) {
  if (f.size() != g.n())
    throw ValidationError("function length does not match vertex count");
  double e = 0.0;
  for (VertexId u = 0; u < g.n(); ++u) {
    for (VertexId w : g.neighbors(u)) {
      if (w > u) {
        const double d = f[u] - f[w];
        e += d * d;
      }
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Landscape

struct ComponentSolve {
  std::vector<VertexId> vertices;
  double mu = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool dense = false;
};

// The nonnegative ground state phi with phi(pinned) = 0, solved per
// component of G - pinned and normalized to unit length per component.
struct SpectralLandscape {
  VertexId pinned = 0;
  LaplacianKind kind = LaplacianKind::Combinatorial;
  std::vector<double> phi;
  ComponentLabeling component_of;  // labels on G - pinned; -1 at pinned
  std::vector<ComponentSolve> components;
  double min_certificate_margin = std::numeric_limits<double>::infinity();
};

// Per-vertex quantity greedy descent minimizes: phi(v) for the combinatorial
// and random-walk kinds, phi(v) / sqrt(deg v) for the symmetric-normalized
// kind. Zero exactly at the pinned vertex.
inline double descent_key(const Graph& g, const SpectralLandscape& ls,
                          VertexId v) {
  const double p = ls.phi[v];
  if (ls.kind == LaplacianKind::SymmetricNormalized)
    return p / std::sqrt(double(g.degree(v)));
  return p;
}

// min over v != pinned of deg(v)*key(v) - sum of key over v's neighbors.
// Positive margin certifies that every non-pinned vertex has a strictly
// smaller neighbor, hence that greedy descent cannot get stuck.
inline double descent_certificate_margin(const Graph& g,
                                         const SpectralLandscape& ls) {
  double worst = std::numeric_limits<double>::infinity();
  for (VertexId v = 0; v < g.n(); ++v) {
    if (v == ls.pinned) continue;
    double nbr_sum = 0.0;
    for (VertexId w : g.neighbors(v)) nbr_sum += descent_key(g, ls, w);
    const double margin = double(g.degree(v)) * descent_key(g, ls, v) - nbr_sum;
    worst = std::min(worst, margin);
  }
  return worst;
}

inline SpectralLandscape compute_landscape(const Graph& g, VertexId pinned,
                                           LaplacianKind kind,
                                           const SolverConfig& cfg = {}) {
  auto sys = assemble_pinned_laplacian(g, pinned, kind);

  SpectralLandscape ls;
  ls.pinned = pinned;
  ls.kind = kind;
  ls.phi.assign(g.n(), 0.0);
  ls.component_of.component_of.assign(g.n(), -1);
  ls.component_of.count = static_cast<int>(sys.components.size());
  for (std::size_t c = 0; c < sys.components.size(); ++c)
    for (VertexId v : sys.components[c].vertices)
      ls.component_of.component_of[v] = static_cast<int>(c);

  for (auto& comp : sys.components) {
    auto eig = smallest_eigenpair(comp.matrix, cfg);

    // Flip so the entry of largest magnitude is positive, then require every
    // entry strictly positive; anything else signals solver failure.
    int imax = 0;
    for (int k = 1; k < eig.vec.size(); ++k)
      if (std::abs(eig.vec(k)) > std::abs(eig.vec(imax))) imax = k;
    if (eig.vec(imax) < 0.0) eig.vec = -eig.vec;
    if (!(eig.vec.minCoeff() > 0.0))
      throw LandscapeError(
          "ground state not strictly positive at pinned vertex " +
          std::to_string(pinned) + " (solver failure or degenerate input)");

    if (kind == LaplacianKind::RandomWalk) {
      for (int k = 0; k < eig.vec.size(); ++k)
        eig.vec(k) /= std::sqrt(double(g.degree(comp.vertices[k])));
      eig.vec.normalize();
    }

    for (int k = 0; k < eig.vec.size(); ++k)
      ls.phi[comp.vertices[k]] = eig.vec(k);
    ls.components.push_back({comp.vertices, eig.mu, eig.residual,
                             eig.iterations, eig.dense});
  }
  ls.phi[pinned] = 0.0;

  ls.min_certificate_margin = descent_certificate_margin(g, ls);
  if (g.n() > 1 && !(ls.min_certificate_margin > kCertificateMargin))
    throw LandscapeError("descent certificate violated at pinned vertex " +
                         std::to_string(pinned) + ": margin " +
                         format_double(ls.min_certificate_margin));
  return ls;
}

}  // namespace specpath
