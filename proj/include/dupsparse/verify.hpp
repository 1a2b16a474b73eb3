#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dupsparse/graph.hpp"
#include "dupsparse/rng.hpp"
#include "dupsparse/spanner.hpp"
#include "dupsparse/spectral.hpp"

namespace dupsparse {

struct ComponentMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAPath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectralReport {
  double eps_star = 0.0;   // max(1 - lambda_min, lambda_max - 1)
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  bool pass = false;
};

// Checks (1-eps) x^T L_g x <= x^T L_h x <= (1+eps) x^T L_g x for all x by
// reducing to the eigenvalues of L_g^{+/2} L_h L_g^{+/2} restricted to the
// complement of the shared nullspace. Requires h to be a re-weighted
// subgraph of g with identical connected components (a sparsifier cannot
// disconnect anything).
inline SpectralReport check_spectral_sparsifier(const Graph& g, const Graph& h, double eps) {
  if (g.n() != h.n())
    throw std::invalid_argument("check_spectral_sparsifier: vertex count mismatch");
  for (const Edge& e : h.edges())
    if (!g.find_edge(e.u, e.v))
      throw std::invalid_argument("check_spectral_sparsifier: h has an edge outside g");
  if (component_labels(g) != component_labels(h))
    throw ComponentMismatch("check_spectral_sparsifier: components differ");

  Eigen::SelfAdjointEigenSolver<DenseMatrix> gsolver(laplacian(g));
  const Eigen::VectorXd& vals = gsolver.eigenvalues();
  double lambda_top = vals.size() > 0 ? vals(vals.size() - 1) : 0.0;
  double cut = kEigenZeroTol * lambda_top;
  std::vector<Eigen::Index> live;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals(i) > cut) live.push_back(i);

  SpectralReport report;
  if (live.empty()) {  // both graphs empty: identical quadratic forms
    report.pass = true;
    return report;
  }
  DenseMatrix basis(g.n(), static_cast<Eigen::Index>(live.size()));
  for (std::size_t j = 0; j < live.size(); ++j)
    basis.col(static_cast<Eigen::Index>(j)) =
        gsolver.eigenvectors().col(live[j]) / std::sqrt(vals(live[j]));
  DenseMatrix pencil = basis.transpose() * laplacian(h) * basis;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> psolver(pencil);
  report.lambda_min = psolver.eigenvalues().minCoeff();
  report.lambda_max = psolver.eigenvalues().maxCoeff();
  report.eps_star = std::max(1.0 - report.lambda_min, report.lambda_max - 1.0);
  report.pass = report.eps_star <= eps + 1e-12;
  return report;
}

struct StretchReport {
  double max_violation = -kInfiniteDistance;  // max over pairs of d_H - (mult*d_G + add)
  double max_stretch = 0.0;                   // max over connected pairs of d_H / d_G
  VertexId worst_u = -1;
  VertexId worst_v = -1;
  bool pass = true;
};

// APSP on both graphs; pairs disconnected in g are skipped (h, a subgraph,
// is then disconnected there too). Pass means no pair violates
// d_H <= mult * d_G + add beyond numerical tolerance.
inline StretchReport check_stretch(const Graph& g, const Graph& h, double mult, double add = 0.0) {
  if (g.n() != h.n()) throw std::invalid_argument("check_stretch: vertex count mismatch");
  for (const Edge& e : h.edges())
    if (!g.find_edge(e.u, e.v))
      throw std::invalid_argument("check_stretch: h has an edge outside g");
  StretchReport report;
  double tol = 0.0;
  for (VertexId u = 0; u < g.n(); ++u) {
    std::vector<double> dg = dijkstra(g, u);
    std::vector<double> dh = dijkstra(h, u);
    for (VertexId v = u + 1; v < g.n(); ++v) {
      double a = dg[static_cast<std::size_t>(v)];
      if (a == kInfiniteDistance) continue;
      double b = dh[static_cast<std::size_t>(v)];
      double violation = b - (mult * a + add);
      if (violation > report.max_violation) {
        report.max_violation = violation;
        report.worst_u = u;
        report.worst_v = v;
      }
      if (b != kInfiniteDistance && a > 0.0)
        report.max_stretch = std::max(report.max_stretch, b / a);
      tol = std::max(tol, 1e-9 * (1.0 + mult * a + std::abs(add)));
    }
  }
  report.pass = report.max_violation <= tol;
  return report;
}

struct ResistanceReport {
  double max_ratio = 0.0;  // R(e) * t * W(e) / log2(n), max over residual edges
  int checked = 0;
  int violations = 0;
  bool pass = true;
};

// After a t-bundle peel, every residual (non-bundle) edge must satisfy
// R(e) <= log2(n) / (t * W(e)), with R measured in the graph holding both
// the bundle and the residual. Bundle edges are not checked.
inline ResistanceReport check_resistance_bound(const Graph& residual, const BundleSpanner& bundle,
                                               int t) {
  if (t < 1) throw std::invalid_argument("check_resistance_bound: need t >= 1");
  Graph context = union_graphs(bundle.bundle_union, residual);
  ResistanceReport report;
  if (residual.m() == 0) return report;
  DenseMatrix lpinv = pseudo_inverse(laplacian(context));
  double log_n = std::log2(std::max(2, context.n()));
  for (const Edge& e : residual.edges()) {
    double r = effective_resistance_from_pinv(lpinv, e.u, e.v);
    double bound = log_n / (t * e.w);
    double ratio = r / bound;
    report.max_ratio = std::max(report.max_ratio, ratio);
    ++report.checked;
    if (ratio > 1.0 + 1e-9) ++report.violations;
  }
  report.pass = report.violations == 0;
  return report;
}

struct ConductanceReport {
  int sets_checked = 0;
  int violations = 0;
  double min_ratio = kInfiniteDistance;  // min over sets of phi_H / phi_G
  double max_ratio = 0.0;
  bool pass = true;
};

namespace detail {

inline void conductance_check_one(const Graph& g, const Graph& h, const NodeSet& s,
                                  ConductanceReport& report) {
  double vol_g = 0.0, cut_g = 0.0, vol_h = 0.0, cut_h = 0.0;
  for (const Edge& e : g.edges()) {
    bool iu = s.test(e.u), iv = s.test(e.v);
    if (iu) vol_g += e.w;
    if (iv) vol_g += e.w;
    if (iu != iv) cut_g += e.w;
  }
  if (vol_g <= 0.0) return;
  for (const Edge& e : h.edges()) {
    bool iu = s.test(e.u), iv = s.test(e.v);
    if (iu) vol_h += e.w;
    if (iv) vol_h += e.w;
    if (iu != iv) cut_h += e.w;
  }
  if (vol_h <= 0.0) {
    ++report.sets_checked;
    ++report.violations;
    return;
  }
  double phi_g = cut_g / vol_g;
  double phi_h = cut_h / vol_h;
  ++report.sets_checked;
  if (phi_g > 0.0) {
    double ratio = phi_h / phi_g;
    report.min_ratio = std::min(report.min_ratio, ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (ratio < 0.5 - 1e-9 || ratio > 2.0 + 1e-9) ++report.violations;
  } else if (phi_h > 1e-12) {
    ++report.violations;  // cut appeared out of nothing
  }
}

}  // namespace detail

// Samples num_sets random node sets (sizes uniform in [1, n-1]) plus every
// singleton, and asserts 0.5 phi_G(S) <= phi_H(S) <= 2 phi_G(S) for each.
// Caller contract: h already passed check_spectral_sparsifier at eps <= 1/3.
// Exhaustive mode sweeps all 2^n subsets instead (n <= 16).
inline ConductanceReport check_conductance_preservation(const Graph& g, const Graph& h,
                                                        int num_sets, std::uint64_t seed,
                                                        bool exhaustive = false) {
  if (g.n() != h.n())
    throw std::invalid_argument("check_conductance_preservation: vertex count mismatch");
  ConductanceReport report;
  const int n = g.n();
  if (exhaustive) {
    if (n > 16)
      throw std::invalid_argument("check_conductance_preservation: exhaustive mode needs n <= 16");
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask)
      detail::conductance_check_one(g, h, NodeSet::from_mask(n, mask), report);
  } else {
    for (VertexId v = 0; v < n; ++v) {
      NodeSet s(n);
      s.set(v);
      detail::conductance_check_one(g, h, s, report);
    }
    Rng rng(derive_seed(seed, stream::kSetSample));
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    for (int i = 0; i < num_sets; ++i) {
      int size = static_cast<int>(rng.next_int(1, std::max(1, n - 1)));
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      NodeSet s(n);
      for (int j = 0; j < size; ++j) s.set(order[static_cast<std::size_t>(j)]);
      detail::conductance_check_one(g, h, s, report);
    }
  }
  report.pass = report.violations == 0;
  return report;
}

namespace detail {

inline bool chains_between(const Graph& g, const std::vector<EdgeId>& path, VertexId from,
                           VertexId to, double& inv_sum) {
  VertexId at = from;
  inv_sum = 0.0;
  for (EdgeId id : path) {
    if (id < 0 || id >= g.m()) throw NotAPath("path_stretch: edge id out of range");
    const Edge& step = g.edge(id);
    if (step.u == at)
      at = step.v;
    else if (step.v == at)
      at = step.u;
    else
      return false;
    inv_sum += 1.0 / step.w;
  }
  return at == to;
}

}  // namespace detail

// Stretch of edge e over a path given as edge ids: W(e) * sum(1/W(e')).
// The ids must chain from one endpoint of e to the other, in either
// direction.
inline double path_stretch(const Graph& g, const std::vector<EdgeId>& path, const Edge& e) {
  double inv_sum = 0.0;
  if (!detail::chains_between(g, path, e.u, e.v, inv_sum) &&
      !detail::chains_between(g, path, e.v, e.u, inv_sum))
    throw NotAPath("path_stretch: edges do not form a path between the endpoints");
  return e.w * inv_sum;
}

}  // namespace dupsparse
