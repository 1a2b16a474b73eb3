#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dupsparse/comm.hpp"
#include "dupsparse/graph.hpp"
#include "dupsparse/rng.hpp"
#include "dupsparse/spanner.hpp"

namespace dupsparse {

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every non-bundle edge is kept with this marginal probability, and kept
// edges are re-weighted by 1/kSampleTarget to preserve expectation.
inline constexpr double kSampleTarget = 0.25;

// Per-site sampling probability p_e with 1 - (1 - p_e * r_e)^s = target.
// Throws Infeasible when the edge is too rare for the target (p_e > 1).
inline double solve_site_prob(double r_e, int s, double target) {
  if (!(r_e > 0.0 && r_e <= 1.0)) throw std::invalid_argument("solve_site_prob: r_e out of (0,1]");
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("solve_site_prob: target out of (0,1)");
  if (s < 1) throw std::invalid_argument("solve_site_prob: need s >= 1");
  double p = (1.0 - std::pow(1.0 - target, 1.0 / s)) / r_e;
  if (p > 1.0 + 1e-12)
    throw Infeasible("solve_site_prob: required per-site probability exceeds 1");
  return std::min(p, 1.0);
}

// Sampling probability for an edge that is known to be present somewhere.
// The raw target is scaled by the presence probability 1 - (1 - r_e)^s, so
// the keep rate conditioned on presence is exactly `target` on every pass.
// Solving against the unconditioned target instead degenerates after the
// first pass: with r_e already equal to one pass's per-site keep
// probability, p_e comes out as 1 and nothing is ever dropped again.
inline double conditional_site_prob(double r_e, int s, double target) {
  double present = 1.0 - std::pow(1.0 - r_e, s);
  return solve_site_prob(r_e, s, target * present);
}

// Residual re-weighted edge set threaded across sparsification passes.
// dg.residence carries the updated r'_e for every surviving edge.
struct SparsifierState {
  DistributedGraph dg;
  bool at_coordinator = false;
};

struct LightSsOptions {
  // Scales the bundle size t = ceil(24 log^2 n / eps^2). At the faithful 1.0
  // the bundle swallows desk-scale graphs whole; experiments that need the
  // sampling path shrink it and report the measured approximation instead.
  double t_scale = 1.0;
};

inline int bundle_size(int n, double eps, double t_scale) {
  double log_n = std::log2(std::max(2, n));
  double raw = 24.0 * log_n * log_n / (eps * eps);
  return std::max(1, static_cast<int>(std::ceil(raw * t_scale)));
}

// One sparsification pass: peel a t-bundle spanner, then let each site keep
// every remaining local edge with probability p_e chosen so the edge
// survives anywhere with conditional probability 1/4, regardless of how
// many sites hold copies. Surviving copies all take weight 4 W(e) and
// r'_e = p_e * r_e, so they stay exact duplicates and the expected
// Laplacian is preserved pass by pass. Sampled edges remain site-local and
// cost no bits except in the last pass, when each site ships its survivors
// to the coordinator.
inline SparsifierState light_ss(const SparsifierState& state, double eps, Model model,
                                CostMeter& meter, std::uint64_t seed, bool is_last,
                                const LightSsOptions& opts = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("light_ss: eps out of (0,1)");
  const DistributedGraph& dg = state.dg;
  const int n = dg.base.n();
  const int s = dg.sites;
  const int t = bundle_size(n, eps, opts.t_scale);
  const double k = (2.0 + std::log2(std::max(2, n))) / 4.0;

  auto [bundle, residual] = t_bundle(dg, t, k, model, meter);

  struct Kept {
    Edge e;
    double r;
    std::vector<int> sites;
  };
  std::vector<Kept> kept;
  kept.reserve(static_cast<std::size_t>(dg.base.m()));

  auto dg_holders = dg.holders();
  std::vector<char> in_bundle(static_cast<std::size_t>(dg.base.m()), 0);
  for (const Edge& e : bundle.bundle_union.edges())
    in_bundle[static_cast<std::size_t>(*dg.base.find_edge(e.u, e.v))] = 1;
  for (EdgeId id = 0; id < dg.base.m(); ++id)
    if (in_bundle[static_cast<std::size_t>(id)])
      kept.push_back({dg.base.edge(id), dg.residence[static_cast<std::size_t>(id)],
                      dg_holders[static_cast<std::size_t>(id)]});

  meter.add_round();
  auto res_holders = residual.holders();
  std::vector<std::uint64_t> shipped(static_cast<std::size_t>(s), 0);
  for (EdgeId rid = 0; rid < residual.base.m(); ++rid) {
    const Edge& e = residual.base.edge(rid);
    double r_e = residual.residence[static_cast<std::size_t>(rid)];
    double p_e = dg.non_duplication ? kSampleTarget : conditional_site_prob(r_e, s, kSampleTarget);
    const auto& hs = res_holders[static_cast<std::size_t>(rid)];
    std::vector<int> sampled_at;
    for (std::size_t rank = 0; rank < hs.size(); ++rank) {
      // Keyed by (edge, holder rank): copies at different sites draw
      // independently, while the draw itself does not depend on how the
      // edge set happens to be spread over sites.
      if (keyed_unit(seed, stream::kSiteSample, static_cast<std::uint64_t>(e.u),
                     static_cast<std::uint64_t>(e.v), rank) < p_e)
        sampled_at.push_back(hs[rank]);
    }
    if (sampled_at.empty()) continue;
    kept.push_back({{e.u, e.v, 4.0 * e.w}, p_e * r_e, sampled_at});
    if (is_last) {
      if (model == Model::MessagePassing) {
        for (int site : sampled_at) ++shipped[static_cast<std::size_t>(site)];
      } else {
        // The blackboard makes earlier writes visible, so only the first
        // sampling site publishes the edge.
        ++shipped[static_cast<std::size_t>(sampled_at.front())];
      }
    }
  }
  if (is_last) {
    ChargeKind kind = model == Model::MessagePassing ? ChargeKind::EdgeToCoordinator
                                                     : ChargeKind::EdgeToBlackboard;
    for (int site = 0; site < s; ++site)
      if (shipped[static_cast<std::size_t>(site)] > 0)
        meter.charge(kind, shipped[static_cast<std::size_t>(site)], site);
  }

  SparsifierState out;
  out.at_coordinator = is_last;
  out.dg.sites = s;
  out.dg.non_duplication = dg.non_duplication;
  std::vector<Edge> edges;
  edges.reserve(kept.size());
  for (const Kept& kp : kept) edges.push_back(kp.e);
  out.dg.base = Graph(n, std::move(edges));
  out.dg.residence.assign(static_cast<std::size_t>(out.dg.base.m()), 1.0);
  out.dg.site_edges.assign(static_cast<std::size_t>(s), {});
  for (const Kept& kp : kept) {
    EdgeId id = *out.dg.base.find_edge(kp.e.u, kp.e.v);
    out.dg.residence[static_cast<std::size_t>(id)] = kp.r;
    for (int site : kp.sites) out.dg.site_edges[static_cast<std::size_t>(site)].push_back(id);
  }
  for (auto& list : out.dg.site_edges) std::sort(list.begin(), list.end());
  return out;
}

// ceil(log2 rho) passes of light_ss with per-pass accuracy eps/ceil(log2 rho);
// only the final pass ships sampled edges. Returns the full final state.
inline SparsifierState spectral_sparsify_state(const DistributedGraph& dg, double eps, double rho,
                                               Model model, CostMeter& meter, std::uint64_t seed,
                                               const LightSsOptions& opts = {}) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("spectral_sparsify: eps out of (0,1)");
  if (!(rho > 1.0)) throw std::invalid_argument("spectral_sparsify: rho must exceed 1");
  int iterations = static_cast<int>(std::ceil(std::log2(rho)));
  double eps_i = eps / iterations;
  SparsifierState state{dg, false};
  for (int i = 0; i < iterations; ++i) {
    state = light_ss(state, eps_i, model, meter,
                     derive_seed(seed, stream::kSparsifyIteration, static_cast<std::uint64_t>(i)),
                     i == iterations - 1, opts);
  }
  return state;
}

// The coordinator's sparsifier: union of the final pass's bundle and sampled
// edges, already deduplicated because surviving copies are bit-identical.
inline Graph spectral_sparsify(const DistributedGraph& dg, double eps, double rho, Model model,
                               CostMeter& meter, std::uint64_t seed,
                               const LightSsOptions& opts = {}) {
  return spectral_sparsify_state(dg, eps, rho, model, meter, seed, opts).dg.base;
}

}  // namespace dupsparse
