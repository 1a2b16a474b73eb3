#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dupsparse/comm.hpp"
#include "dupsparse/graph.hpp"
#include "dupsparse/rng.hpp"

namespace dupsparse {

struct SpannerOptions {
  // Message-passing sites normally retransmit the whole current spanner on
  // every turn; with this flag they forward only edges added in the turn.
  bool mp_delta_only = false;
};

// Hop threshold for the cycle test: adding an edge is rejected when its
// endpoints are already within this many hops of each other, i.e. when the
// edge would close a cycle of at most ceil(2k) edges. k may be fractional.
inline int spanner_hop_limit(double k) {
  return static_cast<int>(std::ceil(2.0 * k)) - 1;
}

// Number of weight buckets [2^{i-1}, 2^i) covering [1, n * w_max].
inline int weight_bucket_count(int n, double w_max) {
  return std::max(1, static_cast<int>(std::ceil(std::log2(std::max(2.0, n * w_max)))));
}

inline int weight_bucket(double w) {
  return static_cast<int>(std::floor(std::log2(w))) + 1;  // w >= 1
}

// Greedy distributed spanner. Sites take turns in ascending index order,
// per weight bucket; within a turn a site offers its bucket edges in
// canonical order and keeps each edge that does not close a short cycle in
// the spanner built so far. Duplicated edges are harmless: a copy of an
// edge already in H closes a 2-edge cycle and is skipped.
//
// Output invariants: girth(H) > ceil(2k); weighted stretch at most
// 2*(ceil(2k)-1) <= 4*ceil(k)-2; for unit weights at most 2*ceil(k)-1.
// The output depends only on the input and site order, not on the model;
// the meter records model-specific cost (message passing relays the whole
// current H through the coordinator each turn, the blackboard receives only
// newly added edges plus a one-bit end-of-turn marker per site per bucket).
inline Graph spanner_dup(const DistributedGraph& dg, double k, Model model, CostMeter& meter,
                         const SpannerOptions& opts = {}) {
  if (!(k > 1.0)) throw std::invalid_argument("spanner_dup: need k > 1");
  const Graph& g = dg.base;
  const int n = g.n();
  const int s = dg.sites;
  const int hop_limit = spanner_hop_limit(k);
  const int buckets = weight_bucket_count(n, g.max_weight());

  for (const Edge& e : g.edges())
    if (e.w < 1.0) throw std::invalid_argument("spanner_dup: weights must be >= 1");

  std::vector<std::vector<std::vector<EdgeId>>> site_bucket(
      static_cast<std::size_t>(s),
      std::vector<std::vector<EdgeId>>(static_cast<std::size_t>(buckets)));
  for (int site = 0; site < s; ++site)
    for (EdgeId id : dg.site_edges[static_cast<std::size_t>(site)]) {
      int b = weight_bucket(g.edge(id).w) - 1;
      site_bucket[static_cast<std::size_t>(site)][static_cast<std::size_t>(b)].push_back(id);
    }

  std::vector<std::vector<VertexId>> h_adj(static_cast<std::size_t>(n));
  detail::BoundedHopSearch search(n);
  std::vector<char> in_h(static_cast<std::size_t>(g.m()), 0);
  std::vector<Edge> h_edges;

  for (int b = 0; b < buckets; ++b) {
    meter.add_round();
    for (int site = 0; site < s; ++site) {
      std::uint64_t added = 0;
      for (EdgeId id : site_bucket[static_cast<std::size_t>(site)][static_cast<std::size_t>(b)]) {
        if (in_h[static_cast<std::size_t>(id)]) continue;
        const Edge& e = g.edge(id);
        if (!search.query(h_adj, e.u, e.v, hop_limit)) {
          in_h[static_cast<std::size_t>(id)] = 1;
          h_edges.push_back(e);
          h_adj[static_cast<std::size_t>(e.u)].push_back(e.v);
          h_adj[static_cast<std::size_t>(e.v)].push_back(e.u);
          ++added;
        }
      }
      if (model == Model::MessagePassing) {
        bool final_turn = b == buckets - 1 && site == s - 1;
        if (final_turn) {
          // In delta mode the coordinator has already seen every relayed
          // addition, so the upload only needs this turn's edges; with a
          // single site nothing was ever relayed and the whole spanner goes.
          std::uint64_t payload =
              opts.mp_delta_only && s > 1 ? added : h_edges.size();
          meter.charge(ChargeKind::EdgeToCoordinator, payload, site);
        } else if (s > 1) {
          std::uint64_t payload = opts.mp_delta_only ? added : h_edges.size();
          meter.charge(ChargeKind::EdgeRelayed, payload, site);
        }
      } else {
        if (added > 0) meter.charge(ChargeKind::EdgeToBlackboard, added, site);
        meter.charge(ChargeKind::Marker, 1, site);
      }
    }
  }
  return Graph(n, std::move(h_edges));
}

// Breadth-first search tree of root's component, grown level by level on the
// blackboard. In every round each site in order publishes its edges that
// attach a new vertex to the frontier; the edge linking each vertex to the
// tree is transmitted exactly once, and a site that contributes nothing in a
// round writes a one-bit marker instead.
inline Graph bfs_blackboard(const DistributedGraph& dg, VertexId root, CostMeter& meter) {
  const Graph& g = dg.base;
  const int n = g.n();
  if (root < 0 || root >= n) throw std::invalid_argument("bfs_blackboard: root out of range");

  std::vector<char> completed(static_cast<std::size_t>(n), 0);
  std::vector<char> active(static_cast<std::size_t>(n), 0);
  std::vector<char> discovered(static_cast<std::size_t>(n), 0);
  active[static_cast<std::size_t>(root)] = 1;
  discovered[static_cast<std::size_t>(root)] = 1;

  std::vector<Edge> tree;
  bool frontier_nonempty = true;
  while (frontier_nonempty) {
    meter.add_round();
    std::vector<VertexId> next;
    for (int site = 0; site < dg.sites; ++site) {
      std::uint64_t sent = 0;
      for (EdgeId id : dg.site_edges[static_cast<std::size_t>(site)]) {
        const Edge& e = g.edge(id);
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          if (active[static_cast<std::size_t>(a)] && !discovered[static_cast<std::size_t>(b)]) {
            discovered[static_cast<std::size_t>(b)] = 1;
            next.push_back(b);
            tree.push_back(e);
            meter.charge(ChargeKind::EdgeToBlackboard, 1, site);
            ++sent;
          }
        }
      }
      if (sent == 0) meter.charge(ChargeKind::Marker, 1, site);
    }
    for (VertexId v = 0; v < n; ++v)
      if (active[static_cast<std::size_t>(v)]) {
        completed[static_cast<std::size_t>(v)] = 1;
        active[static_cast<std::size_t>(v)] = 0;
      }
    for (VertexId v : next) active[static_cast<std::size_t>(v)] = 1;
    frontier_nonempty = !next.empty();
  }
  return Graph(n, std::move(tree));
}

struct Plus2Result {
  Graph spanner;
  std::vector<EdgeId> phase1_edges;  // ids into the input base graph
  std::vector<VertexId> sample;      // as drawn, with replacement
  std::vector<VertexId> roots;       // distinct roots, in draw order
};

// Additive +2 spanner for unit-weight graphs on the blackboard. Phase 1
// publishes, per site and vertex in order, a vertex's still-unpublished
// local edges whenever the blackboard count plus the new local count stays
// within sqrt(n+s); otherwise the site writes a marker. Phase 2 samples
// ceil(n / sqrt(n+s) * ln(n/delta)) vertices with replacement and grows a
// blackboard BFS tree from each distinct root. With probability at least
// 1 - delta every pair's distance exceeds the original by at most 2.
inline Plus2Result plus2_spanner_detailed(const DistributedGraph& dg, double delta,
                                          CostMeter& meter, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("plus2_spanner: delta must be in (0,1)");
  const Graph& g = dg.base;
  const int n = g.n();
  const int s = dg.sites;
  const double threshold = std::sqrt(static_cast<double>(n) + s);

  std::vector<std::vector<std::vector<EdgeId>>> site_incident(
      static_cast<std::size_t>(s), std::vector<std::vector<EdgeId>>(static_cast<std::size_t>(n)));
  for (int site = 0; site < s; ++site)
    for (EdgeId id : dg.site_edges[static_cast<std::size_t>(site)]) {
      const Edge& e = g.edge(id);
      site_incident[static_cast<std::size_t>(site)][static_cast<std::size_t>(e.u)].push_back(id);
      site_incident[static_cast<std::size_t>(site)][static_cast<std::size_t>(e.v)].push_back(id);
    }

  Plus2Result result;
  std::vector<char> on_blackboard(static_cast<std::size_t>(g.m()), 0);
  std::vector<int> blackboard_degree(static_cast<std::size_t>(n), 0);
  meter.add_round();
  for (int site = 0; site < s; ++site) {
    for (VertexId u = 0; u < n; ++u) {
      std::vector<EdgeId> fresh;
      for (EdgeId id : site_incident[static_cast<std::size_t>(site)][static_cast<std::size_t>(u)])
        if (!on_blackboard[static_cast<std::size_t>(id)]) fresh.push_back(id);
      bool fits = blackboard_degree[static_cast<std::size_t>(u)] + static_cast<int>(fresh.size()) <=
                  threshold;
      if (fits && !fresh.empty()) {
        for (EdgeId id : fresh) {
          on_blackboard[static_cast<std::size_t>(id)] = 1;
          const Edge& e = g.edge(id);
          ++blackboard_degree[static_cast<std::size_t>(e.u)];
          ++blackboard_degree[static_cast<std::size_t>(e.v)];
          result.phase1_edges.push_back(id);
        }
        meter.charge(ChargeKind::EdgeToBlackboard, fresh.size(), site);
      } else {
        meter.charge(ChargeKind::Marker, 1, site);
      }
    }
  }

  std::size_t sample_count = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / threshold * std::log(n / delta)));
  Rng rng(derive_seed(seed, stream::kVertexSample));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < sample_count; ++i) {
    VertexId v = static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(n)));
    result.sample.push_back(v);
    if (!seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      result.roots.push_back(v);
    }
  }

  std::vector<char> in_h = on_blackboard;
  for (VertexId root : result.roots) {
    Graph tree = bfs_blackboard(dg, root, meter);
    for (const Edge& e : tree.edges()) in_h[static_cast<std::size_t>(*g.find_edge(e.u, e.v))] = 1;
  }
  std::vector<Edge> edges;
  for (EdgeId id = 0; id < g.m(); ++id)
    if (in_h[static_cast<std::size_t>(id)]) edges.push_back(g.edge(id));
  result.spanner = Graph(n, std::move(edges));
  return result;
}

inline Graph plus2_spanner(const DistributedGraph& dg, double delta, CostMeter& meter,
                           std::uint64_t seed) {
  return plus2_spanner_detailed(dg, delta, meter, seed).spanner;
}

struct BundleSpanner {
  std::vector<Graph> levels;  // pairwise edge-disjoint
  Graph bundle_union;
};

// Drops the given edges (by base edge id) from a distributed graph,
// re-canonicalizing edge ids and remapping every site list.
inline DistributedGraph remove_edges(const DistributedGraph& dg, const std::vector<char>& drop) {
  DistributedGraph out;
  out.sites = dg.sites;
  out.non_duplication = dg.non_duplication;
  std::vector<Edge> kept;
  std::vector<EdgeId> new_id(static_cast<std::size_t>(dg.base.m()), -1);
  for (EdgeId id = 0; id < dg.base.m(); ++id) {
    if (!drop[static_cast<std::size_t>(id)]) {
      new_id[static_cast<std::size_t>(id)] = static_cast<EdgeId>(kept.size());
      kept.push_back(dg.base.edge(id));
      out.residence.push_back(dg.residence[static_cast<std::size_t>(id)]);
    }
  }
  out.base = Graph(dg.base.n(), std::move(kept));
  out.site_edges.resize(static_cast<std::size_t>(dg.sites));
  for (int site = 0; site < dg.sites; ++site)
    for (EdgeId id : dg.site_edges[static_cast<std::size_t>(site)])
      if (new_id[static_cast<std::size_t>(id)] >= 0)
        out.site_edges[static_cast<std::size_t>(site)].push_back(new_id[static_cast<std::size_t>(id)]);
  return out;
}

// t iteratively peeled spanners: level i is a spanner of the residual after
// removing levels 1..i-1 from every site's edge set. Returns the bundle and
// the final residual distributed graph. Every non-bundle edge ends up with t
// edge-disjoint short paths between its endpoints inside the bundle.
inline std::pair<BundleSpanner, DistributedGraph> t_bundle(const DistributedGraph& dg, int t,
                                                           double k, Model model,
                                                           CostMeter& meter) {
  if (t < 1) throw std::invalid_argument("t_bundle: need t >= 1");
  BundleSpanner bundle;
  std::vector<Edge> union_edges;
  DistributedGraph residual = dg;
  for (int i = 0; i < t; ++i) {
    Graph level = spanner_dup(residual, k, model, meter);
    for (const Edge& e : level.edges()) union_edges.push_back(e);
    if (level.m() > 0) {
      std::vector<char> drop(static_cast<std::size_t>(residual.base.m()), 0);
      for (const Edge& e : level.edges())
        drop[static_cast<std::size_t>(*residual.base.find_edge(e.u, e.v))] = 1;
      residual = remove_edges(residual, drop);
    }
    bundle.levels.push_back(std::move(level));
  }
  bundle.bundle_union = Graph(dg.base.n(), std::move(union_edges));
  return {std::move(bundle), std::move(residual)};
}

// Maps base vertices to their ceil(sqrt(s)) clones and back.
struct SplitMapping {
  int base_n = 0;
  int clone_factor = 1;

  int clone_count() const { return base_n * clone_factor; }
  VertexId clone_of(VertexId v, int idx) const { return v * clone_factor + idx; }
  VertexId backward(VertexId clone) const { return clone / clone_factor; }

  std::vector<VertexId> forward(VertexId v) const {
    std::vector<VertexId> clones(static_cast<std::size_t>(clone_factor));
    for (int q = 0; q < clone_factor; ++q) clones[static_cast<std::size_t>(q)] = clone_of(v, q);
    return clones;
  }
};

// Removes duplication by replacing each vertex with ceil(sqrt(s)) clones and
// assigning the copies of an edge, in ascending site order, to distinct
// clone pairs. The output has no edge shared between sites.
inline std::pair<DistributedGraph, SplitMapping> split_duplication(const DistributedGraph& dg) {
  SplitMapping mapping;
  mapping.base_n = dg.base.n();
  mapping.clone_factor =
      static_cast<int>(std::ceil(std::sqrt(static_cast<double>(dg.sites))));
  const int c = mapping.clone_factor;

  auto hold = dg.holders();
  std::vector<Edge> clone_edges;
  std::vector<std::pair<Edge, int>> copies;  // (clone edge, owning site)
  for (EdgeId id = 0; id < dg.base.m(); ++id) {
    const Edge& e = dg.base.edge(id);
    const auto& sites = hold[static_cast<std::size_t>(id)];
    for (std::size_t rank = 0; rank < sites.size(); ++rank) {
      Edge clone{mapping.clone_of(e.u, static_cast<int>(rank) / c),
                 mapping.clone_of(e.v, static_cast<int>(rank) % c), e.w};
      clone_edges.push_back(clone);
      copies.push_back({clone, sites[rank]});
    }
  }

  DistributedGraph out;
  out.base = Graph(mapping.clone_count(), std::move(clone_edges));
  out.sites = dg.sites;
  out.non_duplication = true;
  out.residence.assign(static_cast<std::size_t>(out.base.m()), 1.0);
  out.site_edges.assign(static_cast<std::size_t>(dg.sites), {});
  for (const auto& [clone, site] : copies)
    out.site_edges[static_cast<std::size_t>(site)].push_back(*out.base.find_edge(clone.u, clone.v));
  for (auto& list : out.site_edges) std::sort(list.begin(), list.end());
  return {std::move(out), mapping};
}

// Collapses a spanner of the split graph back onto the base graph: an edge
// (u,v) joins the output when the split spanner keeps any edge between the
// clone groups of u and v. A (2k-1)-spanner of the split graph projects to a
// (2k-1)-spanner of the base graph.
inline Graph project_spanner(const Graph& h_split, const SplitMapping& mapping,
                             const Graph& base) {
  std::vector<char> included(static_cast<std::size_t>(base.m()), 0);
  for (const Edge& e : h_split.edges()) {
    VertexId u = mapping.backward(e.u);
    VertexId v = mapping.backward(e.v);
    if (u == v) throw std::invalid_argument("project_spanner: edge inside one clone group");
    auto id = base.find_edge(u, v);
    if (!id) throw std::invalid_argument("project_spanner: projected edge missing from base");
    included[static_cast<std::size_t>(*id)] = 1;
  }
  std::vector<Edge> edges;
  for (EdgeId id = 0; id < base.m(); ++id)
    if (included[static_cast<std::size_t>(id)]) edges.push_back(base.edge(id));
  return Graph(base.n(), std::move(edges));
}

}  // namespace dupsparse
