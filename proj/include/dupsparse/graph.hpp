#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dupsparse {

using VertexId = int;
using EdgeId = int;

struct DisconnectedPair : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroVolume : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooManyEdges : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double w = 1.0;
};

inline bool edge_pair_less(const Edge& a, const Edge& b) {
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

// Simple weighted undirected graph. Edges are stored with u < v and sorted
// lexicographically, so an edge id (index into edges()) is canonical for a
// given edge set and file writers are bit-reproducible.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("Graph: negative vertex count");
    for (Edge& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u == e.v) throw std::invalid_argument("Graph: self-loop");
      if (e.u < 0 || e.v >= n_) throw std::invalid_argument("Graph: vertex id out of range");
      if (!(e.w > 0.0)) throw std::invalid_argument("Graph: non-positive edge weight");
    }
    std::sort(edges_.begin(), edges_.end(), edge_pair_less);
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
        throw std::invalid_argument("Graph: duplicate edge");
    }
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    Edge probe{u, v, 1.0};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, edge_pair_less);
    if (it != edges_.end() && it->u == u && it->v == v)
      return static_cast<EdgeId>(it - edges_.begin());
    return std::nullopt;
  }

  double max_weight() const {
    double w = 1.0;
    for (const Edge& e : edges_) w = std::max(w, e.w);
    return w;
  }

  double total_weight() const {
    double t = 0.0;
    for (const Edge& e : edges_) t += e.w;
    return t;
  }

  // Weights are assumed polynomial in n; the bit accounting relies on it.
  void check_weight_bound(double exponent = 4.0) const {
    double cap = std::pow(static_cast<double>(std::max(n_, 2)), exponent);
    for (const Edge& e : edges_)
      if (e.w > cap)
        throw std::invalid_argument("Graph: edge weight exceeds n^" + std::to_string(exponent));
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// (neighbor, edge id) lists; built once per algorithm that walks the graph.
struct Adjacency {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> nbr;

  explicit Adjacency(const Graph& g) : nbr(static_cast<std::size_t>(g.n())) {
    for (EdgeId id = 0; id < g.m(); ++id) {
      const Edge& e = g.edge(id);
      nbr[static_cast<std::size_t>(e.u)].push_back({e.v, id});
      nbr[static_cast<std::size_t>(e.v)].push_back({e.u, id});
    }
  }
};

// Vertex subset with bitset semantics over [0, n).
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int n) : bits_(static_cast<std::size_t>(n), false) {}

  static NodeSet of(int n, std::initializer_list<VertexId> vs) {
    NodeSet s(n);
    for (VertexId v : vs) s.set(v);
    return s;
  }

  static NodeSet full(int n) {
    NodeSet s(n);
    std::fill(s.bits_.begin(), s.bits_.end(), true);
    return s;
  }

  // Low n bits of mask select members; used by exhaustive subset sweeps.
  static NodeSet from_mask(int n, std::uint64_t mask) {
    NodeSet s(n);
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) s.set(v);
    return s;
  }

  int size() const { return static_cast<int>(bits_.size()); }
  bool test(VertexId v) const { return bits_[static_cast<std::size_t>(v)]; }
  void set(VertexId v, bool on = true) { bits_[static_cast<std::size_t>(v)] = on; }

  int count() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), true)); }

 private:
  std::vector<bool> bits_;
};

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

// Sum of weighted degrees of S; volume(V) equals twice the total edge weight.
inline double volume(const Graph& g, const NodeSet& s) {
  double vol = 0.0;
  for (const Edge& e : g.edges()) {
    if (s.test(e.u)) vol += e.w;
    if (s.test(e.v)) vol += e.w;
  }
  return vol;
}

// Cut weight leaving S divided by vol(S). Throws ZeroVolume when vol(S)=0.
inline double conductance(const Graph& g, const NodeSet& s) {
  double vol = 0.0, cut = 0.0;
  for (const Edge& e : g.edges()) {
    bool iu = s.test(e.u), iv = s.test(e.v);
    if (iu) vol += e.w;
    if (iv) vol += e.w;
    if (iu != iv) cut += e.w;
  }
  if (vol <= 0.0) throw ZeroVolume("conductance: set has zero volume");
  return cut / vol;
}

// Dijkstra shortest-path distances from src; infinity marks unreachable.
inline std::vector<double> dijkstra(const Graph& g, VertexId src) {
  Adjacency adj(g);
  std::vector<double> dist(static_cast<std::size_t>(g.n()), kInfiniteDistance);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(src)] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (auto [v, id] : adj.nbr[static_cast<std::size_t>(u)]) {
      double nd = d + g.edge(id).w;
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

inline double weighted_distance(const Graph& g, VertexId u, VertexId v) {
  return dijkstra(g, u)[static_cast<std::size_t>(v)];
}

// All-pairs shortest paths, one Dijkstra per source. Dense desk scale only.
inline std::vector<std::vector<double>> all_pairs_distances(const Graph& g) {
  std::vector<std::vector<double>> d;
  d.reserve(static_cast<std::size_t>(g.n()));
  for (VertexId v = 0; v < g.n(); ++v) d.push_back(dijkstra(g, v));
  return d;
}

namespace detail {

// Bidirectional breadth-first search over an adjacency structure, cut off at
// `limit` hops. Visit stamps keep repeated queries allocation-free.
class BoundedHopSearch {
 public:
  explicit BoundedHopSearch(int n)
      : mark_a_(static_cast<std::size_t>(n), 0),
        mark_b_(static_cast<std::size_t>(n), 0),
        dist_a_(static_cast<std::size_t>(n), 0),
        dist_b_(static_cast<std::size_t>(n), 0) {}

  // Hop distance between u and v if <= limit, otherwise nullopt.
  std::optional<int> query(const std::vector<std::vector<VertexId>>& adj, VertexId u, VertexId v,
                           int limit) {
    if (limit < 0) return std::nullopt;
    if (u == v) return 0;
    ++stamp_;
    int depth_u = limit / 2;
    int depth_v = limit - depth_u;
    grow(adj, u, depth_u, mark_a_, dist_a_, frontier_a_);
    grow(adj, v, depth_v, mark_b_, dist_b_, frontier_b_);
    int best = limit + 1;
    for (VertexId x : frontier_a_) {
      if (mark_b_[static_cast<std::size_t>(x)] == stamp_)
        best = std::min(best, dist_a_[static_cast<std::size_t>(x)] + dist_b_[static_cast<std::size_t>(x)]);
    }
    if (best <= limit) return best;
    return std::nullopt;
  }

 private:
  void grow(const std::vector<std::vector<VertexId>>& adj, VertexId src, int depth,
            std::vector<std::uint32_t>& mark, std::vector<int>& dist, std::vector<VertexId>& order) {
    order.clear();
    order.push_back(src);
    mark[static_cast<std::size_t>(src)] = stamp_;
    dist[static_cast<std::size_t>(src)] = 0;
    std::size_t head = 0;
    while (head < order.size()) {
      VertexId x = order[head++];
      int dx = dist[static_cast<std::size_t>(x)];
      if (dx == depth) continue;
      for (VertexId y : adj[static_cast<std::size_t>(x)]) {
        if (mark[static_cast<std::size_t>(y)] != stamp_) {
          mark[static_cast<std::size_t>(y)] = stamp_;
          dist[static_cast<std::size_t>(y)] = dx + 1;
          order.push_back(y);
        }
      }
    }
  }

  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> mark_a_, mark_b_;
  std::vector<int> dist_a_, dist_b_;
  std::vector<VertexId> frontier_a_, frontier_b_;
};

}  // namespace detail

// Unweighted hop distance if <= limit, else nullopt.
inline std::optional<int> hop_distance_bounded(const Graph& g, VertexId u, VertexId v, int limit) {
  std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(g.n()));
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  detail::BoundedHopSearch search(g.n());
  return search.query(adj, u, v, limit);
}

// Length of the shortest cycle in edges; nullopt for forests.
inline std::optional<int> girth(const Graph& g) {
  Adjacency adj(g);
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(g.n()));
  std::vector<EdgeId> via(static_cast<std::size_t>(g.n()));
  for (VertexId root = 0; root < g.n(); ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<VertexId> q;
    dist[static_cast<std::size_t>(root)] = 0;
    via[static_cast<std::size_t>(root)] = -1;
    q.push(root);
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      if (2 * dist[static_cast<std::size_t>(x)] >= best) continue;
      for (auto [y, id] : adj.nbr[static_cast<std::size_t>(x)]) {
        if (id == via[static_cast<std::size_t>(x)]) continue;
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          via[static_cast<std::size_t>(y)] = id;
          q.push(y);
        } else {
          // Non-tree edge closes a cycle through the BFS root's tree.
          best = std::min(best, dist[static_cast<std::size_t>(x)] + dist[static_cast<std::size_t>(y)] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

// Connected-component label per vertex, labels densely numbered from 0 in
// order of the smallest vertex in each component.
inline std::vector<int> component_labels(const Graph& g) {
  Adjacency adj(g);
  std::vector<int> label(static_cast<std::size_t>(g.n()), -1);
  int next = 0;
  for (VertexId root = 0; root < g.n(); ++root) {
    if (label[static_cast<std::size_t>(root)] >= 0) continue;
    label[static_cast<std::size_t>(root)] = next;
    std::queue<VertexId> q;
    q.push(root);
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      for (auto [y, id] : adj.nbr[static_cast<std::size_t>(x)]) {
        (void)id;
        if (label[static_cast<std::size_t>(y)] < 0) {
          label[static_cast<std::size_t>(y)] = label[static_cast<std::size_t>(x)];
          q.push(y);
        }
      }
    }
    ++next;
  }
  return label;
}

inline bool same_component(const Graph& g, VertexId u, VertexId v) {
  auto labels = component_labels(g);
  return labels[static_cast<std::size_t>(u)] == labels[static_cast<std::size_t>(v)];
}

// Union of two graphs on the same vertex set. Edges present in both must
// carry identical weights (the callers' dedup-by-construction contract).
inline Graph union_graphs(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) throw std::invalid_argument("union_graphs: vertex count mismatch");
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) {
    if (auto id = a.find_edge(e.u, e.v)) {
      if (a.edge(*id).w != e.w)
        throw std::invalid_argument("union_graphs: conflicting weights for duplicate edge");
    } else {
      edges.push_back(e);
    }
  }
  return Graph(a.n(), std::move(edges));
}

}  // namespace dupsparse
