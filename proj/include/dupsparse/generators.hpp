#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dupsparse/graph.hpp"
#include "dupsparse/partition.hpp"
#include "dupsparse/rng.hpp"

namespace dupsparse {

// Unit-weight stochastic block model together with its ground-truth
// partition. Deterministic per seed.
inline std::pair<Graph, Partition> gen_sbm(const std::vector<int>& block_sizes, double p_in,
                                           double p_out, std::uint64_t seed) {
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
    throw std::invalid_argument("gen_sbm: probability out of [0,1]");
  int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  Partition truth;
  truth.k = static_cast<int>(block_sizes.size());
  truth.assignment.reserve(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (int i = 0; i < block_sizes[b]; ++i) truth.assignment.push_back(static_cast<int>(b));

  Rng rng(derive_seed(seed, stream::kGenerator));
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      double p = truth.assignment[static_cast<std::size_t>(u)] ==
                         truth.assignment[static_cast<std::size_t>(v)]
                     ? p_in
                     : p_out;
      if (rng.next_unit() < p) edges.push_back({u, v, 1.0});
    }
  }
  return {Graph(n, std::move(edges)), std::move(truth)};
}

// m distinct edges sampled uniformly among all vertex pairs, with integer
// weights uniform in [1, w_max]. Deterministic per seed.
inline Graph gen_weighted_random(int n, long m, long w_max, std::uint64_t seed) {
  long pairs = static_cast<long>(n) * (n - 1) / 2;
  if (m > pairs) throw TooManyEdges("gen_weighted_random: m exceeds C(n,2)");
  if (w_max < 1) throw std::invalid_argument("gen_weighted_random: w_max < 1");

  Rng rng(derive_seed(seed, stream::kGenerator));
  // Partial Fisher-Yates over the flattened pair index space.
  std::vector<long> pool(static_cast<std::size_t>(pairs));
  std::iota(pool.begin(), pool.end(), 0L);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(pairs - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    long idx = pool[static_cast<std::size_t>(i)];
    // Invert idx -> (u, v) with u < v over the row-major upper triangle.
    VertexId u = 0;
    long row = static_cast<long>(n) - 1;
    while (idx >= row) {
      idx -= row;
      --row;
      ++u;
    }
    VertexId v = u + 1 + static_cast<VertexId>(idx);
    double w = static_cast<double>(rng.next_int(1, w_max));
    edges.push_back({u, v, w});
  }
  return Graph(n, std::move(edges));
}

}  // namespace dupsparse
