#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "dupsparse/comm.hpp"
#include "dupsparse/graph.hpp"
#include "dupsparse/partition.hpp"
#include "dupsparse/rng.hpp"
#include "dupsparse/sparsifier.hpp"
#include "dupsparse/spectral.hpp"

namespace dupsparse {

struct KMeansResult {
  std::vector<int> assignment;
  double objective = 0.0;
  std::vector<double> objective_history;  // one entry per Lloyd iteration
};

namespace detail {

inline double sq_dist(const Eigen::MatrixXd& pts, Eigen::Index a, const Eigen::RowVectorXd& c) {
  return (pts.row(a) - c).squaredNorm();
}

}  // namespace detail

// Lloyd's algorithm with k-means++ seeding. Ties in assignment go to the
// lowest center index; an emptied cluster is re-seeded with the point
// farthest from its current center. Deterministic per seed.
inline KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                           int max_iterations = 100) {
  const Eigen::Index n = points.rows();
  if (k < 1 || static_cast<Eigen::Index>(k) > n)
    throw std::invalid_argument("kmeans: k out of range");
  Rng rng(seed);

  Eigen::MatrixXd centers(k, points.cols());
  centers.row(0) = points.row(static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n))));
  std::vector<double> d2(static_cast<std::size_t>(n), 0.0);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::max();
      for (int j = 0; j < c; ++j) best = std::min(best, detail::sq_dist(points, i, centers.row(j)));
      d2[static_cast<std::size_t>(i)] = best;
      total += best;
    }
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double target = rng.next_unit() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[static_cast<std::size_t>(i)];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = points.row(pick);
  }

  KMeansResult result;
  result.assignment.assign(static_cast<std::size_t>(n), 0);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best_c = 0;
      double best = detail::sq_dist(points, i, centers.row(0));
      for (int c = 1; c < k; ++c) {
        double d = detail::sq_dist(points, i, centers.row(c));
        if (d < best) {
          best = d;
          best_c = c;
        }
      }
      if (result.assignment[static_cast<std::size_t>(i)] != best_c) {
        result.assignment[static_cast<std::size_t>(i)] = best_c;
        changed = true;
      }
      objective += best;
    }
    result.objective_history.push_back(objective);
    result.objective = objective;
    if (!changed && iter > 0) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(result.assignment[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(result.assignment[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      } else {
        Eigen::Index far = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          double d = detail::sq_dist(points, i,
                                     centers.row(result.assignment[static_cast<std::size_t>(i)]));
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers.row(c) = points.row(far);
        result.assignment[static_cast<std::size_t>(far)] = c;
      }
    }
  }
  return result;
}

inline KMeansResult kmeans_best_of(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                                   int restarts = 10, int max_iterations = 100) {
  KMeansResult best;
  best.objective = std::numeric_limits<double>::max();
  for (int r = 0; r < restarts; ++r) {
    KMeansResult run = kmeans(
        points, k, derive_seed(seed, stream::kKmeansRestart, static_cast<std::uint64_t>(r)),
        max_iterations);
    if (run.objective < best.objective) best = std::move(run);
  }
  return best;
}

// Spectral clustering: bottom-k eigenvectors of the normalized Laplacian,
// rows l2-normalized (zero rows of isolated vertices left at the origin),
// then k-means++ with 10 restarts. Isolated vertices are split off into the
// trailing cluster ids rather than fed to k-means.
inline Partition spectral_clustering(const Graph& g, int k, std::uint64_t seed) {
  const int n = g.n();
  if (k < 1 || k > n) throw std::invalid_argument("spectral_clustering: k out of range");

  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  for (const Edge& e : g.edges()) {
    degree[static_cast<std::size_t>(e.u)] += e.w;
    degree[static_cast<std::size_t>(e.v)] += e.w;
  }
  std::vector<VertexId> connected, isolated;
  for (VertexId v = 0; v < n; ++v)
    (degree[static_cast<std::size_t>(v)] > 0.0 ? connected : isolated).push_back(v);

  Partition part;
  part.k = k;
  part.assignment.assign(static_cast<std::size_t>(n), 0);

  // Reserve one trailing cluster id per isolated vertex while keeping at
  // least one id for the connected part (when it exists).
  int max_reserved = connected.empty() ? k : k - 1;
  int reserved = std::min(static_cast<int>(isolated.size()), max_reserved);
  int k_eff = k - reserved;
  for (std::size_t i = 0; i < isolated.size(); ++i) {
    int id = reserved > 0 ? k_eff + std::min(static_cast<int>(i), reserved - 1)
                          : k_eff - 1;  // k = 1 and isolated vertices present
    part.assignment[static_cast<std::size_t>(isolated[i])] = id;
  }
  if (connected.empty() || k_eff == 0) return part;

  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(normalized_laplacian(g));
  Eigen::MatrixXd embed(static_cast<Eigen::Index>(connected.size()), k_eff);
  for (std::size_t i = 0; i < connected.size(); ++i)
    embed.row(static_cast<Eigen::Index>(i)) =
        solver.eigenvectors().row(connected[i]).leftCols(k_eff);
  for (Eigen::Index i = 0; i < embed.rows(); ++i) {
    double norm = embed.row(i).norm();
    if (norm > 0.0) embed.row(i) /= norm;
  }

  KMeansResult km = k_eff > 1 ? kmeans_best_of(embed, k_eff, seed)
                              : KMeansResult{std::vector<int>(connected.size(), 0), 0.0, {}};
  for (std::size_t i = 0; i < connected.size(); ++i)
    part.assignment[static_cast<std::size_t>(connected[i])] = km.assignment[i];
  return part;
}

struct ClusterQuality {
  double max_conductance = 0.0;  // upper estimate of rho(k), from the found partition
  double lambda_k1 = 0.0;        // (k+1)-smallest eigenvalue of the normalized Laplacian
  double upsilon = 0.0;          // lambda_k1 / max_conductance
  std::vector<double> sym_diff_vols;
  double misclassified_vol_frac = 0.0;
};

namespace detail {

// Total volume of the symmetric differences under a fixed label map
// sigma: truth cluster i is compared against found cluster sigma[i].
inline double matching_cost(const std::vector<std::vector<double>>& cross_vol,
                            const std::vector<double>& found_vol,
                            const std::vector<double>& truth_vol, const std::vector<int>& sigma) {
  double cost = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    double inter = cross_vol[i][static_cast<std::size_t>(sigma[i])];
    cost += found_vol[static_cast<std::size_t>(sigma[i])] + truth_vol[i] - 2.0 * inter;
  }
  return cost;
}

}  // namespace detail

// Scores a found partition against ground truth: labels are matched to
// minimize the total symmetric-difference volume (exhaustively for k <= 8,
// greedily by descending intersection volume beyond), then per-cluster
// vol(A_i delta P_i) and the misclassified volume fraction are reported,
// along with lambda_{k+1} and the found partition's worst conductance.
inline ClusterQuality match_and_score(const Partition& found, const Partition& truth,
                                      const Graph& g) {
  if (found.n() != truth.n() || found.n() != g.n())
    throw ShapeMismatch("match_and_score: vertex count mismatch");
  if (found.k != truth.k) throw ShapeMismatch("match_and_score: cluster count mismatch");
  const int k = found.k;
  const int n = g.n();

  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  for (const Edge& e : g.edges()) {
    degree[static_cast<std::size_t>(e.u)] += e.w;
    degree[static_cast<std::size_t>(e.v)] += e.w;
  }
  std::vector<double> found_vol(static_cast<std::size_t>(k), 0.0);
  std::vector<double> truth_vol(static_cast<std::size_t>(k), 0.0);
  std::vector<std::vector<double>> cross_vol(static_cast<std::size_t>(k),
                                             std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (VertexId v = 0; v < n; ++v) {
    int a = found.assignment[static_cast<std::size_t>(v)];
    int p = truth.assignment[static_cast<std::size_t>(v)];
    found_vol[static_cast<std::size_t>(a)] += degree[static_cast<std::size_t>(v)];
    truth_vol[static_cast<std::size_t>(p)] += degree[static_cast<std::size_t>(v)];
    cross_vol[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)] +=
        degree[static_cast<std::size_t>(v)];
  }

  std::vector<int> best_sigma(static_cast<std::size_t>(k));
  std::iota(best_sigma.begin(), best_sigma.end(), 0);
  if (k <= 8) {
    std::vector<int> sigma = best_sigma;
    double best_cost = detail::matching_cost(cross_vol, found_vol, truth_vol, sigma);
    while (std::next_permutation(sigma.begin(), sigma.end())) {
      double cost = detail::matching_cost(cross_vol, found_vol, truth_vol, sigma);
      if (cost < best_cost) {
        best_cost = cost;
        best_sigma = sigma;
      }
    }
  } else {
    // Greedy: repeatedly take the (truth, found) pair with the largest
    // intersection volume among unmatched labels.
    std::vector<char> truth_used(static_cast<std::size_t>(k), 0), found_used(static_cast<std::size_t>(k), 0);
    for (int step = 0; step < k; ++step) {
      double best = -1.0;
      int bi = -1, bj = -1;
      for (int i = 0; i < k; ++i) {
        if (truth_used[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < k; ++j) {
          if (found_used[static_cast<std::size_t>(j)]) continue;
          if (cross_vol[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > best) {
            best = cross_vol[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            bi = i;
            bj = j;
          }
        }
      }
      truth_used[static_cast<std::size_t>(bi)] = 1;
      found_used[static_cast<std::size_t>(bj)] = 1;
      best_sigma[static_cast<std::size_t>(bi)] = bj;
    }
  }

  ClusterQuality quality;
  quality.sym_diff_vols.resize(static_cast<std::size_t>(k));
  double total_truth_vol = 0.0, total_sym = 0.0;
  for (int i = 0; i < k; ++i) {
    double inter = cross_vol[static_cast<std::size_t>(i)][static_cast<std::size_t>(best_sigma[static_cast<std::size_t>(i)])];
    double sym = found_vol[static_cast<std::size_t>(best_sigma[static_cast<std::size_t>(i)])] +
                 truth_vol[static_cast<std::size_t>(i)] - 2.0 * inter;
    quality.sym_diff_vols[static_cast<std::size_t>(i)] = sym;
    total_sym += sym;
    total_truth_vol += truth_vol[static_cast<std::size_t>(i)];
  }
  quality.misclassified_vol_frac = total_truth_vol > 0.0 ? total_sym / total_truth_vol : 0.0;

  for (int c = 0; c < k; ++c) {
    NodeSet s(n);
    bool nonempty = false;
    for (VertexId v = 0; v < n; ++v)
      if (found.assignment[static_cast<std::size_t>(v)] == c) {
        s.set(v);
        nonempty = true;
      }
    if (!nonempty) continue;
    double vol = volume(g, s);
    if (vol > 0.0) quality.max_conductance = std::max(quality.max_conductance, conductance(g, s));
  }
  Eigen::VectorXd spectrum = normalized_spectrum(g);
  quality.lambda_k1 =
      k < n ? spectrum(k) : std::numeric_limits<double>::quiet_NaN();
  quality.upsilon = quality.max_conductance > 0.0 ? quality.lambda_k1 / quality.max_conductance
                                                  : std::numeric_limits<double>::infinity();
  return quality;
}

struct DistributedClusterResult {
  Partition partition;
  ClusterQuality quality;   // scored against truth when provided
  bool scored = false;
  Graph sparsifier;
};

// End-to-end pipeline: sparsify the distributed graph at the coordinator,
// then cluster the sparsifier. Only sparsification touches the meter; the
// final clustering step is local to the coordinator.
inline DistributedClusterResult distributed_cluster(const DistributedGraph& dg, int k, double eps,
                                                    double rho, Model model, CostMeter& meter,
                                                    std::uint64_t seed,
                                                    const Partition* truth = nullptr,
                                                    const LightSsOptions& opts = {}) {
  DistributedClusterResult result;
  result.sparsifier = spectral_sparsify(dg, eps, rho, model, meter, seed, opts);
  result.partition = spectral_clustering(result.sparsifier, k, seed);
  if (truth != nullptr) {
    result.quality = match_and_score(result.partition, *truth, dg.base);
    result.scored = true;
  }
  return result;
}

}  // namespace dupsparse
