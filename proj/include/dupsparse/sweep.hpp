#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dupsparse/cluster.hpp"
#include "dupsparse/comm.hpp"
#include "dupsparse/generators.hpp"
#include "dupsparse/io.hpp"
#include "dupsparse/spanner.hpp"
#include "dupsparse/sparsifier.hpp"

namespace dupsparse {

// Worker-pool size: DUPSPARSE_THREADS caps it when set.
inline unsigned worker_count(std::size_t jobs) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DUPSPARSE_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(jobs, 1)));
}

// Runs fn(0..jobs-1) on the pool. Results must be written to pre-sized
// per-index slots so output order never depends on scheduling.
inline void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  unsigned workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= jobs) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

// One experiment grid: cells are the cartesian product of n_values,
// s_values, models and repetitions, in that order.
struct ExperimentConfig {
  std::string algorithm = "spanner";  // spanner | bfs | sparsify | cluster
  // graph source: a file, or a generator spec
  std::string graph_file;
  std::string gen_kind = "random";  // random | sbm
  std::vector<int> n_values = {64};
  double edge_factor = 4.0;  // random: m = min(C(n,2), edge_factor * n)
  long w_max = 1;
  int sbm_blocks = 2;
  double sbm_p_in = 0.5;
  double sbm_p_out = 0.05;
  // distribution
  std::vector<int> s_values = {2};
  std::string policy = "uniform";  // partition | uniform | overlap
  double r = 1.0;
  int d = 1;
  // algorithm parameters
  std::vector<std::string> models = {"mp"};
  double k = 2.0;
  double eps = 0.5;
  double sparsify_rho = 4.0;
  double t_scale = 1.0;
  double delta = 0.1;
  int cluster_k = 2;
  VertexId bfs_root = 0;
  std::uint64_t seed = 1;
  int repetitions = 1;
};

inline void apply_json(ExperimentConfig& cfg, const nlohmann::json& j) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("algorithm", cfg.algorithm);
  get("graph_file", cfg.graph_file);
  get("gen_kind", cfg.gen_kind);
  get("n_values", cfg.n_values);
  get("edge_factor", cfg.edge_factor);
  get("w_max", cfg.w_max);
  get("sbm_blocks", cfg.sbm_blocks);
  get("sbm_p_in", cfg.sbm_p_in);
  get("sbm_p_out", cfg.sbm_p_out);
  get("s_values", cfg.s_values);
  get("policy", cfg.policy);
  get("r", cfg.r);
  get("d", cfg.d);
  get("models", cfg.models);
  get("k", cfg.k);
  get("eps", cfg.eps);
  get("sparsify_rho", cfg.sparsify_rho);
  get("t_scale", cfg.t_scale);
  get("delta", cfg.delta);
  get("cluster_k", cfg.cluster_k);
  get("bfs_root", cfg.bfs_root);
  get("seed", cfg.seed);
  get("repetitions", cfg.repetitions);
}

inline DistributeSpec distribute_spec_of(const ExperimentConfig& cfg) {
  if (cfg.policy == "partition") return DistributeSpec::partition();
  if (cfg.policy == "uniform") return DistributeSpec::uniform_iid(cfg.r);
  if (cfg.policy == "overlap") return DistributeSpec::adversarial(cfg.d);
  throw std::invalid_argument("unknown distribution policy: " + cfg.policy);
}

inline Model model_of(const std::string& name) {
  if (name == "mp") return Model::MessagePassing;
  if (name == "bb") return Model::Blackboard;
  throw std::invalid_argument("unknown model: " + name);
}

inline Graph sweep_graph(const ExperimentConfig& cfg, int n, std::uint64_t cell_seed) {
  if (!cfg.graph_file.empty()) return read_edge_list(cfg.graph_file);
  if (cfg.gen_kind == "random") {
    long pairs = static_cast<long>(n) * (n - 1) / 2;
    long m = std::min(pairs, static_cast<long>(cfg.edge_factor * n));
    return gen_weighted_random(n, m, cfg.w_max, cell_seed);
  }
  if (cfg.gen_kind == "sbm") {
    std::vector<int> sizes(static_cast<std::size_t>(cfg.sbm_blocks), n / cfg.sbm_blocks);
    sizes[0] += n % cfg.sbm_blocks;
    return gen_sbm(sizes, cfg.sbm_p_in, cfg.sbm_p_out, cell_seed).first;
  }
  throw std::invalid_argument("unknown generator kind: " + cfg.gen_kind);
}

// One CSV row per (n, s, model, repetition) cell, in deterministic cell
// order regardless of worker scheduling.
inline std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg) {
  struct Cell {
    int n;
    int s;
    Model model;
    std::string model_str;
    int rep;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  std::uint64_t cell_index = 0;
  for (int n : cfg.n_values)
    for (int s : cfg.s_values)
      for (const std::string& ms : cfg.models)
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
          cells.push_back({n, s, model_of(ms), ms, rep, derive_seed(cfg.seed, cell_index)});
          ++cell_index;
        }

  std::vector<RunRecord> records(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    Graph g = sweep_graph(cfg, cell.n, cell.seed);
    DistributedGraph dg = distribute(g, cell.s, distribute_spec_of(cfg), cell.seed);
    CostMeter meter = make_meter(dg, cell.model);
    if (cfg.algorithm == "spanner") {
      spanner_dup(dg, cfg.k, cell.model, meter);
    } else if (cfg.algorithm == "bfs") {
      bfs_blackboard(dg, cfg.bfs_root, meter);
    } else if (cfg.algorithm == "sparsify") {
      spectral_sparsify(dg, cfg.eps, cfg.sparsify_rho, cell.model, meter, cell.seed,
                        {cfg.t_scale});
    } else if (cfg.algorithm == "cluster") {
      distributed_cluster(dg, cfg.cluster_k, cfg.eps, cfg.sparsify_rho, cell.model, meter,
                          cell.seed, nullptr, {cfg.t_scale});
    } else {
      throw std::invalid_argument("unknown sweep algorithm: " + cfg.algorithm);
    }
    records[i] = make_record(cfg.algorithm, dg, meter, cell.seed);
  });
  return records;
}

// Least-squares slope of log2(y) against log2(x); the scaling-fit helper
// for communication-cost sweeps.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need matching samples, at least two");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log2(x[i]);
    double ly = std::log2(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double nn = static_cast<double>(x.size());
  return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace dupsparse
