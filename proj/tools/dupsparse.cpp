// Command-line harness: generate graphs, distribute them over sites, run the
// distributed algorithms with exact bit accounting, verify the outputs with
// the dense checkers, and sweep communication-cost scaling grids to CSV.
//
// Exit codes: 0 success (verify: pass), 1 verify failure, 2 bad input or
// violated precondition.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dupsparse/dupsparse.hpp"

namespace ds = dupsparse;

namespace {

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
  if (sizes.empty()) throw CLI::ValidationError("sizes", "expected comma-separated counts");
  return sizes;
}

bool is_distributed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ds::IoError("cannot read " + path);
  std::string line;
  std::getline(in, line);
  std::stringstream ss(line);
  std::string tok;
  int tokens = 0;
  while (ss >> tok) ++tokens;
  return tokens >= 3;
}

void write_meter_csv(const std::string& path, const std::string& algorithm,
                     const ds::DistributedGraph& dg, const ds::CostMeter& meter,
                     std::uint64_t seed) {
  std::vector<ds::RunRecord> rows{ds::make_record(algorithm, dg, meter, seed)};
  ds::write_text(path, ds::to_csv(rows));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed graph sparsification, spanners and clustering simulator"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a graph and write it as an edge list");
  std::string gen_kind, gen_out, gen_truth;
  std::vector<std::string> gen_params;
  std::uint64_t gen_seed = 1;
  gen->add_option("kind", gen_kind, "sbm | random")->required();
  gen->add_option("params", gen_params,
                  "sbm: <sizes-csv> <p_in> <p_out>; random: <n> <m> <w_max>")
      ->expected(3);
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--out", gen_out, "output edge-list path")->required();
  gen->add_option("--truth", gen_truth, "also write the ground-truth partition (sbm)");

  // --- distribute ---
  auto* dist = app.add_subcommand("distribute", "spread an edge list over sites");
  std::string dist_in, dist_out, dist_policy = "partition";
  int dist_sites = 2, dist_d = 1;
  double dist_r = 1.0;
  std::uint64_t dist_seed = 1;
  dist->add_option("graph", dist_in, "input edge list")->required();
  dist->add_option("--sites", dist_sites, "number of sites")->required();
  dist->add_option("--policy", dist_policy, "partition | uniform | overlap");
  dist->add_option("--r", dist_r, "per-site residence probability (uniform)");
  dist->add_option("--d", dist_d, "copies per edge (overlap)");
  dist->add_option("--seed", dist_seed, "placement seed");
  dist->add_option("-o,--out", dist_out, "output distributed-graph path")->required();

  // --- spanner ---
  auto* span = app.add_subcommand("spanner", "build a spanner over a distributed graph");
  std::string span_in, span_out, span_alg = "dup", span_model = "mp", span_meter,
              span_prefix, span_manifest;
  double span_k = 2.0, span_delta = 0.1;
  int span_t = 1;
  std::uint64_t span_seed = 1;
  span->add_option("graph", span_in, "input distributed graph")->required();
  span->add_option("--alg", span_alg, "dup | plus2 | tbundle");
  span->add_option("--k", span_k, "stretch parameter (dup, tbundle)");
  span->add_option("--delta", span_delta, "failure probability (plus2)");
  span->add_option("--t", span_t, "bundle levels (tbundle)");
  span->add_option("--model", span_model, "mp | bb (plus2 is blackboard-only)");
  span->add_option("--seed", span_seed, "sampling seed (plus2)");
  span->add_option("-o,--out", span_out, "output edge list (dup, plus2)");
  span->add_option("--out-prefix", span_prefix, "per-level output prefix (tbundle)");
  span->add_option("--manifest", span_manifest, "bundle manifest JSON (tbundle)");
  span->add_option("--meter", span_meter, "write cost CSV here");

  // --- bfs ---
  auto* bfs = app.add_subcommand("bfs", "grow a blackboard BFS tree");
  std::string bfs_in, bfs_out, bfs_meter;
  int bfs_root = 0;
  bfs->add_option("graph", bfs_in, "input distributed graph")->required();
  bfs->add_option("--root", bfs_root, "root vertex");
  bfs->add_option("-o,--out", bfs_out, "output edge list")->required();
  bfs->add_option("--meter", bfs_meter, "write cost CSV here");

  // --- sparsify ---
  auto* spars = app.add_subcommand("sparsify", "build a spectral sparsifier");
  std::string spars_in, spars_out, spars_model = "mp", spars_meter, spars_res, spars_manifest;
  double spars_eps = 0.5, spars_rho = 4.0, spars_tscale = 1.0;
  std::uint64_t spars_seed = 1;
  spars->add_option("graph", spars_in, "input distributed graph")->required();
  spars->add_option("--eps", spars_eps, "target accuracy in (0,1)");
  spars->add_option("--rho", spars_rho, "sparsification parameter (> 1)");
  spars->add_option("--t-scale", spars_tscale, "bundle-size scale factor");
  spars->add_option("--model", spars_model, "mp | bb");
  spars->add_option("--seed", spars_seed, "sampling seed");
  spars->add_option("-o,--out", spars_out, "output edge list")->required();
  spars->add_option("--residence", spars_res, "write updated residence sidecar here");
  spars->add_option("--manifest", spars_manifest, "write run manifest JSON here");
  spars->add_option("--meter", spars_meter, "write cost CSV here");

  // --- cluster ---
  auto* clus = app.add_subcommand("cluster", "spectral clustering, plain or distributed");
  std::string clus_in, clus_out, clus_model = "mp", clus_truth, clus_quality, clus_meter;
  int clus_k = 2;
  double clus_eps = 1.0 / 3.0, clus_rho = 4.0, clus_tscale = 1.0;
  std::uint64_t clus_seed = 1;
  clus->add_option("graph", clus_in, "edge list (centralized) or distributed graph")->required();
  clus->add_option("--k", clus_k, "number of clusters")->required();
  clus->add_option("--eps", clus_eps, "sparsifier accuracy (distributed input)");
  clus->add_option("--rho", clus_rho, "sparsification parameter (distributed input)");
  clus->add_option("--t-scale", clus_tscale, "bundle-size scale factor");
  clus->add_option("--model", clus_model, "mp | bb (distributed input)");
  clus->add_option("--seed", clus_seed, "clustering seed");
  clus->add_option("-o,--out", clus_out, "output partition path")->required();
  clus->add_option("--truth", clus_truth, "ground-truth partition to score against");
  clus->add_option("--quality", clus_quality, "write quality JSON here");
  clus->add_option("--meter", clus_meter, "write cost CSV here (distributed input)");

  // --- verify ---
  auto* ver = app.add_subcommand("verify", "dense checkers; exit 0 pass, 1 fail, 2 bad input");
  std::string ver_kind, ver_g, ver_h, ver_json, ver_manifest;
  double ver_eps = 0.1, ver_mult = 1.0, ver_add = 0.0;
  int ver_sets = 1000;
  bool ver_exhaustive = false;
  std::uint64_t ver_seed = 1;
  ver->add_option("kind", ver_kind, "spectral | stretch | conductance | resistance")->required();
  ver->add_option("graph", ver_g, "base graph edge list")->required();
  ver->add_option("other", ver_h, "candidate edge list (spectral, stretch, conductance)");
  ver->add_option("--eps", ver_eps, "allowed deviation (spectral)");
  ver->add_option("--mult", ver_mult, "multiplicative stretch bound");
  ver->add_option("--add", ver_add, "additive stretch bound");
  ver->add_option("--sets", ver_sets, "sampled node sets (conductance)");
  ver->add_flag("--exhaustive", ver_exhaustive, "sweep all subsets (conductance, n <= 16)");
  ver->add_option("--seed", ver_seed, "set-sampling seed");
  ver->add_option("--manifest", ver_manifest, "bundle manifest JSON (resistance)");
  ver->add_option("--json", ver_json, "write report JSON here");

  // --- sweep ---
  auto* sweep = app.add_subcommand("sweep", "run a config grid and emit cost CSV");
  std::string sweep_config, sweep_out;
  std::string sw_algorithm, sw_policy, sw_models, sw_s, sw_n;
  std::uint64_t sw_seed = 0;
  int sw_reps = 0;
  sweep->add_option("--config", sweep_config, "JSON config file");
  sweep->add_option("--algorithm", sw_algorithm, "override: spanner | bfs | sparsify | cluster");
  sweep->add_option("--policy", sw_policy, "override distribution policy");
  sweep->add_option("--models", sw_models, "override models, comma-separated");
  sweep->add_option("--s", sw_s, "override site counts, comma-separated");
  sweep->add_option("--n", sw_n, "override vertex counts, comma-separated");
  sweep->add_option("--seed", sw_seed, "override base seed");
  sweep->add_option("--reps", sw_reps, "override repetitions");
  sweep->add_option("-o,--out", sweep_out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (gen_kind == "sbm") {
        auto [g, truth] = ds::gen_sbm(parse_sizes(gen_params.at(0)), std::stod(gen_params.at(1)),
                                      std::stod(gen_params.at(2)), gen_seed);
        ds::write_edge_list(gen_out, g);
        if (!gen_truth.empty()) ds::write_partition(gen_truth, truth);
      } else if (gen_kind == "random") {
        ds::Graph g = ds::gen_weighted_random(std::stoi(gen_params.at(0)),
                                              std::stol(gen_params.at(1)),
                                              std::stol(gen_params.at(2)), gen_seed);
        ds::write_edge_list(gen_out, g);
        if (!gen_truth.empty()) throw CLI::ValidationError("--truth", "only sbm has ground truth");
      } else {
        throw CLI::ValidationError("kind", "expected sbm or random");
      }
      return 0;
    }

    if (*dist) {
      ds::Graph g = ds::read_edge_list(dist_in);
      ds::DistributeSpec spec;
      if (dist_policy == "partition")
        spec = ds::DistributeSpec::partition();
      else if (dist_policy == "uniform")
        spec = ds::DistributeSpec::uniform_iid(dist_r);
      else if (dist_policy == "overlap")
        spec = ds::DistributeSpec::adversarial(dist_d);
      else
        throw CLI::ValidationError("--policy", "expected partition, uniform or overlap");
      ds::write_distributed(dist_out, ds::distribute(g, dist_sites, spec, dist_seed));
      return 0;
    }

    if (*span) {
      ds::DistributedGraph dg = ds::read_distributed(span_in);
      ds::Model model = ds::model_of(span_model);
      ds::CostMeter meter = ds::make_meter(dg, model);
      if (span_alg == "dup") {
        ds::Graph h = ds::spanner_dup(dg, span_k, model, meter);
        if (!span_out.empty()) ds::write_edge_list(span_out, h);
        if (!span_meter.empty()) write_meter_csv(span_meter, "spanner", dg, meter, span_seed);
      } else if (span_alg == "plus2") {
        ds::CostMeter bb_meter = ds::make_meter(dg, ds::Model::Blackboard);
        ds::Graph h = ds::plus2_spanner(dg, span_delta, bb_meter, span_seed);
        if (!span_out.empty()) ds::write_edge_list(span_out, h);
        if (!span_meter.empty()) write_meter_csv(span_meter, "plus2", dg, bb_meter, span_seed);
      } else if (span_alg == "tbundle") {
        auto [bundle, residual] = ds::t_bundle(dg, span_t, span_k, model, meter);
        if (span_prefix.empty())
          throw CLI::ValidationError("--out-prefix", "tbundle needs a level output prefix");
        nlohmann::json manifest;
        manifest["t"] = span_t;
        manifest["k"] = span_k;
        manifest["levels"] = nlohmann::json::array();
        for (std::size_t i = 0; i < bundle.levels.size(); ++i) {
          std::string path = span_prefix + "level" + std::to_string(i) + ".el";
          ds::write_edge_list(path, bundle.levels[i]);
          manifest["levels"].push_back(path);
        }
        std::string residual_path = span_prefix + "residual.el";
        ds::write_edge_list(residual_path, residual.base);
        manifest["residual"] = residual_path;
        if (!span_manifest.empty()) ds::write_text(span_manifest, manifest.dump(2) + "\n");
        if (!span_meter.empty()) write_meter_csv(span_meter, "tbundle", dg, meter, span_seed);
      } else {
        throw CLI::ValidationError("--alg", "expected dup, plus2 or tbundle");
      }
      return 0;
    }

    if (*bfs) {
      ds::DistributedGraph dg = ds::read_distributed(bfs_in);
      ds::CostMeter meter = ds::make_meter(dg, ds::Model::Blackboard);
      ds::Graph tree = ds::bfs_blackboard(dg, bfs_root, meter);
      ds::write_edge_list(bfs_out, tree);
      if (!bfs_meter.empty()) write_meter_csv(bfs_meter, "bfs", dg, meter, 0);
      return 0;
    }

    if (*spars) {
      ds::DistributedGraph dg = ds::read_distributed(spars_in);
      ds::Model model = ds::model_of(spars_model);
      ds::CostMeter meter = ds::make_meter(dg, model);
      ds::SparsifierState out = ds::spectral_sparsify_state(dg, spars_eps, spars_rho, model,
                                                            meter, spars_seed, {spars_tscale});
      ds::write_edge_list(spars_out, out.dg.base);
      if (!spars_res.empty()) ds::write_residence(spars_res, out.dg);
      if (!spars_meter.empty()) write_meter_csv(spars_meter, "sparsify", dg, meter, spars_seed);
      if (!spars_manifest.empty()) {
        ds::SpectralReport rep = ds::check_spectral_sparsifier(dg.base, out.dg.base, spars_eps);
        nlohmann::json manifest{{"eps", spars_eps},
                                {"rho", spars_rho},
                                {"t_scale", spars_tscale},
                                {"seed", spars_seed},
                                {"model", spars_model},
                                {"eps_star", rep.eps_star},
                                {"bits_total", meter.bits_total()}};
        ds::write_text(spars_manifest, manifest.dump(2) + "\n");
      }
      return 0;
    }

    if (*clus) {
      std::uint64_t seed = clus_seed;
      ds::Partition part;
      ds::Graph scored_on;
      ds::CostMeter meter(ds::Model::MessagePassing, 1, 3);
      bool have_meter = false;
      if (is_distributed_file(clus_in)) {
        ds::DistributedGraph dg = ds::read_distributed(clus_in);
        ds::Model model = ds::model_of(clus_model);
        meter = ds::make_meter(dg, model);
        have_meter = true;
        auto result = ds::distributed_cluster(dg, clus_k, clus_eps, clus_rho, model, meter, seed,
                                              nullptr, {clus_tscale});
        part = result.partition;
        scored_on = dg.base;
      } else {
        ds::Graph g = ds::read_edge_list(clus_in);
        part = ds::spectral_clustering(g, clus_k, seed);
        scored_on = g;
      }
      ds::write_partition(clus_out, part);
      if (!clus_quality.empty()) {
        if (clus_truth.empty())
          throw CLI::ValidationError("--quality", "needs --truth to score against");
        ds::Partition truth = ds::read_partition(clus_truth);
        ds::ClusterQuality q = ds::match_and_score(part, truth, scored_on);
        ds::write_text(clus_quality, ds::to_json(q).dump(2) + "\n");
      }
      if (!clus_meter.empty() && have_meter) {
        std::vector<ds::RunRecord> rows{ds::RunRecord{}};
        rows[0].model = ds::model_name(meter.model());
        rows[0].algorithm = "cluster";
        rows[0].n = scored_on.n();
        rows[0].m = scored_on.m();
        rows[0].s = meter.sites();
        rows[0].seed = seed;
        rows[0].bits_total = meter.bits_total();
        rows[0].edge_messages = meter.edge_messages();
        rows[0].marker_messages = meter.marker_messages();
        rows[0].rounds = meter.rounds();
        ds::write_text(clus_meter, ds::to_csv(rows));
      }
      return 0;
    }

    if (*ver) {
      nlohmann::json report;
      bool pass = false;
      if (ver_kind == "spectral") {
        auto rep = ds::check_spectral_sparsifier(ds::read_edge_list(ver_g),
                                                 ds::read_edge_list(ver_h), ver_eps);
        report = ds::to_json(rep);
        pass = rep.pass;
      } else if (ver_kind == "stretch") {
        auto rep = ds::check_stretch(ds::read_edge_list(ver_g), ds::read_edge_list(ver_h),
                                     ver_mult, ver_add);
        report = ds::to_json(rep);
        pass = rep.pass;
      } else if (ver_kind == "conductance") {
        auto rep = ds::check_conductance_preservation(ds::read_edge_list(ver_g),
                                                      ds::read_edge_list(ver_h), ver_sets,
                                                      ver_seed, ver_exhaustive);
        report = ds::to_json(rep);
        pass = rep.pass;
      } else if (ver_kind == "resistance") {
        if (ver_manifest.empty())
          throw CLI::ValidationError("--manifest", "resistance check needs a bundle manifest");
        std::ifstream in(ver_manifest);
        if (!in) throw ds::IoError("cannot read " + ver_manifest);
        nlohmann::json manifest = nlohmann::json::parse(in);
        ds::BundleSpanner bundle;
        std::vector<ds::Edge> union_edges;
        for (const auto& level_path : manifest.at("levels")) {
          bundle.levels.push_back(ds::read_edge_list(level_path.get<std::string>()));
          for (const ds::Edge& e : bundle.levels.back().edges()) union_edges.push_back(e);
        }
        ds::Graph base = ds::read_edge_list(ver_g);
        bundle.bundle_union = ds::Graph(base.n(), union_edges);
        std::vector<ds::Edge> residual_edges;
        for (const ds::Edge& e : base.edges())
          if (!bundle.bundle_union.find_edge(e.u, e.v)) residual_edges.push_back(e);
        ds::Graph residual(base.n(), residual_edges);
        auto rep = ds::check_resistance_bound(residual, bundle, manifest.at("t").get<int>());
        report = ds::to_json(rep);
        pass = rep.pass;
      } else {
        throw CLI::ValidationError("kind",
                                   "expected spectral, stretch, conductance or resistance");
      }
      std::string text = report.dump(2) + "\n";
      std::cout << text;
      if (!ver_json.empty()) ds::write_text(ver_json, text);
      return pass ? 0 : 1;
    }

    if (*sweep) {
      ds::ExperimentConfig cfg;
      if (!sweep_config.empty()) {
        std::ifstream in(sweep_config);
        if (!in) throw ds::IoError("cannot read " + sweep_config);
        ds::apply_json(cfg, nlohmann::json::parse(in));
      }
      auto parse_int_list = [](const std::string& csv) {
        std::vector<int> out;
        for (int v : parse_sizes(csv)) out.push_back(v);
        return out;
      };
      if (!sw_algorithm.empty()) cfg.algorithm = sw_algorithm;
      if (!sw_policy.empty()) cfg.policy = sw_policy;
      if (!sw_models.empty()) {
        cfg.models.clear();
        std::stringstream ss(sw_models);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.models.push_back(tok);
      }
      if (!sw_s.empty()) cfg.s_values = parse_int_list(sw_s);
      if (!sw_n.empty()) cfg.n_values = parse_int_list(sw_n);
      if (sw_seed != 0) cfg.seed = sw_seed;
      if (sw_reps != 0) cfg.repetitions = sw_reps;
      std::string csv = ds::to_csv(ds::run_sweep(cfg));
      if (sweep_out.empty())
        std::cout << csv;
      else
        ds::write_text(sweep_out, csv);
      return 0;
    }
  } catch (const CLI::Error& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
