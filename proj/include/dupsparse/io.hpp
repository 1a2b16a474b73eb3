#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dupsparse/cluster.hpp"
#include "dupsparse/comm.hpp"
#include "dupsparse/graph.hpp"
#include "dupsparse/partition.hpp"
#include "dupsparse/verify.hpp"

namespace dupsparse {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// --- edge-list format: "n m" header, then "u v w" per line, u < v, sorted ---

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  return out.str();
}

inline Graph parse_edge_list(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw IoError("edge list: bad header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Edge e;
    if (!(in >> e.u >> e.v >> e.w)) throw IoError("edge list: truncated");
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

inline void write_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << to_edge_list(g);
}

inline Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return parse_edge_list(in);
}

// --- distributed graph format: "n m s dup|nondup" header, then per edge ---
// "u v w sites=i,j,k r=<r_e>"

inline std::string to_distributed(const DistributedGraph& dg) {
  auto hold = dg.holders();
  std::ostringstream out;
  out << dg.base.n() << ' ' << dg.base.m() << ' ' << dg.sites << ' '
      << (dg.non_duplication ? "nondup" : "dup") << '\n';
  for (EdgeId id = 0; id < dg.base.m(); ++id) {
    const Edge& e = dg.base.edge(id);
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << " sites=";
    const auto& hs = hold[static_cast<std::size_t>(id)];
    for (std::size_t i = 0; i < hs.size(); ++i) out << (i ? "," : "") << hs[i];
    out << " r=" << format_double(dg.residence[static_cast<std::size_t>(id)]) << '\n';
  }
  return out.str();
}

inline DistributedGraph parse_distributed(std::istream& in) {
  int n = 0, m = 0, s = 0;
  std::string mode;
  if (!(in >> n >> m >> s >> mode)) throw IoError("distributed graph: bad header");
  DistributedGraph dg;
  dg.sites = s;
  dg.non_duplication = mode == "nondup";
  if (!dg.non_duplication && mode != "dup") throw IoError("distributed graph: bad mode flag");
  dg.site_edges.assign(static_cast<std::size_t>(s), {});
  std::vector<Edge> edges;
  std::vector<std::vector<int>> hold;
  std::vector<double> res;
  for (int i = 0; i < m; ++i) {
    Edge e;
    std::string sites_tok, r_tok;
    if (!(in >> e.u >> e.v >> e.w >> sites_tok >> r_tok))
      throw IoError("distributed graph: truncated");
    if (sites_tok.rfind("sites=", 0) != 0 || r_tok.rfind("r=", 0) != 0)
      throw IoError("distributed graph: bad edge annotation");
    std::vector<int> hs;
    std::stringstream list(sites_tok.substr(6));
    std::string tok;
    while (std::getline(list, tok, ',')) hs.push_back(std::stoi(tok));
    edges.push_back(e);
    hold.push_back(std::move(hs));
    res.push_back(std::stod(r_tok.substr(2)));
  }
  dg.base = Graph(n, edges);
  dg.residence.assign(static_cast<std::size_t>(dg.base.m()), 1.0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    EdgeId id = *dg.base.find_edge(edges[i].u, edges[i].v);
    dg.residence[static_cast<std::size_t>(id)] = res[i];
    for (int site : hold[i]) {
      if (site < 0 || site >= s) throw IoError("distributed graph: site index out of range");
      dg.site_edges[static_cast<std::size_t>(site)].push_back(id);
    }
  }
  for (auto& list : dg.site_edges) std::sort(list.begin(), list.end());
  dg.validate();
  return dg;
}

inline void write_distributed(const std::string& path, const DistributedGraph& dg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << to_distributed(dg);
}

inline DistributedGraph read_distributed(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return parse_distributed(in);
}

// --- partition format: "vertex cluster" per line ---

inline std::string to_partition_text(const Partition& p) {
  std::ostringstream out;
  for (int v = 0; v < p.n(); ++v) out << v << ' ' << p.assignment[static_cast<std::size_t>(v)] << '\n';
  return out.str();
}

inline void write_partition(const std::string& path, const Partition& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << to_partition_text(p);
}

inline Partition read_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  Partition p;
  int v, c;
  std::vector<std::pair<int, int>> rows;
  while (in >> v >> c) rows.push_back({v, c});
  p.assignment.assign(rows.size(), 0);
  for (auto [vv, cc] : rows) {
    if (vv < 0 || static_cast<std::size_t>(vv) >= rows.size())
      throw IoError("partition: vertex id out of range");
    p.assignment[static_cast<std::size_t>(vv)] = cc;
    p.k = std::max(p.k, cc + 1);
  }
  p.validate();
  return p;
}

// --- residence sidecar: "u v r" per line, canonical order ---

inline void write_residence(const std::string& path, const DistributedGraph& dg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (EdgeId id = 0; id < dg.base.m(); ++id) {
    const Edge& e = dg.base.edge(id);
    out << e.u << ' ' << e.v << ' ' << format_double(dg.residence[static_cast<std::size_t>(id)])
        << '\n';
  }
}

// --- run records (CSV) ---

struct RunRecord {
  std::string model;
  std::string algorithm;
  int n = 0;
  int m = 0;
  int s = 1;
  std::uint64_t seed = 0;
  std::uint64_t bits_total = 0;
  std::uint64_t edge_messages = 0;
  std::uint64_t marker_messages = 0;
  std::uint64_t rounds = 0;
};

inline constexpr const char* kRunRecordHeader =
    "model,algorithm,n,m,s,seed,bits_total,edge_messages,marker_messages,rounds";

inline RunRecord make_record(const std::string& algorithm, const DistributedGraph& dg,
                             const CostMeter& meter, std::uint64_t seed) {
  RunRecord rec;
  rec.model = model_name(meter.model());
  rec.algorithm = algorithm;
  rec.n = dg.base.n();
  rec.m = dg.base.m();
  rec.s = dg.sites;
  rec.seed = seed;
  rec.bits_total = meter.bits_total();
  rec.edge_messages = meter.edge_messages();
  rec.marker_messages = meter.marker_messages();
  rec.rounds = meter.rounds();
  return rec;
}

inline std::string to_csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.model << ',' << r.algorithm << ',' << r.n << ',' << r.m << ',' << r.s << ',' << r.seed
      << ',' << r.bits_total << ',' << r.edge_messages << ',' << r.marker_messages << ','
      << r.rounds;
  return out.str();
}

inline std::string to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << kRunRecordHeader << '\n';
  for (const RunRecord& r : records) out << to_csv_row(r) << '\n';
  return out.str();
}

// --- JSON reports ---

inline nlohmann::json to_json(const SpectralReport& r) {
  return {{"eps_star", r.eps_star},
          {"lambda_min", r.lambda_min},
          {"lambda_max", r.lambda_max},
          {"pass", r.pass}};
}

inline nlohmann::json to_json(const StretchReport& r) {
  return {{"max_violation", r.max_violation},
          {"max_stretch", r.max_stretch},
          {"worst_u", r.worst_u},
          {"worst_v", r.worst_v},
          {"pass", r.pass}};
}

inline nlohmann::json to_json(const ResistanceReport& r) {
  return {{"max_ratio", r.max_ratio},
          {"checked", r.checked},
          {"violations", r.violations},
          {"pass", r.pass}};
}

inline nlohmann::json to_json(const ConductanceReport& r) {
  nlohmann::json j{{"sets_checked", r.sets_checked},
                   {"violations", r.violations},
                   {"max_ratio", r.max_ratio},
                   {"pass", r.pass}};
  j["min_ratio"] = r.min_ratio == kInfiniteDistance ? nlohmann::json() : nlohmann::json(r.min_ratio);
  return j;
}

inline nlohmann::json to_json(const ClusterQuality& q) {
  nlohmann::json j{{"max_conductance", q.max_conductance},
                   {"sym_diff_vols", q.sym_diff_vols},
                   {"misclassified_vol_frac", q.misclassified_vol_frac}};
  j["lambda_k1"] = std::isnan(q.lambda_k1) ? nlohmann::json() : nlohmann::json(q.lambda_k1);
  j["upsilon"] = std::isfinite(q.upsilon) ? nlohmann::json(q.upsilon) : nlohmann::json();
  return j;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

}  // namespace dupsparse
