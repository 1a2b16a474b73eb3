#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dupsparse/graph.hpp"
#include "dupsparse/rng.hpp"

namespace dupsparse {

struct ModelMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Model { MessagePassing, Blackboard };

inline const char* model_name(Model m) {
  return m == Model::MessagePassing ? "mp" : "bb";
}

enum class ChargeKind { EdgeToCoordinator, EdgeRelayed, EdgeToBlackboard, Marker };

inline int ceil_log2(std::uint64_t x) {
  int b = 0;
  std::uint64_t p = 1;
  while (p < x) {
    p <<= 1;
    ++b;
  }
  return b;
}

// Bits to describe one edge: two vertex ids plus one weight in [1, w_max].
inline int edge_bits(int n, std::uint64_t w_max) {
  if (n < 2) throw std::invalid_argument("edge_bits: need n >= 2");
  return 2 * ceil_log2(static_cast<std::uint64_t>(n)) + ceil_log2(w_max + 1);
}

// Bit- and message-exact transcript of one simulated protocol run. A relayed
// edge crosses two channels (site -> coordinator -> site) and costs twice the
// per-edge bits; blackboard writes and direct coordinator sends cost once;
// markers cost exactly one bit. Charges are attributed to the acting site.
class CostMeter {
 public:
  CostMeter(Model model, int sites, int bits_per_edge)
      : model_(model), bits_per_edge_(bits_per_edge),
        per_site_bits_(static_cast<std::size_t>(sites), 0) {}

  Model model() const { return model_; }
  int sites() const { return static_cast<int>(per_site_bits_.size()); }
  int bits_per_edge() const { return bits_per_edge_; }

  void charge(ChargeKind kind, std::uint64_t count, int site = 0) {
    if (kind == ChargeKind::EdgeRelayed && model_ != Model::MessagePassing)
      throw ModelMismatch("charge: relayed edges only exist in the message-passing model");
    if (kind == ChargeKind::EdgeToBlackboard && model_ != Model::Blackboard)
      throw ModelMismatch("charge: blackboard writes only exist in the blackboard model");
    std::uint64_t bits = 0;
    switch (kind) {
      case ChargeKind::EdgeToCoordinator:
      case ChargeKind::EdgeToBlackboard:
        bits = count * static_cast<std::uint64_t>(bits_per_edge_);
        edge_messages_ += count;
        break;
      case ChargeKind::EdgeRelayed:
        bits = count * 2 * static_cast<std::uint64_t>(bits_per_edge_);
        edge_messages_ += count;
        break;
      case ChargeKind::Marker:
        bits = count;
        marker_messages_ += count;
        break;
    }
    per_site_bits_[static_cast<std::size_t>(site)] += bits;
  }

  void add_round(std::uint64_t count = 1) { rounds_ += count; }

  std::uint64_t bits_total() const {
    return std::accumulate(per_site_bits_.begin(), per_site_bits_.end(), std::uint64_t{0});
  }
  const std::vector<std::uint64_t>& per_site_bits() const { return per_site_bits_; }
  std::uint64_t edge_messages() const { return edge_messages_; }
  std::uint64_t marker_messages() const { return marker_messages_; }
  std::uint64_t rounds() const { return rounds_; }

 private:
  Model model_;
  int bits_per_edge_;
  std::vector<std::uint64_t> per_site_bits_;
  std::uint64_t edge_messages_ = 0;
  std::uint64_t marker_messages_ = 0;
  std::uint64_t rounds_ = 0;
};

enum class DistPolicy { Partition, UniformIID, AdversarialOverlap };

struct DistributeSpec {
  DistPolicy policy = DistPolicy::Partition;
  double r = 1.0;  // per-site residence probability (UniformIID)
  int d = 1;       // copies per edge (AdversarialOverlap)

  static DistributeSpec partition() { return {DistPolicy::Partition, 1.0, 1}; }
  static DistributeSpec uniform_iid(double r) { return {DistPolicy::UniformIID, r, 1}; }
  static DistributeSpec adversarial(int d) { return {DistPolicy::AdversarialOverlap, 1.0, d}; }
};

// One graph observed at s sites: per-site edge id lists over a shared base
// graph, plus the per-edge residence probability r_e the sampling solver
// consumes. In non-duplication mode the site lists are pairwise disjoint.
struct DistributedGraph {
  Graph base;
  int sites = 1;
  std::vector<std::vector<EdgeId>> site_edges;
  std::vector<double> residence;
  bool non_duplication = true;

  // Sites holding each edge, ascending. Inverse view of site_edges.
  std::vector<std::vector<int>> holders() const {
    std::vector<std::vector<int>> h(static_cast<std::size_t>(base.m()));
    for (int s = 0; s < sites; ++s)
      for (EdgeId id : site_edges[static_cast<std::size_t>(s)])
        h[static_cast<std::size_t>(id)].push_back(s);
    return h;
  }

  void validate() const {
    if (sites < 1) throw std::invalid_argument("DistributedGraph: need at least one site");
    if (static_cast<int>(site_edges.size()) != sites)
      throw std::invalid_argument("DistributedGraph: site list count mismatch");
    if (static_cast<int>(residence.size()) != base.m())
      throw std::invalid_argument("DistributedGraph: residence size mismatch");
    std::vector<int> cover(static_cast<std::size_t>(base.m()), 0);
    for (const auto& list : site_edges)
      for (EdgeId id : list) {
        if (id < 0 || id >= base.m())
          throw std::invalid_argument("DistributedGraph: edge id out of range");
        ++cover[static_cast<std::size_t>(id)];
      }
    for (int c : cover)
      if (c == 0) throw std::invalid_argument("DistributedGraph: uncovered edge");
    if (non_duplication)
      for (int c : cover)
        if (c > 1) throw std::invalid_argument("DistributedGraph: duplicate edge in non-duplication mode");
    for (double r : residence)
      if (!(r > 0.0 && r <= 1.0))
        throw std::invalid_argument("DistributedGraph: residence probability out of (0,1]");
  }
};

// Places every edge of g at one or more of s sites.
//
//   Partition          disjoint near-equal split, contiguous in canonical edge
//                      order (the seed only picks which sites take the
//                      remainder), so the induced processing order of a
//                      simulated protocol equals the centralized order.
//   UniformIID(r)      each edge lands at each site independently with
//                      probability r, redrawn until some site holds it;
//                      records the unconditioned r as r_e.
//   AdversarialOverlap(d)  each edge is copied to d seed-chosen sites,
//                      r_e := d/s.
inline DistributedGraph distribute(const Graph& g, int s, const DistributeSpec& spec,
                                   std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("distribute: need at least one site");
  DistributedGraph dg;
  dg.base = g;
  dg.sites = s;
  dg.site_edges.assign(static_cast<std::size_t>(s), {});
  dg.residence.assign(static_cast<std::size_t>(g.m()), 1.0);
  Rng rng(derive_seed(seed, stream::kDistribute));

  switch (spec.policy) {
    case DistPolicy::Partition: {
      dg.non_duplication = true;
      long base_size = g.m() / s;
      int remainder = g.m() % s;
      std::vector<int> order(static_cast<std::size_t>(s));
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      std::vector<long> size(static_cast<std::size_t>(s), base_size);
      for (int i = 0; i < remainder; ++i) ++size[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
      EdgeId next = 0;
      for (int site = 0; site < s; ++site)
        for (long i = 0; i < size[static_cast<std::size_t>(site)]; ++i)
          dg.site_edges[static_cast<std::size_t>(site)].push_back(next++);
      break;
    }
    case DistPolicy::UniformIID: {
      if (!(spec.r > 0.0 && spec.r <= 1.0))
        throw std::invalid_argument("distribute: UniformIID needs r in (0,1]");
      dg.non_duplication = false;
      for (EdgeId id = 0; id < g.m(); ++id) {
        std::vector<int> at;
        while (at.empty()) {
          for (int site = 0; site < s; ++site)
            if (rng.next_unit() < spec.r) at.push_back(site);
        }
        for (int site : at) dg.site_edges[static_cast<std::size_t>(site)].push_back(id);
        dg.residence[static_cast<std::size_t>(id)] = spec.r;
      }
      break;
    }
    case DistPolicy::AdversarialOverlap: {
      if (spec.d < 1 || spec.d > s)
        throw std::invalid_argument("distribute: overlap degree must be in [1, s]");
      dg.non_duplication = spec.d == 1;
      std::vector<int> sites_pool(static_cast<std::size_t>(s));
      for (EdgeId id = 0; id < g.m(); ++id) {
        std::iota(sites_pool.begin(), sites_pool.end(), 0);
        rng.shuffle(sites_pool);
        std::vector<int> at(sites_pool.begin(), sites_pool.begin() + spec.d);
        std::sort(at.begin(), at.end());
        for (int site : at) dg.site_edges[static_cast<std::size_t>(site)].push_back(id);
        dg.residence[static_cast<std::size_t>(id)] = static_cast<double>(spec.d) / s;
      }
      break;
    }
  }
  for (auto& list : dg.site_edges) std::sort(list.begin(), list.end());
  return dg;
}

// Meter pre-sized for runs over dg, with per-edge bits from the base graph.
inline CostMeter make_meter(const DistributedGraph& dg, Model model) {
  std::uint64_t w_max = static_cast<std::uint64_t>(dg.base.max_weight());
  return CostMeter(model, dg.sites, edge_bits(std::max(dg.base.n(), 2), w_max));
}

}  // namespace dupsparse
