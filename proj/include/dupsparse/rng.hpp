#pragma once

#include <cstdint>
#include <vector>

namespace dupsparse {

// All randomness in the library funnels through one 64-bit seed. Child
// streams are derived with a keyed splitmix64 hash so that a run is
// reproducible and independent decisions (per site, per edge, per
// iteration, per restart) come from independent streams.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed) { return seed; }

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, Tags... rest) {
  return derive_seed(splitmix64(seed ^ splitmix64(tag ^ 0xa0761d6478bd642fULL)), rest...);
}

// Domain-separation tags for the major random decision points.
namespace stream {
constexpr std::uint64_t kGenerator = 1;
constexpr std::uint64_t kDistribute = 2;
constexpr std::uint64_t kSiteSample = 3;
constexpr std::uint64_t kKmeansRestart = 4;
constexpr std::uint64_t kSparsifyIteration = 5;
constexpr std::uint64_t kVertexSample = 6;
constexpr std::uint64_t kSetSample = 7;
}  // namespace stream

// Small counter-based generator. Unlike std::uniform_*_distribution the
// output is pinned across platforms and standard library versions, which
// the byte-exact reproducibility contract of the CLI requires.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// One uniform draw keyed by (seed, tags...). Used for per-(site, edge,
// iteration) sampling decisions where each decision must be an
// independent function of the global seed.
template <typename... Tags>
double keyed_unit(std::uint64_t seed, Tags... tags) {
  return static_cast<double>(splitmix64(derive_seed(seed, static_cast<std::uint64_t>(tags)...)) >> 11) *
         0x1.0p-53;
}

}  // namespace dupsparse
