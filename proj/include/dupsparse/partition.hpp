#pragma once

#include <stdexcept>
#include <vector>

namespace dupsparse {

struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// k-way node partition: assignment[v] in [0, k) for every vertex.
struct Partition {
  int k = 0;
  std::vector<int> assignment;

  int n() const { return static_cast<int>(assignment.size()); }

  void validate() const {
    if (k < 0) throw std::invalid_argument("Partition: negative k");
    for (int c : assignment)
      if (c < 0 || c >= k) throw std::invalid_argument("Partition: cluster id out of range");
  }

  std::vector<std::vector<int>> clusters() const {
    std::vector<std::vector<int>> cs(static_cast<std::size_t>(k));
    for (int v = 0; v < n(); ++v) cs[static_cast<std::size_t>(assignment[static_cast<std::size_t>(v)])].push_back(v);
    return cs;
  }
};

}  // namespace dupsparse
