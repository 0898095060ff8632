#pragma once

#include <cstdint>
#include <vector>

#include "wirs/alias.hpp"
#include "wirs/random.hpp"

namespace wirs {

// Complete binary tree over a weight array (padded to a power of two with
// zero-weight phantom leaves; phantoms are excluded from alias tables).
// Each node stores its subtree weight total and an alias table over its real
// leaves, so a canonical interval decomposition plus one small alias over the
// node totals gives O(log n) setup and O(1) per draw.
class CanonicalTree {
 public:
  struct Node {
    std::size_t begin = 0;  // leaf range [begin, end) in the padded array
    std::size_t end = 0;
    double total = 0.0;
    AliasTable alias;                      // over real leaves in [begin, end)
    std::vector<std::uint32_t> leaf_ids;   // alias index -> leaf index
  };

  static CanonicalTree build(std::span<const double> weights);

  std::size_t leaf_count() const { return n_; }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::size_t idx) const { return nodes_[idx]; }
  double total() const { return nodes_.empty() ? 0.0 : nodes_[0].total; }

  // Canonical cover of [a, b] (inclusive): at most 2*ceil(log2 n) disjoint
  // node indices whose real leaves exactly cover the interval.
  std::vector<std::size_t> decompose(std::size_t a, std::size_t b) const;

  // k independent draws, each leaf i in [a, b] with probability
  // w_i / sum of weights in [a, b].
  std::vector<std::uint32_t> sample_interval(std::size_t a, std::size_t b, std::size_t k,
                                             RandomSource& rng) const;

  // Leaf under node u proportional to weight; exactly one alias draw.
  std::uint32_t subtree_sample(std::size_t u, RandomSource& rng) const;

  // Total alias entries across all nodes (for the space bound).
  std::size_t alias_entry_count() const;

 private:
  std::size_t n_ = 0;         // real leaf count
  std::size_t padded_ = 1;    // power-of-two leaf count
  std::vector<Node> nodes_;   // heap order: root 0, children 2i+1 / 2i+2
};

}  // namespace wirs
