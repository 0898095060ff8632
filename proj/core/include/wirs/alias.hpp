#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wirs/random.hpp"

namespace wirs {

// Walker alias table: O(1)-draw discrete distribution over indexed weights.
// Immutable after build and safe for concurrent reads.
class AliasTable {
 public:
  AliasTable() = default;

  // Two-worklist (small/large) construction. Ties at probability exactly 1 go
  // to the large list, so tables are deterministic for deterministic input.
  // Throws EmptyInputError / NonPositiveWeightError.
  static AliasTable build(std::span<const double> weights);

  // Returns index j with probability weight_j / total. Consumes exactly two
  // unit draws: one cell pick, one coin.
  std::uint32_t sample(RandomSource& rng) const {
    std::size_t cell = static_cast<std::size_t>(rng.draw_unit() * static_cast<double>(n_));
    if (cell >= n_) cell = n_ - 1;
    double coin = rng.draw_unit();
    return coin < prob_[cell] ? static_cast<std::uint32_t>(cell) : alias_[cell];
  }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  double total() const { return total_; }
  std::span<const double> prob() const { return prob_; }
  std::span<const std::uint32_t> alias() const { return alias_; }

  // Exact draw probability of index j reconstructed from (prob, alias).
  std::vector<double> reconstructed_probabilities() const;

  // Number of stored entries (for space accounting).
  std::size_t entry_count() const { return n_; }

 private:
  std::size_t n_ = 0;
  double total_ = 0.0;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace wirs
