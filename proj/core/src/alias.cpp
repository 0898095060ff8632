#include "wirs/alias.hpp"

#include <cmath>

#include "wirs/common.hpp"

namespace wirs {

AliasTable AliasTable::build(std::span<const double> weights) {
  if (weights.empty()) throw EmptyInputError("alias_build: empty weight list");
  const std::size_t n = weights.size();

  WeightSum total;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw NonPositiveWeightError("alias_build: weights must be positive and finite");
    }
    total.add(w);
  }

  AliasTable t;
  t.n_ = n;
  t.total_ = total.value();
  t.prob_.assign(n, 1.0);
  t.alias_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.alias_[i] = static_cast<std::uint32_t>(i);

  const double scale = static_cast<double>(n) / t.total_;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * scale;

  // Worklists hold indices; classification in input order keeps the build
  // deterministic. p == 1 counts as large.
  std::vector<std::uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }

  std::size_t si = 0, li = 0;
  while (si < small.size() && li < large.size()) {
    const std::uint32_t s = small[si++];
    const std::uint32_t l = large[li];
    t.prob_[s] = scaled[s];
    t.alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      small.push_back(l);
      ++li;
    }
  }
  // Leftovers are pinned at probability 1 (self-aliased).
  for (; li < large.size(); ++li) {
    t.prob_[large[li]] = 1.0;
    t.alias_[large[li]] = large[li];
  }
  for (; si < small.size(); ++si) {
    t.prob_[small[si]] = 1.0;
    t.alias_[small[si]] = small[si];
  }
  return t;
}

std::vector<double> AliasTable::reconstructed_probabilities() const {
  std::vector<double> p(n_, 0.0);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    p[i] += prob_[i] * inv_n;
    if (prob_[i] < 1.0) p[alias_[i]] += (1.0 - prob_[i]) * inv_n;
  }
  return p;
}

}  // namespace wirs
