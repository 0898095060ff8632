#include "wirs/interval_sampler.hpp"

#include <cmath>

#include "wirs/common.hpp"

namespace wirs {

CanonicalTree CanonicalTree::build(std::span<const double> weights) {
  if (weights.empty()) throw EmptyInputError("canonical tree: empty weight list");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw NonPositiveWeightError("canonical tree: weights must be positive and finite");
    }
  }

  CanonicalTree t;
  t.n_ = weights.size();
  t.padded_ = 1;
  while (t.padded_ < t.n_) t.padded_ <<= 1;
  t.nodes_.resize(2 * t.padded_ - 1);

  // Leaves sit at heap positions padded_-1 .. 2*padded_-2.
  for (std::size_t i = 0; i < t.padded_; ++i) {
    Node& leaf = t.nodes_[t.padded_ - 1 + i];
    leaf.begin = i;
    leaf.end = i + 1;
    if (i < t.n_) {
      leaf.total = weights[i];
      leaf.leaf_ids = {static_cast<std::uint32_t>(i)};
      leaf.alias = AliasTable::build(std::span<const double>(&weights[i], 1));
    }
  }
  for (std::size_t idx = t.padded_ - 1; idx-- > 0;) {
    Node& u = t.nodes_[idx];
    const Node& l = t.nodes_[2 * idx + 1];
    const Node& r = t.nodes_[2 * idx + 2];
    u.begin = l.begin;
    u.end = r.end;
    u.total = l.total + r.total;
    const std::size_t real_end = std::min(u.end, t.n_);
    if (u.begin < real_end) {
      std::vector<double> w(weights.begin() + u.begin, weights.begin() + real_end);
      u.alias = AliasTable::build(w);
      u.leaf_ids.resize(real_end - u.begin);
      for (std::size_t i = 0; i < u.leaf_ids.size(); ++i) {
        u.leaf_ids[i] = static_cast<std::uint32_t>(u.begin + i);
      }
    }
  }
  return t;
}

std::vector<std::size_t> CanonicalTree::decompose(std::size_t a, std::size_t b) const {
  if (a > b || b >= n_) throw BadIntervalError("decompose: need 0 <= a <= b < n");
  std::vector<std::size_t> cover;
  // Iterative canonical decomposition over the heap.
  std::vector<std::size_t> stack = {0};
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const Node& u = nodes_[idx];
    if (u.begin >= n_) continue;  // all-phantom subtree
    const std::size_t real_end = std::min(u.end, n_);
    if (u.begin > b || real_end <= a) continue;
    if (a <= u.begin && real_end - 1 <= b) {
      cover.push_back(idx);
      continue;
    }
    stack.push_back(2 * idx + 2);
    stack.push_back(2 * idx + 1);
  }
  return cover;
}

std::vector<std::uint32_t> CanonicalTree::sample_interval(std::size_t a, std::size_t b,
                                                          std::size_t k,
                                                          RandomSource& rng) const {
  const std::vector<std::size_t> cover = decompose(a, b);
  std::vector<double> totals(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) totals[i] = nodes_[cover[i]].total;
  const AliasTable top = AliasTable::build(totals);

  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t node_idx = cover[top.sample(rng)];
    out.push_back(subtree_sample(node_idx, rng));
  }
  return out;
}

std::uint32_t CanonicalTree::subtree_sample(std::size_t u, RandomSource& rng) const {
  const Node& node = nodes_[u];
  return node.leaf_ids[node.alias.sample(rng)];
}

std::size_t CanonicalTree::alias_entry_count() const {
  std::size_t total = 0;
  for (const Node& u : nodes_) total += u.alias.entry_count();
  return total;
}

}  // namespace wirs
