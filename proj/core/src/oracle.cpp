#include "wirs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace wirs::oracle {

RangeResult brute_force_range(const Dataset& dataset, const HalfspaceQuery& h) {
  RangeResult r;
  WeightSum total;
  for (const WeightedPoint& p : dataset.points()) {
    if (contains(h, p.pos)) {
      r.ids.push_back(p.id);
      r.weights.push_back(p.weight);
      total.add(p.weight);
    }
  }
  r.total = total.value();
  return r;
}

Distribution exact_distribution(const Dataset& dataset, const HalfspaceQuery& h) {
  RangeResult r = brute_force_range(dataset, h);
  if (r.ids.empty()) throw EmptyRangeError();
  Distribution d;
  d.ids = std::move(r.ids);
  d.probs.resize(d.ids.size());
  for (std::size_t i = 0; i < d.ids.size(); ++i) d.probs[i] = r.weights[i] / r.total;
  return d;
}

std::optional<std::uint32_t> brute_force_argmax(const Dataset& dataset,
                                                const HalfspaceQuery& h) {
  std::optional<std::uint32_t> best;
  for (const WeightedPoint& p : dataset.points()) {
    if (!contains(h, p.pos)) continue;
    if (!best || p.weight > dataset[*best].weight) best = p.id;
  }
  return best;
}

RangeSumTree RangeSumTree::build(const Dataset& dataset) {
  if (dataset.empty()) throw EmptyInputError("range sum tree: empty dataset");
  RangeSumTree t;
  t.points_ = dataset.points();
  t.root_ = t.build_node(0, t.points_.size(), 0);
  return t;
}

std::size_t RangeSumTree::build_node(std::size_t lo, std::size_t hi, std::size_t level) {
  depth_ = std::max(depth_, level);
  Node node;
  node.lo = lo;
  node.hi = hi;
  const std::size_t self = nodes_.size();
  nodes_.push_back(node);
  if (hi - lo >= 2) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::size_t l = build_node(lo, mid, level + 1);
    const std::size_t r = build_node(mid, hi, level + 1);
    nodes_[self].left = l;
    nodes_[self].right = r;
  }
  return self;
}

std::vector<std::uint32_t> RangeSumTree::sample(const HalfspaceQuery& h, std::size_t k,
                                                RandomSource& rng) const {
  // One range-sum evaluation per node for this query, reused by every draw.
  std::vector<double> sums(nodes_.size(), 0.0);
  std::vector<std::uint32_t> hit(points_.size(), 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    hit[i] = contains(h, points_[i].pos) ? 1 : 0;
  }
  // nodes_ were appended parent-first, so a reverse scan aggregates children.
  for (std::size_t ni = nodes_.size(); ni-- > 0;) {
    const Node& nd = nodes_[ni];
    if (nd.left == npos) {
      WeightSum s;
      for (std::size_t i = nd.lo; i < nd.hi; ++i) {
        if (hit[i]) s.add(points_[i].weight);
      }
      sums[ni] = s.value();
    } else {
      sums[ni] = sums[nd.left] + sums[nd.right];
    }
  }
  if (!(sums[root_] > 0.0)) throw EmptyRangeError();

  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::size_t d = 0; d < k; ++d) {
    std::size_t ni = root_;
    while (nodes_[ni].left != npos) {
      const double w1 = sums[nodes_[ni].left];
      const double w2 = sums[nodes_[ni].right];
      const double u = rng.draw_unit() * (w1 + w2);
      ni = u < w1 ? nodes_[ni].left : nodes_[ni].right;
    }
    // Leaf ranges hold at most one in-range point when the tree is split to
    // singletons; wider leaves finish with one exact proportional pick.
    const Node& leaf = nodes_[ni];
    if (leaf.hi - leaf.lo == 1) {
      out.push_back(points_[leaf.lo].id);
      continue;
    }
    double total = 0.0;
    for (std::size_t i = leaf.lo; i < leaf.hi; ++i) {
      if (hit[i]) total += points_[i].weight;
    }
    double u = rng.draw_unit() * total;
    std::uint32_t pick = points_[leaf.lo].id;
    for (std::size_t i = leaf.lo; i < leaf.hi; ++i) {
      if (!hit[i]) continue;
      pick = points_[i].id;
      u -= points_[i].weight;
      if (u < 0.0) break;
    }
    out.push_back(pick);
  }
  return out;
}

SelectionProbs enumerate_selection_probs(const Dataset& dataset,
                                         const ApproxSampler::QueryLayout& layout,
                                         const HalfspaceQuery& h, std::uint64_t max_outcomes) {
  const auto& cells = layout.cells;
  // Outcome count: representative choices per cell times the coin branches.
  double outcomes = 2.0;
  for (const auto& cell : cells) outcomes *= static_cast<double>(cell.ids.size());
  if (outcomes > static_cast<double>(max_outcomes)) {
    throw TooLargeError("enumerate_selection_probs: outcome count over budget");
  }

  SelectionProbs probs;
  probs.one_shot.assign(dataset.size(), 0.0);
  probs.rejection.assign(dataset.size(), 0.0);

  std::vector<std::size_t> inside, straddling;
  double w_in = 0.0, w_str = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].side == CellSide::Inside) {
      inside.push_back(i);
      w_in += cells[i].total;
    } else {
      straddling.push_back(i);
      w_str += cells[i].total;
    }
  }
  const double w_all = w_in + w_str;
  if (w_all <= 0.0) return probs;
  const double pi_in = w_in / w_all;

  // Enumerate representative assignments; within an assignment, walk both
  // coin branches and the straddling failure -> inside redirect.
  std::vector<std::uint32_t> rep(cells.size(), 0);
  std::function<void(std::size_t, double)> recurse = [&](std::size_t ci, double p_assign) {
    if (ci < cells.size()) {
      const auto& cell = cells[ci];
      for (std::size_t j = 0; j < cell.ids.size(); ++j) {
        rep[ci] = cell.ids[j];
        recurse(ci + 1, p_assign * cell.weights[j] / cell.total);
      }
      return;
    }
    // Coin -> inside pool.
    for (std::size_t i : inside) {
      probs.one_shot[rep[i]] += p_assign * pi_in * cells[i].total / w_in;
    }
    // Coin -> straddling pool; failures redirect to the current inside reps.
    for (std::size_t s : straddling) {
      const double p_pick = p_assign * (1.0 - pi_in) * cells[s].total / w_str;
      if (contains(h, dataset[rep[s]].pos)) {
        probs.one_shot[rep[s]] += p_pick;
      } else if (w_in > 0.0) {
        for (std::size_t i : inside) {
          probs.one_shot[rep[i]] += p_pick * cells[i].total / w_in;
        }
      }
    }
  };
  if (w_in > 0.0 || !straddling.empty()) recurse(0, 1.0);

  // Infinite-rejection closed form: representatives are replaced after every
  // inspection, so rounds are independent and the distribution is geometric.
  double per_round_fail = 0.0;
  for (std::size_t s : straddling) {
    double out_weight = 0.0;
    for (std::size_t j = 0; j < cells[s].ids.size(); ++j) {
      if (!contains(h, dataset[cells[s].ids[j]].pos)) out_weight += cells[s].weights[j];
    }
    per_round_fail += (1.0 - pi_in) * (cells[s].total / w_str) * (out_weight / cells[s].total);
  }
  const double success = 1.0 - per_round_fail;
  for (std::size_t i : inside) {
    for (std::size_t j = 0; j < cells[i].ids.size(); ++j) {
      probs.rejection[cells[i].ids[j]] +=
          pi_in * (cells[i].total / w_in) * (cells[i].weights[j] / cells[i].total) / success;
    }
  }
  for (std::size_t s : straddling) {
    for (std::size_t j = 0; j < cells[s].ids.size(); ++j) {
      if (!contains(h, dataset[cells[s].ids[j]].pos)) continue;
      probs.rejection[cells[s].ids[j]] += (1.0 - pi_in) * (cells[s].total / w_str) *
                                          (cells[s].weights[j] / cells[s].total) / success;
    }
  }

  for (double p : probs.one_shot) probs.one_shot_sum += p;
  for (double p : probs.rejection) probs.rejection_sum += p;
  return probs;
}

ExpectedSampler build_rank_reduction_sampler(const Dataset& dataset) {
  const std::size_t n = dataset.size();
  if (n == 0) throw EmptyInputError();

  // Ranks by (weight asc, id asc); rank i gets weight n^(3i), globally scaled
  // to center the exponent range (scaling leaves every ratio unchanged).
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (dataset[a].weight != dataset[b].weight) return dataset[a].weight < dataset[b].weight;
    return a < b;
  });
  const double base = std::max(2.0, static_cast<double>(n));
  const double span = 3.0 * static_cast<double>(n - 1) * std::log10(base);
  if (span > 600.0) {
    throw TooLargeError("rank reduction: n^(3n) exceeds double range");
  }
  std::vector<WeightedPoint> pts = dataset.points();
  for (std::size_t rank = 0; rank < n; ++rank) {
    const double exp10 = 3.0 * static_cast<double>(rank) * std::log10(base) - span / 2.0;
    pts[order[rank]].weight = std::pow(10.0, exp10);
  }
  return ExpectedSampler::build(Dataset::from_points(std::move(pts)));
}

std::uint32_t range_max_via_sampling(const Dataset& dataset, const HalfspaceQuery& h,
                                     const ExpectedSampler& rank_sampler, RandomSource& rng) {
  (void)dataset;
  return rank_sampler.sample(h, 1, rng).at(0);
}

}  // namespace wirs::oracle
