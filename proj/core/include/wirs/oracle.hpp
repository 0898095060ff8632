#pragma once

#include <cstdint>
#include <vector>

#include "wirs/approx_sampler.hpp"
#include "wirs/dataset.hpp"
#include "wirs/expected_sampler.hpp"
#include "wirs/geom3d.hpp"
#include "wirs/random.hpp"

namespace wirs::oracle {

struct RangeResult {
  std::vector<std::uint32_t> ids;
  std::vector<double> weights;
  double total = 0.0;
};

// Linear scan; the ground truth every structure is checked against.
RangeResult brute_force_range(const Dataset& dataset, const HalfspaceQuery& h);

// Normalized restriction of the weights to h; throws EmptyRangeError.
struct Distribution {
  std::vector<std::uint32_t> ids;
  std::vector<double> probs;
};
Distribution exact_distribution(const Dataset& dataset, const HalfspaceQuery& h);

// Max-weight point in h (ties by id); nullopt when empty.
std::optional<std::uint32_t> brute_force_argmax(const Dataset& dataset, const HalfspaceQuery& h);

// Balanced binary partition with per-node range sums; one range-sum query per
// node on the root-to-leaf path yields an exact sample (per-query node sums
// are evaluated once and reused across the k draws).
class RangeSumTree {
 public:
  static RangeSumTree build(const Dataset& dataset);

  std::vector<std::uint32_t> sample(const HalfspaceQuery& h, std::size_t k,
                                    RandomSource& rng) const;
  std::size_t depth() const { return depth_; }

 private:
  struct Node {
    std::size_t lo = 0, hi = 0;  // id range [lo, hi)
    std::size_t left = npos, right = npos;
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t build_node(std::size_t lo, std::size_t hi, std::size_t level);

  std::vector<WeightedPoint> points_;
  std::vector<Node> nodes_;
  std::size_t root_ = npos;
  std::size_t depth_ = 0;
};

// Exact per-point selection probabilities of the one-shot deterministic
// scheme and of the infinite-rejection scheme, for one draw over a candidate
// cell layout - by full enumeration over representative assignments and coin
// branches. Throws TooLargeError above `max_outcomes` enumerated outcomes.
struct SelectionProbs {
  std::vector<double> one_shot;   // indexed by dataset id
  std::vector<double> rejection;  // indexed by dataset id
  double one_shot_sum = 0.0;
  double rejection_sum = 0.0;
};
SelectionProbs enumerate_selection_probs(const Dataset& dataset,
                                         const ApproxSampler::QueryLayout& layout,
                                         const HalfspaceQuery& h,
                                         std::uint64_t max_outcomes = 1000000);

// Lemma-1 reduction: an expected sampler over rank-exponential weights
// (ratio n^3 between consecutive ranks) turns one sampling query into a
// range-max answer with high probability.
ExpectedSampler build_rank_reduction_sampler(const Dataset& dataset);
std::uint32_t range_max_via_sampling(const Dataset& dataset, const HalfspaceQuery& h,
                                     const ExpectedSampler& rank_sampler, RandomSource& rng);

}  // namespace wirs::oracle
