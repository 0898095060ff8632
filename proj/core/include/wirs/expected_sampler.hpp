#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "wirs/alias.hpp"
#include "wirs/dataset.hpp"
#include "wirs/geom3d.hpp"
#include "wirs/shallow_cutting.hpp"
#include "wirs/weight_partition.hpp"

namespace wirs {

struct ExpectedSamplerConfig {
  double group_ratio = 0.0;  // <= 1 means n^2
  CuttingConfig cutting = [] {
    CuttingConfig c;
    c.k_min = 4;  // small bottom level keeps conflict lists tight for rejection
    return c;
  }();
  std::uint64_t build_seed = 0x77125;
};

struct QueryStats {
  std::uint64_t queries = 0;
  std::uint64_t samples = 0;
  std::uint64_t retries = 0;         // rejected rounds
  std::uint64_t case1_hits = 0;      // top-alias draws landing on the suffix slot
  std::uint64_t fallback_scans = 0;  // level overflow / out-of-domain full scans
};

// Exact wIRS for 3D halfspaces with expected-time guarantees: coarse weight
// groups (ratio n^2), a group-search structure for the heaviest nonempty
// group, per-group shallow-cutting hierarchies with per-triangle alias
// tables, and suffix totals for the far tail.
class ExpectedSampler {
 public:
  static ExpectedSampler build(const Dataset& dataset, const ExpectedSamplerConfig& config = {});

  // k independent draws; each point p in h has probability w(p) / w(h).
  // Throws EmptyRangeError when h contains no point.
  std::vector<std::uint32_t> sample(const HalfspaceQuery& h, std::size_t k,
                                    RandomSource& rng) const;

  QueryStats stats() const;
  void reset_stats();

  const WeightClassPartition& partition() const { return partition_; }
  std::size_t space_entry_count() const;

 private:
  struct Oriented {
    GroupMaxIndex group_max;
    std::vector<Hierarchy> hierarchies;  // one per group, over that group's duals
  };

  const Oriented& oriented(Orientation o) const {
    return o == Orientation::Below ? below_ : above_;
  }
  Vec3 dual_point(const HalfspaceQuery& h) const {
    return h.orient == Orientation::Below ? below_form_point(h.plane)
                                          : below_form_point(mirror_query_plane(h.plane));
  }

  // Heap-held so the sampler stays movable; accumulation is relaxed-atomic.
  struct Counters {
    std::atomic<std::uint64_t> queries{0};
    std::atomic<std::uint64_t> samples{0};
    std::atomic<std::uint64_t> retries{0};
    std::atomic<std::uint64_t> case1_hits{0};
    std::atomic<std::uint64_t> fallback_scans{0};
  };

  std::vector<WeightedPoint> points_;
  double ratio_ = 0.0;
  WeightClassPartition partition_;
  std::vector<std::vector<std::uint32_t>> group_ids_;  // group -> dataset ids (build order)
  std::vector<AliasTable> group_alias_;                // full-group fallback alias
  Oriented below_;
  Oriented above_;
  std::unique_ptr<Counters> counters_ = std::make_unique<Counters>();
};

}  // namespace wirs
