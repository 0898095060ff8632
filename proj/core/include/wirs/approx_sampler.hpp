#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wirs/alias.hpp"
#include "wirs/dataset.hpp"
#include "wirs/geom3d.hpp"
#include "wirs/kd_partition.hpp"
#include "wirs/shallow_cutting.hpp"
#include "wirs/weight_partition.hpp"

namespace wirs {

struct ApproxParams {
  double eps = 0.25;
  double gamma = 0.025;  // must satisfy gamma < eps
  double c_r = 8.0;      // r = ceil(c_r / eps^3) cells per partition
  CuttingConfig cutting = [] {
    CuttingConfig c;
    c.k_min = 4;
    return c;
  }();
  std::uint64_t build_seed = 0xA99086;

  std::size_t r() const;
};

// Deterministic operation counter for the worst-case bound: group-search
// probes, level probes, per-cell candidate work, pool-alias entries, and
// per-draw coin/draw/test/replacement steps each count one.
struct OpCount {
  std::uint64_t ops = 0;
};

// Per-query candidate set for one weight class: one representative per
// non-outside cell of the covering triangle's partition, with back-pointers
// to the cells so inspected reps can be replaced in O(1).
struct CandidateSet {
  struct Rep {
    std::uint32_t point_id = 0;
    std::uint32_t cell_id = 0;
    double cell_weight = 0.0;
    std::uint32_t class_index = 0;
    const KdPartition::Cell* cell = nullptr;
  };
  std::vector<Rep> reps;
  std::vector<std::uint32_t> inside_pool;      // indices into reps
  std::vector<std::uint32_t> straddling_pool;  // indices into reps
};

// Candidate reps pooled across classes with the two alias structures of the
// one-shot selection scheme. Weights never change on rep replacement.
struct CandidatePools {
  std::vector<CandidateSet::Rep> reps;
  std::vector<std::uint32_t> inside;
  std::vector<std::uint32_t> straddling;
  double w_in = 0.0;
  double w_str = 0.0;
  AliasTable inside_alias;      // over inside cell weights
  AliasTable straddling_alias;  // over straddling cell weights
};

// Worst-case-time (eps, gamma)-approximate wIRS: factor-2 weight classes,
// per-class shallow-cutting hierarchies whose triangles carry kd partitions
// of their conflict lists, and the one-shot deterministic selection scheme.
class ApproxSampler {
 public:
  static ApproxSampler build(const Dataset& dataset, const ApproxParams& params);

  // k draws; points with w/w(h) >= gamma/n are sampled within (1 +- eps) of
  // proportional, lighter points may be dropped (total dropped mass <= gamma).
  std::vector<std::uint32_t> sample_k(const HalfspaceQuery& h, std::size_t k, RandomSource& rng,
                                      OpCount* ops = nullptr) const;

  // One candidate set for class `class_index` (must be active for h).
  CandidateSet generate_candidates(std::size_t class_index, const HalfspaceQuery& h,
                                   RandomSource& rng, OpCount* ops = nullptr) const;

  // Builds the two pool aliases from per-class candidate sets.
  CandidatePools pool_candidates(std::vector<CandidateSet> sets, OpCount* ops = nullptr) const;

  // One draw of the one-shot scheme; replaces inspected reps.
  std::uint32_t select_one(CandidatePools& pools, const HalfspaceQuery& h, RandomSource& rng,
                           OpCount* ops = nullptr) const;

  // Deterministic description of the per-query cell layout, for the
  // enumeration oracle and the band checks.
  struct CellLayout {
    std::vector<std::uint32_t> ids;
    std::vector<double> weights;
    double total = 0.0;
    CellSide side = CellSide::Outside;
    std::size_t class_index = 0;
  };
  struct QueryLayout {
    std::size_t class_lo = 0;
    std::size_t class_hi = 0;            // window [class_lo, class_hi)
    std::vector<CellLayout> cells;       // non-outside cells only
    std::vector<std::uint32_t> dropped;  // ids in classes >= class_hi
  };
  QueryLayout describe_query(const HalfspaceQuery& h) const;

  const WeightClassPartition& partition() const { return partition_; }
  const ApproxParams& params() const { return params_; }
  std::size_t space_entry_count() const;

  // Class window [i, i+t) for h; throws EmptyRangeError when h is empty.
  std::pair<std::size_t, std::size_t> class_window(const HalfspaceQuery& h,
                                                   OpCount* ops = nullptr) const;

 private:
  struct Oriented {
    GroupMaxIndex group_max;
    std::vector<Hierarchy> hierarchies;
    // [group][level][triangle] -> partition of that triangle's conflict list
    std::vector<std::vector<std::vector<KdPartition>>> cell_partitions;
    std::vector<KdPartition> class_fallback;  // whole-class partitions
  };

  const Oriented& oriented(Orientation o) const {
    return o == Orientation::Below ? below_ : above_;
  }
  Vec3 dual_point(const HalfspaceQuery& h) const {
    return h.orient == Orientation::Below ? below_form_point(h.plane)
                                          : below_form_point(mirror_query_plane(h.plane));
  }
  const KdPartition& query_partition(const Oriented& ori, std::size_t class_index,
                                     const Vec3& q, OpCount* ops) const;

  std::vector<WeightedPoint> points_;
  ApproxParams params_;
  WeightClassPartition partition_;
  std::vector<std::vector<std::uint32_t>> class_ids_;
  Oriented below_;
  Oriented above_;
};

}  // namespace wirs
