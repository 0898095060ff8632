#pragma once

#include <cstdint>
#include <vector>

#include "wirs/dataset.hpp"

namespace wirs {

enum class RatioKind {
  HalfClasses,   // intra-class weight ratio in (1/2, 2]
  CoarseGroups,  // intra-class weight ratio in [1/R, R]
};

// Ordered classes of point ids, descending by weight, with per-class and
// suffix weight totals. Immutable after build.
class WeightClassPartition {
 public:
  // Greedy classes: repeatedly take the max remaining weight w*, the class is
  // every remaining point with weight >= w*/2. Equal-weight ties break by id.
  static WeightClassPartition build_half_classes(const Dataset& dataset);

  // Greedy groups with threshold w*/R; minimal group count, weight-ordered.
  static WeightClassPartition build_coarse_groups(const Dataset& dataset, double ratio);

  std::size_t class_count() const { return classes_.size(); }
  const std::vector<std::uint32_t>& class_members(std::size_t i) const { return classes_[i]; }
  double class_total(std::size_t i) const { return class_total_[i]; }
  // W(X_i) = sum of class totals for classes >= i; suffix_total(class_count()) == 0.
  double suffix_total(std::size_t i) const { return suffix_total_[i]; }
  double class_max_weight(std::size_t i) const { return class_max_[i]; }
  double class_min_weight(std::size_t i) const { return class_min_[i]; }
  RatioKind ratio_kind() const { return kind_; }
  double ratio() const { return ratio_; }

  // Smallest i' >= i such that the max weight in class i' is smaller than
  // (min weight in class i) / threshold; class_count() if none.
  std::size_t cutoff_index(std::size_t start, double threshold) const;

 private:
  static WeightClassPartition build_greedy(const Dataset& dataset, double ratio, RatioKind kind);

  RatioKind kind_ = RatioKind::HalfClasses;
  double ratio_ = 2.0;
  std::vector<std::vector<std::uint32_t>> classes_;
  std::vector<double> class_total_;
  std::vector<double> suffix_total_;  // size class_count()+1, telescoping
  std::vector<double> class_max_;
  std::vector<double> class_min_;
};

}  // namespace wirs
