#pragma once

#include <cstdint>
#include <vector>

#include "wirs/common.hpp"

namespace wirs {

// The atom of every structure: a 3D point with a positive weight. `id` is a
// dense index into the owning dataset.
struct WeightedPoint {
  std::uint32_t id = 0;
  Vec3 pos;
  double weight = 1.0;
};

class Dataset {
 public:
  Dataset() = default;

  // Validates weights (> 0, finite) and that ids are exactly 0..n-1 in order.
  // total_weight accumulates left-to-right over input order.
  static Dataset from_points(std::vector<WeightedPoint> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<WeightedPoint>& points() const { return points_; }
  const WeightedPoint& operator[](std::size_t i) const { return points_[i]; }
  double total_weight() const { return total_weight_; }

  // Ratio of the largest to the smallest weight.
  double weight_ratio() const;

  std::vector<double> weights() const;

 private:
  std::vector<WeightedPoint> points_;
  double total_weight_ = 0.0;
};

}  // namespace wirs
