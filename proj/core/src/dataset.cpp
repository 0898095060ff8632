#include "wirs/dataset.hpp"

#include <algorithm>
#include <cmath>

namespace wirs {

Dataset Dataset::from_points(std::vector<WeightedPoint> points) {
  Dataset d;
  WeightSum total;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const WeightedPoint& p = points[i];
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
      throw NonPositiveWeightError("dataset: weights must be positive and finite");
    }
    if (p.id != i) {
      throw BadInputError("dataset: ids must be dense and ordered 0..n-1");
    }
    total.add(p.weight);
  }
  d.points_ = std::move(points);
  d.total_weight_ = total.value();
  return d;
}

double Dataset::weight_ratio() const {
  if (points_.empty()) return 1.0;
  double lo = points_[0].weight, hi = points_[0].weight;
  for (const auto& p : points_) {
    lo = std::min(lo, p.weight);
    hi = std::max(hi, p.weight);
  }
  return hi / lo;
}

std::vector<double> Dataset::weights() const {
  std::vector<double> w(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) w[i] = points_[i].weight;
  return w;
}

}  // namespace wirs
