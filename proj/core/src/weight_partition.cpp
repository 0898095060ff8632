#include "wirs/weight_partition.hpp"

#include <algorithm>

namespace wirs {

WeightClassPartition WeightClassPartition::build_greedy(const Dataset& dataset, double ratio,
                                                        RatioKind kind) {
  if (dataset.empty()) throw EmptyInputError("weight partition: empty dataset");

  // One sort by (weight desc, id asc); greedy classes are then prefix scans.
  std::vector<std::uint32_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (dataset[a].weight != dataset[b].weight) return dataset[a].weight > dataset[b].weight;
    return a < b;
  });

  WeightClassPartition p;
  p.kind_ = kind;
  p.ratio_ = ratio;

  std::size_t pos = 0;
  while (pos < order.size()) {
    const double w_star = dataset[order[pos]].weight;
    const double floor_w = w_star / ratio;
    std::vector<std::uint32_t> members;
    WeightSum total;
    double w_min = w_star;
    while (pos < order.size() && dataset[order[pos]].weight >= floor_w) {
      members.push_back(order[pos]);
      total.add(dataset[order[pos]].weight);
      w_min = dataset[order[pos]].weight;
      ++pos;
    }
    p.classes_.push_back(std::move(members));
    p.class_total_.push_back(total.value());
    p.class_max_.push_back(w_star);
    p.class_min_.push_back(w_min);
  }

  p.suffix_total_.assign(p.classes_.size() + 1, 0.0);
  for (std::size_t i = p.classes_.size(); i-- > 0;) {
    p.suffix_total_[i] = p.suffix_total_[i + 1] + p.class_total_[i];
  }
  return p;
}

WeightClassPartition WeightClassPartition::build_half_classes(const Dataset& dataset) {
  return build_greedy(dataset, 2.0, RatioKind::HalfClasses);
}

WeightClassPartition WeightClassPartition::build_coarse_groups(const Dataset& dataset,
                                                               double ratio) {
  if (!(ratio > 1.0)) throw BadInputError("coarse groups: ratio must exceed 1");
  return build_greedy(dataset, ratio, RatioKind::CoarseGroups);
}

std::size_t WeightClassPartition::cutoff_index(std::size_t start, double threshold) const {
  const double bar = class_min_[start] / threshold;
  for (std::size_t i = start; i < classes_.size(); ++i) {
    if (class_max_[i] < bar) return i;
  }
  return classes_.size();
}

}  // namespace wirs
