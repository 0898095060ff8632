#include "wirs/kd_partition.hpp"

#include <algorithm>
#include <cmath>

namespace wirs {

namespace {

double axis_coord(const WeightedPoint& p, int axis) {
  return axis == 0 ? p.pos.x : (axis == 1 ? p.pos.y : p.pos.z);
}

void split_recursive(std::vector<WeightedPoint>& pts, std::size_t lo, std::size_t hi, int axis,
                     std::size_t max_cell, std::vector<std::pair<std::size_t, std::size_t>>* out) {
  if (hi - lo <= max_cell) {
    out->emplace_back(lo, hi);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(pts.begin() + static_cast<std::ptrdiff_t>(lo),
                   pts.begin() + static_cast<std::ptrdiff_t>(mid),
                   pts.begin() + static_cast<std::ptrdiff_t>(hi),
                   [axis](const WeightedPoint& a, const WeightedPoint& b) {
                     const double ca = axis_coord(a, axis), cb = axis_coord(b, axis);
                     if (ca != cb) return ca < cb;
                     return a.id < b.id;
                   });
  split_recursive(pts, lo, mid, (axis + 1) % 3, max_cell, out);
  split_recursive(pts, mid, hi, (axis + 1) % 3, max_cell, out);
}

}  // namespace

KdPartition KdPartition::build(std::span<const WeightedPoint> points, std::size_t r) {
  if (points.empty()) throw EmptyInputError("kd partition: no points");
  if (r < 1) throw BadInputError("kd partition: r must be >= 1");

  std::vector<WeightedPoint> pts(points.begin(), points.end());
  const std::size_t max_cell = std::max<std::size_t>(
      1, (2 * pts.size() + r - 1) / r);

  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  split_recursive(pts, 0, pts.size(), 0, max_cell, &ranges);

  KdPartition part;
  part.cells_.reserve(ranges.size());
  for (const auto& [lo, hi] : ranges) {
    Cell cell;
    cell.lo = cell.hi = pts[lo].pos;
    std::vector<double> w;
    w.reserve(hi - lo);
    WeightSum total;
    for (std::size_t i = lo; i < hi; ++i) {
      const WeightedPoint& p = pts[i];
      cell.ids.push_back(p.id);
      cell.lo = Vec3{std::min(cell.lo.x, p.pos.x), std::min(cell.lo.y, p.pos.y),
                     std::min(cell.lo.z, p.pos.z)};
      cell.hi = Vec3{std::max(cell.hi.x, p.pos.x), std::max(cell.hi.y, p.pos.y),
                     std::max(cell.hi.z, p.pos.z)};
      w.push_back(p.weight);
      total.add(p.weight);
    }
    cell.total = total.value();
    cell.alias = AliasTable::build(w);
    part.cells_.push_back(std::move(cell));
  }
  return part;
}

CellSide KdPartition::classify(const Cell& cell, const HalfspaceQuery& h) {
  // g(p) = p.z - plane(p.x, p.y); Below-halfspace membership is g <= 0.
  // g is linear, so its extremes over the box sit at corners.
  const double a = h.plane.a, b = h.plane.b;
  const double ax_max = a >= 0.0 ? a * cell.hi.x : a * cell.lo.x;
  const double ax_min = a >= 0.0 ? a * cell.lo.x : a * cell.hi.x;
  const double by_max = b >= 0.0 ? b * cell.hi.y : b * cell.lo.y;
  const double by_min = b >= 0.0 ? b * cell.lo.y : b * cell.hi.y;
  double g_min = cell.lo.z - ax_max - by_max - h.plane.c;
  double g_max = cell.hi.z - ax_min - by_min - h.plane.c;
  if (h.orient == Orientation::Above) {
    const double lo = -g_max, hi = -g_min;
    g_min = lo;
    g_max = hi;
  }
  if (g_max < 0.0) return CellSide::Inside;
  if (g_min > 0.0) return CellSide::Outside;
  return CellSide::Straddling;
}

std::size_t KdPartition::straddling_count(const HalfspaceQuery& h) const {
  std::size_t n = 0;
  for (const Cell& c : cells_) {
    if (classify(c, h) == CellSide::Straddling) ++n;
  }
  return n;
}

}  // namespace wirs
