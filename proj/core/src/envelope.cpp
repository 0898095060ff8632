#include <algorithm>
#include <cmath>
#include <limits>

#include "wirs/geom3d.hpp"

namespace wirs {

namespace {

constexpr double kEps = 1e-12;

// Keep the side fa*x + fb*y + fc <= 0 (Sutherland-Hodgman).
std::vector<Vec2> clip_keep_nonpositive(const std::vector<Vec2>& poly, double fa, double fb,
                                        double fc) {
  std::vector<Vec2> out;
  if (poly.empty()) return out;
  out.reserve(poly.size() + 2);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& s = poly[i];
    const Vec2& e = poly[(i + 1) % n];
    const double fs = fa * s.x + fb * s.y + fc;
    const double fe = fa * e.x + fb * e.y + fc;
    if (fs <= 0.0) out.push_back(s);
    if ((fs < 0.0 && fe > 0.0) || (fs > 0.0 && fe < 0.0)) {
      const double t = fs / (fs - fe);
      out.push_back(Vec2{s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)});
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

}  // namespace

BoundingBox2D envelope_domain(std::span<const Plane> planes) {
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
  if (!planes.empty()) {
    xlo = xhi = planes[0].a;
    ylo = yhi = planes[0].b;
    for (const Plane& p : planes) {
      xlo = std::min(xlo, p.a);
      xhi = std::max(xhi, p.a);
      ylo = std::min(ylo, p.b);
      yhi = std::max(yhi, p.b);
    }
  }
  const double cx = (xlo + xhi) / 2.0, cy = (ylo + yhi) / 2.0;
  const double half = 4.0 * std::max({1.0, (xhi - xlo) / 2.0, (yhi - ylo) / 2.0});
  return BoundingBox2D{cx - half, cx + half, cy - half, cy + half};
}

EnvelopeIndex EnvelopeIndex::build(std::vector<Plane> planes, PointLocationMode mode) {
  const BoundingBox2D box = envelope_domain(planes);
  return build(std::move(planes), box, mode);
}

EnvelopeIndex EnvelopeIndex::build(std::vector<Plane> planes, BoundingBox2D box,
                                   PointLocationMode mode) {
  if (planes.empty()) throw EmptyInputError("envelope: no planes");
  EnvelopeIndex env;
  env.planes_ = std::move(planes);
  env.box_ = box;
  env.mode_ = mode;
  const std::size_t m = env.planes_.size();

  const std::vector<Vec2> box_poly = {
      {box.xlo, box.ylo}, {box.xhi, box.ylo}, {box.xhi, box.yhi}, {box.xlo, box.yhi}};

  // Clip order shuffled once so dominated cells empty out quickly.
  std::vector<std::uint32_t> order(m);
  for (std::size_t j = 0; j < m; ++j) order[j] = static_cast<std::uint32_t>(j);
  std::uint64_t state = splitmix64(m);
  for (std::size_t j = m; j > 1; --j) {
    state = splitmix64(state);
    std::swap(order[j - 1], order[state % j]);
  }

  for (std::size_t i = 0; i < m; ++i) {
    const Plane& pi = env.planes_[i];
    std::vector<Vec2> cell = box_poly;
    for (std::uint32_t j : order) {
      if (j == i) continue;
      const Plane& pj = env.planes_[j];
      const double da = pi.a - pj.a, db = pi.b - pj.b, dc = pi.c - pj.c;
      if (da == 0.0 && db == 0.0) {
        if (dc > 0.0 || (dc == 0.0 && i > j)) {
          cell.clear();  // parallel plane dominates (ties break by id)
          break;
        }
        continue;
      }
      cell = clip_keep_nonpositive(cell, da, db, dc);
      if (cell.empty()) break;
    }
    if (!cell.empty()) {
      env.envelope_plane_ids_.push_back(static_cast<std::uint32_t>(i));
      env.facets_.push_back(Facet{static_cast<std::uint32_t>(i), std::move(cell)});
    }
  }

  if (mode == PointLocationMode::Slab) {
    const double eps = kEps * std::max(box.xhi - box.xlo, box.yhi - box.ylo);
    env.slabs_.build(
        env.facets_.size(),
        [&](std::size_t i) -> const std::vector<Vec2>& { return env.facets_[i].polygon; }, eps);
  }
  return env;
}

std::size_t EnvelopeIndex::locate(double x, double y) const {
  if (!box_.inside(x, y)) return npos;

  if (mode_ == PointLocationMode::Slab) {
    const std::size_t hit = slabs_.locate(
        x, y, [&](std::size_t i) -> const std::vector<Vec2>& { return facets_[i].polygon; });
    if (hit != detail::SlabIndex::npos) return hit;
    return npos;
  }

  // Walk: the cell containing (x, y) is the facet whose plane attains the min.
  std::size_t best = npos;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t fi = 0; fi < facets_.size(); ++fi) {
    const double v = planes_[facets_[fi].plane_id].value_at(x, y);
    if (v < best_v) {
      best_v = v;
      best = fi;
    }
  }
  return best;
}

double EnvelopeIndex::value_at(double x, double y) const {
  if (box_.inside(x, y)) {
    if (mode_ == PointLocationMode::Slab) {
      const std::size_t fi = locate(x, y);
      if (fi != npos) return planes_[facets_[fi].plane_id].value_at(x, y);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t id : envelope_plane_ids_) {
      best = std::min(best, planes_[id].value_at(x, y));
    }
    return best;
  }
  // Outside the domain the envelope plane set may be incomplete; scan all.
  double best = std::numeric_limits<double>::infinity();
  for (const Plane& p : planes_) best = std::min(best, p.value_at(x, y));
  return best;
}

GroupMaxIndex GroupMaxIndex::build(std::vector<std::vector<Plane>> groups,
                                   PointLocationMode mode) {
  if (groups.empty()) throw EmptyInputError("group max: no groups");
  for (const auto& g : groups) {
    if (g.empty()) throw BadInputError("group max: empty group");
  }
  GroupMaxIndex idx;
  idx.groups_ = std::move(groups);
  idx.root_ = idx.build_node(0, idx.groups_.size(), mode);
  return idx;
}

std::size_t GroupMaxIndex::build_node(std::size_t lo, std::size_t hi, PointLocationMode mode) {
  if (hi - lo < 2) return npos;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::vector<Plane> left;
  for (std::size_t g = lo; g < mid; ++g) {
    left.insert(left.end(), groups_[g].begin(), groups_[g].end());
  }
  Node node;
  node.lo = lo;
  node.hi = hi;
  node.mid = mid;
  node.left_env = EnvelopeIndex::build(std::move(left), mode);
  const std::size_t self = nodes_.size();
  nodes_.push_back(std::move(node));
  const std::size_t lc = build_node(lo, mid, mode);
  const std::size_t rc = build_node(mid, hi, mode);
  nodes_[self].left_child = lc;
  nodes_[self].right_child = rc;
  return self;
}

std::optional<std::size_t> GroupMaxIndex::first_nonempty(const Vec3& q,
                                                         std::size_t* probe_count) const {
  bool certified = false;
  std::size_t node = root_;
  std::size_t lo = 0, hi = groups_.size();
  while (hi - lo >= 2) {
    const Node& nd = nodes_[node];
    if (probe_count) ++(*probe_count);
    if (nd.left_env.below(q)) {
      certified = true;
      hi = nd.mid;
      node = nd.left_child;
    } else {
      lo = nd.mid;
      node = nd.right_child;
    }
  }
  if (certified) return lo;
  for (const Plane& p : groups_[lo]) {
    if (p.value_at(q.x, q.y) < q.z) return lo;
  }
  return std::nullopt;
}

std::size_t GroupMaxIndex::stored_plane_refs() const {
  std::size_t total = 0;
  for (const Node& nd : nodes_) total += nd.left_env.stored_plane_refs();
  for (const auto& g : groups_) total += g.size();
  return total;
}

RangeMaxIndex RangeMaxIndex::build(const Dataset& dataset, PointLocationMode mode) {
  if (dataset.empty()) throw EmptyInputError("range max: empty dataset");
  RangeMaxIndex idx;
  idx.order_.resize(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    idx.order_[i] = static_cast<std::uint32_t>(i);
  }
  std::sort(idx.order_.begin(), idx.order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (dataset[a].weight != dataset[b].weight) return dataset[a].weight > dataset[b].weight;
    return a < b;
  });
  std::vector<std::vector<Plane>> below_groups(dataset.size()), above_groups(dataset.size());
  for (std::size_t g = 0; g < idx.order_.size(); ++g) {
    const Vec3& pos = dataset[idx.order_[g]].pos;
    below_groups[g] = {below_form_plane(pos)};
    above_groups[g] = {below_form_plane(mirror_z(pos))};
  }
  idx.below_ = GroupMaxIndex::build(std::move(below_groups), mode);
  idx.above_ = GroupMaxIndex::build(std::move(above_groups), mode);
  return idx;
}

std::optional<std::uint32_t> RangeMaxIndex::range_max(const HalfspaceQuery& h,
                                                      std::size_t* probe_count) const {
  std::optional<std::size_t> g;
  if (h.orient == Orientation::Below) {
    g = below_.first_nonempty(below_form_point(h.plane), probe_count);
  } else {
    g = above_.first_nonempty(below_form_point(mirror_query_plane(h.plane)), probe_count);
  }
  if (!g) return std::nullopt;
  return order_[*g];
}

}  // namespace wirs
