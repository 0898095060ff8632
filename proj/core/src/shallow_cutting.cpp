#include "wirs/shallow_cutting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "wirs/hull3d.hpp"

namespace wirs {

namespace {

// j-th smallest (1-indexed, clamped) of the plane values at (x, y).
double order_stat_at(std::span<const Plane> planes, double x, double y, std::size_t j,
                     std::vector<double>& scratch) {
  scratch.clear();
  scratch.reserve(planes.size());
  for (const Plane& p : planes) scratch.push_back(p.value_at(x, y));
  const std::size_t idx = std::min(j, scratch.size()) - 1;
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(idx),
                   scratch.end());
  return scratch[idx];
}

// Sorted-list 3-way intersection size with early exit once `target` is reached.
std::size_t intersect3_at_least(const std::vector<std::uint32_t>& a,
                                const std::vector<std::uint32_t>& b,
                                const std::vector<std::uint32_t>& c, std::size_t target) {
  std::size_t ia = 0, ib = 0, ic = 0, hits = 0;
  while (ia < a.size() && ib < b.size() && ic < c.size()) {
    const std::uint32_t va = a[ia], vb = b[ib], vc = c[ic];
    const std::uint32_t m = std::max({va, vb, vc});
    if (va == vb && vb == vc) {
      if (++hits >= target) return hits;
      ++ia, ++ib, ++ic;
      continue;
    }
    if (va < m) ++ia;
    if (vb < m) ++ib;
    if (vc < m) ++ic;
  }
  return hits;
}

struct LevelSpec {
  int nominal_k = 1;
  std::size_t raise_index = 1;  // order statistic for vertex heights
  std::size_t cert_target = 1;  // required 3-way conflict intersection
  std::size_t jitter_rank = 0;  // grows with the level index to keep surfaces nested
};

double plane_value_scale(std::span<const Plane> planes, const BoundingBox2D& box) {
  double s = 1.0;
  const double hx = std::max(std::abs(box.xlo), std::abs(box.xhi));
  const double hy = std::max(std::abs(box.ylo), std::abs(box.yhi));
  for (const Plane& p : planes) {
    s = std::max(s, std::abs(p.a) * hx + std::abs(p.b) * hy + std::abs(p.c));
  }
  return s;
}

class Builder {
 public:
  Builder(std::span<const Plane> planes, std::span<const double> weights,
          const CuttingConfig& cfg, BoundingBox2D box)
      : planes_(planes), weights_(weights), cfg_(cfg), box_(box) {
    zscale_ = plane_value_scale(planes, box);
  }

  // One verified level; throws ConstructionFailedError after the retry budget.
  ApproxLevel build(const LevelSpec& spec, RandomSource& rng,
                    const std::vector<Vec2>& carried_locations) {
    const std::size_t m = planes_.size();
    for (int attempt = 0; attempt < cfg_.max_retries; ++attempt) {
      const double boost = 1.0 + 0.5 * attempt;
      std::vector<Vec2> locations = lattice_locations(spec.nominal_k);
      sample_envelope_locations(spec.nominal_k, boost, rng, &locations);
      locations.insert(locations.end(), carried_locations.begin(), carried_locations.end());
      dedup(&locations);

      std::vector<Vec3> raised(locations.size());
      std::vector<double> scratch;
      const double cx = (box_.xlo + box_.xhi) / 2.0, cy = (box_.ylo + box_.yhi) / 2.0;
      const double wx = box_.xhi - box_.xlo, wy = box_.yhi - box_.ylo;
      for (std::size_t i = 0; i < locations.size(); ++i) {
        const double z =
            order_stat_at(planes_, locations[i].x, locations[i].y, spec.raise_index, scratch);
        // A tiny convex sag keeps the upper hull sparse on near-flat height
        // fields; strictly level-increasing jitter keeps surfaces nested and
        // the hull in general position.
        const double rx = (locations[i].x - cx) / wx, ry = (locations[i].y - cy) / wy;
        const double sag = 1e-7 * zscale_ * (rx * rx + ry * ry);
        const std::uint64_t h = splitmix64(
            splitmix64(0xA11CE ^ static_cast<std::uint64_t>(attempt)) ^ (i * 0x9E3779B9ULL));
        const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
        const double jit =
            1e-9 * zscale_ * (2.0 * static_cast<double>(spec.jitter_rank) + 1.0 + u);
        raised[i] = Vec3{locations[i].x, locations[i].y, z + sag + jit};
      }

      std::vector<HullFace> faces;
      try {
        faces = upper_hull_3d(raised);
      } catch (const BadInputError&) {
        continue;
      }
      if (faces.empty()) continue;
      if (!upper_hull_valid(raised, faces, 1e-7 * zscale_)) continue;

      ApproxLevel level;
      if (!assemble(spec, raised, faces, &level)) continue;
      if (!verify(spec, level)) continue;
      return level;
    }
    throw ConstructionFailedError("approximate level construction exhausted retries (k=" +
                                  std::to_string(spec.nominal_k) + ")");
  }

 private:
  std::vector<Vec2> lattice_locations(int k) const {
    const double per_axis =
        std::sqrt(cfg_.grid_mult * static_cast<double>(planes_.size()) / std::max(1, k));
    const std::size_t side = std::max<std::size_t>(2, static_cast<std::size_t>(per_axis) + 2);
    std::vector<Vec2> out;
    out.reserve(side * side);
    for (std::size_t i = 0; i < side; ++i) {
      for (std::size_t j = 0; j < side; ++j) {
        const double fx = static_cast<double>(i) / static_cast<double>(side - 1);
        const double fy = static_cast<double>(j) / static_cast<double>(side - 1);
        out.push_back(Vec2{box_.xlo + fx * (box_.xhi - box_.xlo),
                           box_.ylo + fy * (box_.yhi - box_.ylo)});
      }
    }
    return out;
  }

  // Vertices of the lower envelope of a plane sample: adaptive locations that
  // track where the shallow levels bend.
  void sample_envelope_locations(int k, double boost, RandomSource& rng,
                                 std::vector<Vec2>* out) const {
    const double p = std::min(1.0, cfg_.sample_mult * boost / static_cast<double>(k));
    std::vector<Plane> sample;
    for (const Plane& pl : planes_) {
      if (rng.draw_unit() < p) sample.push_back(pl);
    }
    if (sample.empty()) return;
    const EnvelopeIndex env =
        EnvelopeIndex::build(std::move(sample), box_, PointLocationMode::Walk);
    for (const auto& facet : env.facets()) {
      for (const Vec2& v : facet.polygon) out->push_back(v);
    }
  }

  void dedup(std::vector<Vec2>* locations) const {
    const double sx = (box_.xhi - box_.xlo) * 1e-9;
    const double sy = (box_.yhi - box_.ylo) * 1e-9;
    std::unordered_map<std::uint64_t, bool> seen;
    std::vector<Vec2> out;
    out.reserve(locations->size());
    for (const Vec2& v : *locations) {
      const auto qx = static_cast<std::int64_t>(std::floor((v.x - box_.xlo) / sx));
      const auto qy = static_cast<std::int64_t>(std::floor((v.y - box_.ylo) / sy));
      const std::uint64_t key =
          splitmix64(static_cast<std::uint64_t>(qx) * 0x1000193ULL ^ static_cast<std::uint64_t>(qy));
      if (seen.emplace(key, true).second) out.push_back(v);
    }
    *locations = std::move(out);
  }

  bool assemble(const LevelSpec& spec, const std::vector<Vec3>& raised,
                const std::vector<HullFace>& faces, ApproxLevel* level) const {
    level->k_ = spec.nominal_k;
    level->saturated_ = spec.raise_index >= planes_.size();
    level->box_ = box_;
    level->mode_ = cfg_.location;

    // Conflict lists per distinct hull vertex.
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> vertex_conflicts;
    for (const HullFace& f : faces) {
      for (std::uint32_t v : f.v) {
        if (vertex_conflicts.count(v)) continue;
        std::vector<std::uint32_t> list;
        const Vec3& p = raised[v];
        for (std::size_t i = 0; i < planes_.size(); ++i) {
          if (planes_[i].value_at(p.x, p.y) <= p.z) list.push_back(static_cast<std::uint32_t>(i));
        }
        vertex_conflicts.emplace(v, std::move(list));
      }
    }

    level->triangles_.reserve(faces.size());
    for (const HullFace& f : faces) {
      ApproxLevel::Triangle tri;
      tri.verts = {raised[f.v[0]], raised[f.v[1]], raised[f.v[2]]};
      if (f.normal.z == 0.0) return false;
      tri.support =
          Plane{-f.normal.x / f.normal.z, -f.normal.y / f.normal.z, f.offset / f.normal.z};

      const auto& c0 = vertex_conflicts[f.v[0]];
      const auto& c1 = vertex_conflicts[f.v[1]];
      const auto& c2 = vertex_conflicts[f.v[2]];
      if (intersect3_at_least(c0, c1, c2, spec.cert_target) < spec.cert_target) return false;

      std::vector<std::uint32_t> merged;
      merged.reserve(c0.size() + c1.size() + c2.size());
      std::merge(c0.begin(), c0.end(), c1.begin(), c1.end(), std::back_inserter(merged));
      std::vector<std::uint32_t> unioned;
      unioned.reserve(merged.size() + c2.size());
      std::merge(merged.begin(), merged.end(), c2.begin(), c2.end(),
                 std::back_inserter(unioned));
      unioned.erase(std::unique(unioned.begin(), unioned.end()), unioned.end());
      tri.conflict = std::move(unioned);

      WeightSum total;
      std::vector<double> w(tri.conflict.size());
      for (std::size_t i = 0; i < tri.conflict.size(); ++i) {
        w[i] = weights_.empty() ? 1.0 : weights_[tri.conflict[i]];
        total.add(w[i]);
      }
      tri.conflict_weight = total.value();
      tri.alias = AliasTable::build(w);
      level->triangles_.push_back(std::move(tri));
    }

    if (level->mode_ == PointLocationMode::Slab) level->build_slabs();
    return true;
  }

  bool verify(const LevelSpec& spec, const ApproxLevel& level) const {
    const double m = static_cast<double>(planes_.size());
    if (static_cast<double>(level.triangles().size()) >
        cfg_.c_size * m / static_cast<double>(spec.nominal_k)) {
      return false;
    }
    for (const auto& tri : level.triangles()) {
      if (static_cast<double>(tri.conflict.size()) >
          cfg_.c_conf * static_cast<double>(spec.nominal_k)) {
        return false;
      }
    }
    return true;
  }

  std::span<const Plane> planes_;
  std::span<const double> weights_;
  const CuttingConfig& cfg_;
  BoundingBox2D box_;
  double zscale_ = 1.0;
};

}  // namespace

double ApproxLevel::surface_at(double x, double y) const {
  // The roof is concave, so the containing facet's plane attains the min.
  const std::size_t t = locate(x, y);
  if (t == static_cast<std::size_t>(-1)) return -std::numeric_limits<double>::infinity();
  return triangles_[t].support.value_at(x, y);
}

std::size_t ApproxLevel::locate(double x, double y) const {
  if (mode_ == PointLocationMode::Slab) {
    const std::size_t hit = slabs_.locate(
        x, y, [&](std::size_t i) -> const std::vector<Vec2>& { return tri_polys_[i]; });
    if (hit != detail::SlabIndex::npos) return hit;
    // eps-boundary miss: fall through to the concave-roof walk
  }
  std::size_t best = static_cast<std::size_t>(-1);
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const double v = triangles_[i].support.value_at(x, y);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

void ApproxLevel::build_slabs() {
  tri_polys_.clear();
  tri_polys_.reserve(triangles_.size());
  for (const Triangle& t : triangles_) {
    tri_polys_.push_back({Vec2{t.verts[0].x, t.verts[0].y}, Vec2{t.verts[1].x, t.verts[1].y},
                          Vec2{t.verts[2].x, t.verts[2].y}});
  }
  const double eps = 1e-12 * std::max(box_.xhi - box_.xlo, box_.yhi - box_.ylo);
  slabs_.build(
      tri_polys_.size(), [&](std::size_t i) -> const std::vector<Vec2>& { return tri_polys_[i]; },
      eps);
}

std::optional<std::size_t> ApproxLevel::covering_triangle(const Vec3& q) const {
  if (!box_.inside(q.x, q.y)) return std::nullopt;
  const std::size_t t = locate(q.x, q.y);
  if (t == static_cast<std::size_t>(-1)) return std::nullopt;
  if (triangles_[t].support.value_at(q.x, q.y) >= q.z) return t;
  return std::nullopt;
}

std::size_t ApproxLevel::conflict_entry_count() const {
  std::size_t n = 0;
  for (const Triangle& t : triangles_) n += t.conflict.size();
  return n;
}

std::size_t ApproxLevel::max_conflict_size() const {
  std::size_t n = 0;
  for (const Triangle& t : triangles_) n = std::max(n, t.conflict.size());
  return n;
}

ApproxLevel build_level(std::span<const Plane> planes, std::span<const double> weights, int k,
                        RandomSource& rng, const CuttingConfig& config) {
  if (planes.empty()) throw EmptyInputError("build_level: no planes");
  if (k < 1 || static_cast<std::size_t>(k) * 2 > planes.size()) {
    throw BadInputError("build_level: need 1 <= k <= n/2");
  }
  Builder builder(planes, weights, config, envelope_domain(planes));
  LevelSpec spec;
  spec.nominal_k = k;
  spec.raise_index =
      std::min<std::size_t>(static_cast<std::size_t>(config.raise_mult) * k, planes.size());
  spec.cert_target = std::min<std::size_t>(static_cast<std::size_t>(k) + 1, planes.size());
  return builder.build(spec, rng, {});
}

Hierarchy Hierarchy::build(std::vector<Plane> planes, std::vector<double> weights,
                           const CuttingConfig& config, std::uint64_t seed) {
  if (planes.empty()) throw EmptyInputError("hierarchy: no planes");
  if (!weights.empty() && weights.size() != planes.size()) {
    throw BadInputError("hierarchy: weight/plane count mismatch");
  }
  Hierarchy h;
  h.planes_ = std::move(planes);
  h.weights_ = std::move(weights);
  const std::size_t m = h.planes_.size();

  std::vector<LevelSpec> specs;
  for (std::size_t k = static_cast<std::size_t>(config.k_min); 2 * k <= m; k *= 2) {
    LevelSpec s;
    s.nominal_k = static_cast<int>(k);
    s.raise_index = std::min(static_cast<std::size_t>(config.raise_mult) * k, m);
    s.cert_target = std::min(k + 1, m);
    specs.push_back(s);
  }
  {
    // Saturated top: raised to the maximum plane, certifying the (n/2)-level,
    // so an uncovered in-domain query has |conflict(q)| > n/2.
    LevelSpec s;
    s.nominal_k = static_cast<int>((m + 1) / 2);
    s.raise_index = m;
    s.cert_target = std::min(static_cast<std::size_t>(s.nominal_k) + 1, m);
    specs.push_back(s);
  }
  for (std::size_t i = 0; i < specs.size(); ++i) specs[i].jitter_rank = i;

  Builder builder(h.planes_, h.weights_, config, envelope_domain(h.planes_));
  RandomSource rng(splitmix64(seed ^ 0x5ca1ab1eULL));
  std::vector<Vec2> carried;  // previous level's vertex locations keep surfaces nested
  for (const LevelSpec& spec : specs) {
    ApproxLevel level = builder.build(spec, rng, carried);
    carried.clear();
    for (const auto& tri : level.triangles()) {
      for (const Vec3& v : tri.verts) carried.push_back(Vec2{v.x, v.y});
    }
    h.levels_.push_back(std::move(level));
  }
  return h;
}

std::optional<Hierarchy::Hit> Hierarchy::query(const Vec3& q, std::size_t* probe_count) const {
  const auto covers = [&](std::size_t i) {
    if (probe_count) ++(*probe_count);
    return levels_[i].covers(q);
  };
  if (!covers(levels_.size() - 1)) return std::nullopt;
  std::size_t lo = 0, hi = levels_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (covers(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const auto tri = levels_[lo].covering_triangle(q);
  if (!tri) return std::nullopt;  // eps disagreement at the boundary; treat as overflow
  return Hit{lo, *tri};
}

std::size_t Hierarchy::conflict_entry_count() const {
  std::size_t n = 0;
  for (const ApproxLevel& l : levels_) n += l.conflict_entry_count();
  return n;
}

}  // namespace wirs
