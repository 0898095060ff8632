#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wirs/alias.hpp"
#include "wirs/geom3d.hpp"
#include "wirs/random.hpp"

namespace wirs {

struct CuttingConfig {
  int k_min = 32;           // smallest ladder level; smaller queries resolve here
  double c_size = 8.0;      // triangle count <= c_size * n / k
  double c_conf = 8.0;      // max conflict list <= c_conf * k
  double c_query = 32.0;    // |conflict(tau)| <= c_query * max(k_min, |conflict(q)|)
  double sample_mult = 2.0;  // plane sample rate sample_mult / k (adaptive locations)
  double grid_mult = 2.0;    // lattice locations ~ grid_mult * n / k
  int raise_mult = 2;        // vertex heights at the (raise_mult*k)-th order statistic
  int max_retries = 10;
  PointLocationMode location = PointLocationMode::Slab;
};

// One approximate k-level: a concave triangulated roof certified to lie above
// the k-level (every triangle's three vertex conflict lists share at least
// k+1 planes) and carrying per-triangle conflict lists, weight totals, and
// alias tables.
class ApproxLevel {
 public:
  struct Triangle {
    std::array<Vec3, 3> verts;
    Plane support;                        // plane through the three vertices
    std::vector<std::uint32_t> conflict;  // sorted plane ids, union of vertex lists
    double conflict_weight = 0.0;
    AliasTable alias;
  };

  int k() const { return k_; }
  bool saturated() const { return saturated_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const BoundingBox2D& domain() const { return box_; }

  // Roof value at (x, y); meaningful inside the domain box.
  double surface_at(double x, double y) const;
  // Triangle lying on-or-above q, or nullopt (q above the roof / out of box).
  std::optional<std::size_t> covering_triangle(const Vec3& q) const;
  bool covers(const Vec3& q) const { return covering_triangle(q).has_value(); }

  std::size_t conflict_entry_count() const;
  std::size_t max_conflict_size() const;

 private:
  friend class LevelBuilder;
  int k_ = 0;
  bool saturated_ = false;
  BoundingBox2D box_;
  PointLocationMode mode_ = PointLocationMode::Slab;
  std::vector<Triangle> triangles_;
  detail::SlabIndex slabs_;
  std::vector<std::vector<Vec2>> tri_polys_;  // xy projections for the slab index

  std::size_t locate(double x, double y) const;
  void build_slabs();
};

// Standalone approximate k-level construction (randomized with verification
// and retry). Unit weights are used when `weights` is empty.
ApproxLevel build_level(std::span<const Plane> planes, std::span<const double> weights, int k,
                        RandomSource& rng, const CuttingConfig& config = {});

// Hierarchy of approximate k_i-levels, k_i = 2^i from k_min up to n/2, plus a
// saturated top level (raised to the maximum plane) so that any in-domain
// query with |conflict(q)| <= n/2 is covered. Level surfaces are nested, so
// the covering predicate is monotone in the level index.
class Hierarchy {
 public:
  static Hierarchy build(std::vector<Plane> planes, std::vector<double> weights,
                         const CuttingConfig& config, std::uint64_t seed);

  struct Hit {
    std::size_t level_index = 0;
    std::size_t triangle_index = 0;
  };

  // Smallest level covering q, found by binary search over levels;
  // nullopt means q is out of the domain box or above even the saturated
  // level (|conflict(q)| > n/2) - the caller falls back to a full scan.
  std::optional<Hit> query(const Vec3& q, std::size_t* probe_count = nullptr) const;

  std::size_t level_count() const { return levels_.size(); }
  const ApproxLevel& level(std::size_t i) const { return levels_[i]; }
  const ApproxLevel::Triangle& triangle(const Hit& h) const {
    return levels_[h.level_index].triangles()[h.triangle_index];
  }
  std::size_t plane_count() const { return planes_.size(); }
  std::span<const Plane> planes() const { return planes_; }

  // Total conflict entries across all levels (space accounting).
  std::size_t conflict_entry_count() const;

 private:
  std::vector<Plane> planes_;
  std::vector<double> weights_;
  std::vector<ApproxLevel> levels_;
};

}  // namespace wirs
