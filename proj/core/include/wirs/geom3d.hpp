#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wirs/common.hpp"
#include "wirs/dataset.hpp"
#include "wirs/detail/slab_index.hpp"

namespace wirs {

// Non-vertical plane z = a*x + b*y + c.
struct Plane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double value_at(double x, double y) const { return a * x + b * y + c; }
};

enum class Orientation : std::uint8_t { Below, Above };

// Primal query "points with z <= a*x + b*y + c" (Below) or ">=" (Above).
struct HalfspaceQuery {
  Orientation orient = Orientation::Below;
  Plane plane;

  // From a general halfspace n.x*x + n.y*y + n.z*z <= d; throws
  // VerticalQueryError when the z coefficient vanishes.
  static HalfspaceQuery from_general(Vec3 normal, double d);
};

// Closed containment test (boundary points count as inside).
inline bool contains(const HalfspaceQuery& h, const Vec3& p) {
  const double v = h.plane.value_at(p.x, p.y);
  return h.orient == Orientation::Below ? p.z <= v : p.z >= v;
}

// Standard duality: point (p1,p2,p3) -> plane z = p1*x + p2*y - p3. A primal
// halfspace z <= q1*x + q2*y - q3 contains p iff the dual plane of p passes
// at-or-above the dual point (q1,q2,q3).
Plane dualize(const Vec3& p);

struct DualQuery {
  Vec3 point;
  Orientation side;  // Below query: test planes at-or-above; Above: at-or-below
};
DualQuery dualize_query(const HalfspaceQuery& h);

// Dual containment predicate matching `contains` exactly.
bool dual_contains(const Plane& dual_plane_of_p, const DualQuery& q);

// Internal below-convention used by the sampling structures: point p maps to
// the plane z = -p1*x - p2*y + p3, a Below query (a,b,c) maps to the point
// (a,b,c), and p is in h iff its plane passes at-or-below the point. Above
// queries are served by a mirror structure on z-negated points, for which the
// query maps to (-a,-b,-c).
inline Plane below_form_plane(const Vec3& p) { return Plane{-p.x, -p.y, p.z}; }
inline Vec3 below_form_point(const Plane& query_plane) {
  return Vec3{query_plane.a, query_plane.b, query_plane.c};
}
inline Vec3 mirror_z(const Vec3& p) { return Vec3{p.x, p.y, -p.z}; }
inline Plane mirror_query_plane(const Plane& query_plane) {
  return Plane{-query_plane.a, -query_plane.b, -query_plane.c};
}

enum class PointLocationMode : std::uint8_t {
  Slab,  // slab-based binary search over the projection
  Walk,  // linear facet walk; correctness-equivalent fallback
};

// Bounding box 4x the slope footprint of a plane set (floor half-extent 1);
// point location is exact inside it, queries outside fall back to scans.
BoundingBox2D envelope_domain(std::span<const Plane> planes);

// Lower envelope of a plane set: per-plane convex cells (the region where the
// plane attains the minimum), clipped to the domain box, with a point-location
// structure over the xy-projection.
class EnvelopeIndex {
 public:
  struct Facet {
    std::uint32_t plane_id = 0;
    std::vector<Vec2> polygon;  // convex, CCW
  };

  static EnvelopeIndex build(std::vector<Plane> planes, PointLocationMode mode);
  static EnvelopeIndex build(std::vector<Plane> planes, BoundingBox2D box,
                             PointLocationMode mode);

  // min over planes of plane(x, y); exact everywhere (out-of-box locations
  // fall back to a direct scan).
  double value_at(double x, double y) const;

  // True iff some input plane passes strictly below q.
  bool below(const Vec3& q) const { return value_at(q.x, q.y) < q.z; }

  // Facet index whose cell contains (x, y); npos when (x, y) is out of box.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t locate(double x, double y) const;

  const std::vector<Facet>& facets() const { return facets_; }
  std::span<const Plane> planes() const { return planes_; }
  const BoundingBox2D& box() const { return box_; }
  std::size_t stored_plane_refs() const { return planes_.size() + facets_.size(); }

 private:
  std::vector<Plane> planes_;
  std::vector<Facet> facets_;
  std::vector<std::uint32_t> envelope_plane_ids_;  // distinct planes on the envelope
  BoundingBox2D box_;
  PointLocationMode mode_ = PointLocationMode::Walk;
  detail::SlabIndex slabs_;
};

// Lemma-3 style group search: ordered groups of planes, balanced recursion,
// per internal node the lower envelope of the left half.
class GroupMaxIndex {
 public:
  static GroupMaxIndex build(std::vector<std::vector<Plane>> groups,
                             PointLocationMode mode = PointLocationMode::Walk);

  // Smallest group index whose planes contain one passing strictly below q;
  // nullopt if no plane passes below q. At most ceil(log2 t) envelope calls;
  // probe_count, when given, accumulates them.
  std::optional<std::size_t> first_nonempty(const Vec3& q,
                                            std::size_t* probe_count = nullptr) const;

  std::size_t group_count() const { return groups_.size(); }
  std::size_t stored_plane_refs() const;

 private:
  struct Node {
    std::size_t lo = 0, hi = 0, mid = 0;
    EnvelopeIndex left_env;
    std::size_t left_child = npos, right_child = npos;
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t build_node(std::size_t lo, std::size_t hi, PointLocationMode mode);

  std::vector<std::vector<Plane>> groups_;
  std::vector<Node> nodes_;
  std::size_t root_ = npos;
};

// Corollary-4 wrapper: max-weight point in a query halfspace, via singleton
// groups sorted by weight (desc, id asc) and a mirror structure for Above.
class RangeMaxIndex {
 public:
  static RangeMaxIndex build(const Dataset& dataset,
                             PointLocationMode mode = PointLocationMode::Walk);

  // nullopt if h contains no point (up to the strict-below boundary rule).
  std::optional<std::uint32_t> range_max(const HalfspaceQuery& h,
                                         std::size_t* probe_count = nullptr) const;

  std::size_t stored_plane_refs() const {
    return below_.stored_plane_refs() + above_.stored_plane_refs();
  }

 private:
  std::vector<std::uint32_t> order_;  // group index -> point id
  GroupMaxIndex below_;
  GroupMaxIndex above_;
};

}  // namespace wirs
