#include "wirs/hull3d.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace wirs {

namespace {

struct Face {
  std::array<std::uint32_t, 3> v;
  Vec3 normal;
  double offset = 0.0;
  bool alive = true;
};

double coordinate_scale(std::span<const Vec3> pts) {
  double s = 1.0;
  for (const Vec3& p : pts) {
    s = std::max({s, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  }
  return s;
}

Face make_face(std::span<const Vec3> pts, std::uint32_t a, std::uint32_t b, std::uint32_t c,
               const Vec3& interior) {
  Face f;
  f.v = {a, b, c};
  f.normal = cross(pts[b] - pts[a], pts[c] - pts[a]);
  f.offset = dot(f.normal, pts[a]);
  if (dot(f.normal, interior) > f.offset) {  // flip to point outward
    std::swap(f.v[1], f.v[2]);
    f.normal = -1.0 * f.normal;
    f.offset = -f.offset;
  }
  return f;
}

}  // namespace

std::vector<HullFace> convex_hull_3d(std::span<const Vec3> pts) {
  const std::size_t n = pts.size();
  if (n < 4) throw BadInputError("convex_hull_3d: need at least 4 points");
  const double scale = coordinate_scale(pts);
  const double eps = 1e-12 * scale;

  // Initial tetrahedron from spread-out points.
  std::uint32_t i0 = 0;
  for (std::uint32_t i = 1; i < n; ++i) {
    const Vec3 &p = pts[i], &q = pts[i0];
    if (p.x < q.x || (p.x == q.x && (p.y < q.y || (p.y == q.y && p.z < q.z)))) i0 = i;
  }
  std::uint32_t i1 = i0;
  double best = -1.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const Vec3 d = pts[i] - pts[i0];
    const double len = dot(d, d);
    if (len > best) {
      best = len;
      i1 = i;
    }
  }
  if (best <= eps * eps) throw BadInputError("convex_hull_3d: degenerate (all points equal)");
  std::uint32_t i2 = i0;
  best = -1.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const Vec3 c = cross(pts[i1] - pts[i0], pts[i] - pts[i0]);
    const double len = dot(c, c);
    if (len > best) {
      best = len;
      i2 = i;
    }
  }
  if (best <= eps * eps * eps * eps) {
    throw BadInputError("convex_hull_3d: degenerate (collinear points)");
  }
  const Vec3 base_n = cross(pts[i1] - pts[i0], pts[i2] - pts[i0]);
  std::uint32_t i3 = i0;
  best = -1.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double d = std::abs(dot(base_n, pts[i] - pts[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps * std::sqrt(dot(base_n, base_n))) {
    throw BadInputError("convex_hull_3d: degenerate (coplanar points)");
  }

  const Vec3 interior = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
  std::vector<Face> faces;
  faces.push_back(make_face(pts, i0, i1, i2, interior));
  faces.push_back(make_face(pts, i0, i1, i3, interior));
  faces.push_back(make_face(pts, i0, i2, i3, interior));
  faces.push_back(make_face(pts, i1, i2, i3, interior));

  std::vector<std::size_t> visible;
  std::unordered_set<std::uint64_t> visible_edges;
  for (std::uint32_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    visible.clear();
    visible_edges.clear();
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      const double mag = std::sqrt(dot(faces[f].normal, faces[f].normal));
      if (dot(faces[f].normal, pts[p]) - faces[f].offset > eps * std::max(1.0, mag)) {
        visible.push_back(f);
      }
    }
    if (visible.empty()) continue;
    const auto edge_key = [](std::uint32_t a, std::uint32_t b) {
      return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      visible_edges.insert(edge_key(v[0], v[1]));
      visible_edges.insert(edge_key(v[1], v[2]));
      visible_edges.insert(edge_key(v[2], v[0]));
    }
    // Horizon: directed edges of visible faces whose reverse is not visible.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> horizon;
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      const std::pair<std::uint32_t, std::uint32_t> edges[3] = {
          {v[0], v[1]}, {v[1], v[2]}, {v[2], v[0]}};
      for (const auto& e : edges) {
        if (!visible_edges.count(edge_key(e.second, e.first))) horizon.push_back(e);
      }
    }
    for (std::size_t f : visible) faces[f].alive = false;
    for (const auto& e : horizon) {
      faces.push_back(make_face(pts, e.first, e.second, p, interior));
    }
  }

  std::vector<HullFace> out;
  for (const Face& f : faces) {
    if (f.alive) out.push_back(HullFace{f.v, f.normal, f.offset});
  }
  return out;
}

std::vector<HullFace> upper_hull_3d(std::span<const Vec3> pts) {
  std::vector<HullFace> faces = convex_hull_3d(pts);
  std::vector<HullFace> upper;
  for (const HullFace& f : faces) {
    const double mag = std::sqrt(dot(f.normal, f.normal));
    if (f.normal.z > 1e-12 * mag) upper.push_back(f);
  }
  return upper;
}

bool upper_hull_valid(std::span<const Vec3> pts, std::span<const HullFace> faces, double tol) {
  for (const HullFace& f : faces) {
    for (const Vec3& p : pts) {
      const double mag = std::sqrt(dot(f.normal, f.normal));
      if (dot(f.normal, p) - f.offset > tol * std::max(1.0, mag)) return false;
    }
  }
  return true;
}

}  // namespace wirs
