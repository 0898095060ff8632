#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wirs/common.hpp"

namespace wirs {

struct HullFace {
  std::array<std::uint32_t, 3> v;  // CCW from outside
  Vec3 normal;                     // outward, not normalized
  double offset = 0.0;             // dot(normal, p) == offset on the face plane
};

// Full 3D convex hull (incremental, eps-tolerant). Input must contain four
// affinely independent points; throws BadInputError otherwise.
std::vector<HullFace> convex_hull_3d(std::span<const Vec3> pts);

// Upward faces of the hull (normal.z > 0): a concave terrain whose
// xy-projections tile the convex hull of the points' projections.
std::vector<HullFace> upper_hull_3d(std::span<const Vec3> pts);

// True when every point lies on or below every face plane (within tol).
bool upper_hull_valid(std::span<const Vec3> pts, std::span<const HullFace> faces, double tol);

}  // namespace wirs
