#include "wirs/geom3d.hpp"

#include <cmath>

namespace wirs {

HalfspaceQuery HalfspaceQuery::from_general(Vec3 normal, double d) {
  if (normal.z == 0.0 || !std::isfinite(normal.z)) {
    throw VerticalQueryError();
  }
  // n.x*x + n.y*y + n.z*z <= d  <=>  z <=/>= (-n.x/n.z)*x + (-n.y/n.z)*y + d/n.z
  HalfspaceQuery h;
  h.plane = Plane{-normal.x / normal.z, -normal.y / normal.z, d / normal.z};
  h.orient = normal.z > 0.0 ? Orientation::Below : Orientation::Above;
  return h;
}

Plane dualize(const Vec3& p) { return Plane{p.x, p.y, -p.z}; }

DualQuery dualize_query(const HalfspaceQuery& h) {
  for (double v : {h.plane.a, h.plane.b, h.plane.c}) {
    if (!std::isfinite(v)) throw VerticalQueryError("dualize_query: non-finite coefficients");
  }
  // z <= a*x + b*y + c written as z <= q1*x + q2*y - q3 gives (q1,q2,q3) = (a,b,-c).
  return DualQuery{Vec3{h.plane.a, h.plane.b, -h.plane.c}, h.orient};
}

bool dual_contains(const Plane& dual_plane_of_p, const DualQuery& q) {
  const double v = dual_plane_of_p.value_at(q.point.x, q.point.y);
  return q.side == Orientation::Below ? v >= q.point.z : v <= q.point.z;
}

}  // namespace wirs
