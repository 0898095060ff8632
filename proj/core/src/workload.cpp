#include "wirs/workload.hpp"

#include <algorithm>
#include <cmath>

#include "wirs/random.hpp"

namespace wirs {

Dataset gen_points(const DataConfig& config) {
  if (config.n == 0) throw EmptyInputError("gen_points: n must be positive");
  if (!(config.umax >= 1.0)) throw BadInputError("gen_points: umax must be >= 1");
  RandomSource rng(splitmix64(config.seed ^ 0xDA7A5E7ULL));

  std::vector<WeightedPoint> pts;
  pts.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    WeightedPoint p;
    p.id = static_cast<std::uint32_t>(i);
    if (config.point_dist == PointDist::UnitCube) {
      p.pos = Vec3{rng.draw_unit(), rng.draw_unit(), rng.draw_unit()};
    } else {
      // Gaussian direction, projected to a radius-1/2 sphere around the cube center.
      double gx = 0, gy = 0, gz = 0, len = 0;
      do {
        const auto gauss = [&](double* out) {
          const double u1 = std::max(rng.draw_unit(), 1e-300);
          const double u2 = rng.draw_unit();
          *out = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        };
        gauss(&gx);
        gauss(&gy);
        gauss(&gz);
        len = std::sqrt(gx * gx + gy * gy + gz * gz);
      } while (len < 1e-12);
      p.pos = Vec3{0.5 + 0.5 * gx / len, 0.5 + 0.5 * gy / len, 0.5 + 0.5 * gz / len};
    }
    switch (config.weight_dist) {
      case WeightDist::Uniform:
        p.weight = 1.0 + (config.umax - 1.0) * rng.draw_unit();
        break;
      case WeightDist::LogUniform:
        p.weight = std::pow(config.umax, rng.draw_unit());
        break;
      case WeightDist::TwoScale:
        p.weight = rng.draw_unit() < 0.5 ? 1.0 : config.umax;
        break;
    }
    pts.push_back(p);
  }
  return Dataset::from_points(std::move(pts));
}

std::vector<HalfspaceQuery> gen_queries(const QueryConfig& config, const Dataset* points) {
  if (config.mode == QueryMode::KRange) {
    if (points == nullptr || points->empty()) {
      throw BadInputError("gen_queries: KRange mode needs a dataset");
    }
    if (config.m < 1 || config.m > points->size()) {
      throw BadInputError("gen_queries: KRange m out of range");
    }
  }
  RandomSource rng(splitmix64(config.seed ^ 0x9E12135ULL));
  std::vector<HalfspaceQuery> out;
  out.reserve(config.count);

  for (std::size_t qi = 0; qi < config.count; ++qi) {
    HalfspaceQuery h;
    if (config.mode == QueryMode::RandomHalfspace) {
      h.plane.a = 2.0 * rng.draw_unit() - 1.0;
      h.plane.b = 2.0 * rng.draw_unit() - 1.0;
      const Vec3 anchor{rng.draw_unit(), rng.draw_unit(), rng.draw_unit()};
      h.plane.c = anchor.z - h.plane.a * anchor.x - h.plane.b * anchor.y;
      h.orient = rng.draw_unit() < 0.5 ? Orientation::Below : Orientation::Above;
    } else {
      bool ok = false;
      for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
        h.plane.a = 2.0 * rng.draw_unit() - 1.0;
        h.plane.b = 2.0 * rng.draw_unit() - 1.0;
        h.orient = rng.draw_unit() < 0.5 ? Orientation::Below : Orientation::Above;
        std::vector<double> s;
        s.reserve(points->size());
        for (const WeightedPoint& p : points->points()) {
          s.push_back(p.pos.z - h.plane.a * p.pos.x - h.plane.b * p.pos.y);
        }
        // Offset between the m-th and (m+1)-th order statistic pins the count.
        const std::size_t pos =
            h.orient == Orientation::Below ? config.m - 1 : s.size() - config.m;
        std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(pos), s.end());
        const double at = s[pos];
        double neighbor;
        if (h.orient == Orientation::Below) {
          if (pos + 1 >= s.size()) {
            neighbor = at + 1.0;
          } else {
            neighbor = *std::min_element(s.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                                         s.end());
          }
          if (neighbor - at <= 1e-12) continue;
          h.plane.c = (at + neighbor) / 2.0;
        } else {
          if (pos == 0) {
            neighbor = at - 1.0;
          } else {
            neighbor = *std::max_element(s.begin(),
                                         s.begin() + static_cast<std::ptrdiff_t>(pos));
          }
          if (at - neighbor <= 1e-12) continue;
          h.plane.c = (at + neighbor) / 2.0;
        }
        ok = true;
      }
      if (!ok) throw BadInputError("gen_queries: could not pin an exact range size");
    }
    out.push_back(h);
  }
  return out;
}

WeightDist parse_weight_dist(const std::string& name) {
  if (name == "uniform") return WeightDist::Uniform;
  if (name == "log-uniform") return WeightDist::LogUniform;
  if (name == "two-scale") return WeightDist::TwoScale;
  throw BadInputError("unknown weight distribution: " + name);
}

PointDist parse_point_dist(const std::string& name) {
  if (name == "unit-cube") return PointDist::UnitCube;
  if (name == "sphere") return PointDist::SphereSurface;
  throw BadInputError("unknown point distribution: " + name);
}

QueryMode parse_query_mode(const std::string& name) {
  if (name == "random-halfspace") return QueryMode::RandomHalfspace;
  if (name.rfind("k-range", 0) == 0) return QueryMode::KRange;
  throw BadInputError("unknown query mode: " + name);
}

}  // namespace wirs
