#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "wirs/common.hpp"

namespace wirs::detail {

// y extent of a convex polygon at abscissa x; false if the polygon misses x.
inline bool poly_y_range(const std::vector<Vec2>& poly, double x, double eps, double* ylo,
                         double* yhi) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double xmin = std::min(p.x, q.x), xmax = std::max(p.x, q.x);
    if (x < xmin - eps || x > xmax + eps) continue;
    if (xmax - xmin <= eps) {
      lo = std::min(lo, std::min(p.y, q.y));
      hi = std::max(hi, std::max(p.y, q.y));
    } else {
      double t = (x - p.x) / (q.x - p.x);
      t = std::clamp(t, 0.0, 1.0);
      const double y = p.y + t * (q.y - p.y);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  if (lo > hi) return false;
  *ylo = lo;
  *yhi = hi;
  return true;
}

// Slab-based point location over a set of convex polygons that tile a region:
// binary search on x for the slab, then on y within the slab.
class SlabIndex {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // PolyAccess: const std::vector<Vec2>& operator()(std::size_t).
  template <typename PolyAccess>
  void build(std::size_t count, PolyAccess poly, double eps) {
    eps_ = eps;
    std::vector<double> xs;
    for (std::size_t i = 0; i < count; ++i) {
      for (const Vec2& v : poly(i)) xs.push_back(v.x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    slab_x_ = std::move(xs);
    slab_ids_.clear();
    if (slab_x_.size() < 2) return;
    slab_ids_.assign(slab_x_.size() - 1, {});

    for (std::size_t i = 0; i < count; ++i) {
      double xmin = poly(i)[0].x, xmax = xmin;
      for (const Vec2& v : poly(i)) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
      }
      const auto lo = std::lower_bound(slab_x_.begin(), slab_x_.end(), xmin) - slab_x_.begin();
      for (std::size_t s = static_cast<std::size_t>(lo);
           s + 1 < slab_x_.size() && slab_x_[s] < xmax; ++s) {
        slab_ids_[s].push_back(static_cast<std::uint32_t>(i));
      }
    }
    for (std::size_t s = 0; s + 1 < slab_x_.size(); ++s) {
      const double xmid = (slab_x_[s] + slab_x_[s + 1]) / 2.0;
      std::sort(slab_ids_[s].begin(), slab_ids_[s].end(),
                [&](std::uint32_t a, std::uint32_t b) {
                  double alo = 0, ahi = 0, blo = 0, bhi = 0;
                  poly_y_range(poly(a), xmid, eps_, &alo, &ahi);
                  poly_y_range(poly(b), xmid, eps_, &blo, &bhi);
                  return alo + ahi < blo + bhi;
                });
    }
  }

  template <typename PolyAccess>
  std::size_t locate(double x, double y, PolyAccess poly) const {
    if (slab_x_.size() < 2) return npos;
    auto it = std::upper_bound(slab_x_.begin(), slab_x_.end(), x);
    if (it == slab_x_.begin()) return npos;
    std::size_t s = static_cast<std::size_t>(it - slab_x_.begin()) - 1;
    if (s + 1 >= slab_x_.size()) {
      if (x > slab_x_.back() + eps_) return npos;
      s = slab_x_.size() - 2;
    }
    const auto& list = slab_ids_[s];
    if (!list.empty()) {
      std::size_t lo = 0, hi = list.size() - 1;
      while (lo <= hi) {
        const std::size_t mid = (lo + hi) / 2;
        double ylo = 0, yhi = 0;
        if (!poly_y_range(poly(list[mid]), x, eps_, &ylo, &yhi)) break;
        if (y < ylo - eps_) {
          if (mid == 0) break;
          hi = mid - 1;
        } else if (y > yhi + eps_) {
          lo = mid + 1;
        } else {
          return list[mid];
        }
      }
      // Rare eps-boundary miss: scan the slab.
      for (std::uint32_t i : list) {
        double ylo = 0, yhi = 0;
        if (poly_y_range(poly(i), x, eps_, &ylo, &yhi) && y >= ylo - eps_ && y <= yhi + eps_) {
          return i;
        }
      }
    }
    return npos;
  }

 private:
  double eps_ = 1e-12;
  std::vector<double> slab_x_;
  std::vector<std::vector<std::uint32_t>> slab_ids_;
};

}  // namespace wirs::detail
