#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rtrop/rational.hpp"

namespace rtrop {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
};

using Support = std::vector<LatticePoint>;

/// Point of the modulus plane with exact coordinates.
struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Point2 to_point(LatticePoint p) { return {Rational(p.x), Rational(p.y)}; }

/// Twice the signed area of the triangle (a, b, c); positive for a
/// counterclockwise turn.
inline std::int64_t orient2d(LatticePoint a, LatticePoint b, LatticePoint c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline std::int64_t cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }

/// Number of lattice points on the segment minus one.
inline std::int64_t lattice_length(LatticePoint a, LatticePoint b) {
  return std::gcd(a.x - b.x, a.y - b.y);
}

inline bool on_segment(LatticePoint p, LatticePoint a, LatticePoint b) {
  if (orient2d(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

/// Convex hull vertices in counterclockwise order starting from the
/// lexicographically smallest point; collinear boundary points are dropped.
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Twice the Euclidean area of a counterclockwise polygon, i.e. the lattice
/// area normalized so that a unimodular triangle has area one.
inline std::int64_t normalized_area(const std::vector<LatticePoint>& poly) {
  std::int64_t a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return a < 0 ? -a : a;
}

/// True when the point lies in the closed convex polygon (counterclockwise
/// vertex list, at least three vertices).
inline bool in_convex_polygon(LatticePoint p, const std::vector<LatticePoint>& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (orient2d(poly[i], poly[(i + 1) % poly.size()], p) < 0) return false;
  return true;
}

/// All lattice points of the convex hull of the given points.
inline std::vector<LatticePoint> lattice_points_of_hull(const std::vector<LatticePoint>& pts) {
  auto hull = convex_hull(pts);
  std::vector<LatticePoint> out;
  if (hull.empty()) return out;
  auto [minx, maxx] = std::minmax_element(hull.begin(), hull.end(),
                                          [](auto a, auto b) { return a.x < b.x; });
  auto [miny, maxy] = std::minmax_element(hull.begin(), hull.end(),
                                          [](auto a, auto b) { return a.y < b.y; });
  for (auto x = minx->x; x <= maxx->x; ++x)
    for (auto y = miny->y; y <= maxy->y; ++y) {
      LatticePoint p{x, y};
      bool inside = hull.size() >= 3 ? in_convex_polygon(p, hull)
                    : hull.size() == 2 ? on_segment(p, hull[0], hull[1])
                                       : p == hull[0];
      if (inside) out.push_back(p);
    }
  return out;
}

}  // namespace rtrop
