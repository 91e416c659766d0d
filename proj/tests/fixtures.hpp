#pragma once

#include <random>

#include "rtrop/tropcurve.hpp"

namespace fixture {

using namespace rtrop;

inline QVector q(std::initializer_list<long> xs) {
  QVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Point2 pt(long x, long y) { return {Rational(x), Rational(y)}; }
inline Point2 pt(Rational x, Rational y) { return {std::move(x), std::move(y)}; }

/// Lattice points of conv(0, 2e1, 2e2) in the order used throughout.
inline Support degree_two() { return {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}; }

/// The same points listed lexicographically.
inline Support degree_two_lex() { return {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}}; }

inline RealTropPoly conic() {
  return {degree_two(), SignVector::parse("+-+-++"), q({-1, 0, 0, -1, 0, 0})};
}

inline Chart chart(const char* v, std::vector<Point2> vertices, std::vector<ChartSegment> segments,
                   std::vector<ChartRay> rays) {
  Chart c;
  c.sign_index = SignVector::parse(v);
  c.vertices = std::move(vertices);
  c.segments = std::move(segments);
  c.rays = std::move(rays);
  std::sort(c.vertices.begin(), c.vertices.end());
  std::sort(c.segments.begin(), c.segments.end());
  std::sort(c.rays.begin(), c.rays.end());
  return c;
}

/// The four charts of the conic example, worked out by hand.
inline std::vector<Chart> conic_charts() {
  return {
      chart("++", {pt(-1, -1), pt(0, 0), pt(1, 0)},
            {{pt(-1, -1), pt(0, 0), 1}, {pt(0, 0), pt(1, 0), 1}},
            {{pt(-1, -1), {0, -1}, 1}, {pt(1, 0), {1, 1}, 1}}),
      chart("+-", {pt(-1, -1), pt(0, 0)}, {},
            {{pt(-1, -1), {-1, 0}, 1}, {pt(-1, -1), {0, -1}, 1}, {pt(0, 0), {-1, 0}, 1}, {pt(0, 0), {1, 1}, 1}}),
      chart("-+", {pt(0, 0), pt(1, 0)}, {{pt(0, 0), pt(1, 0), 1}},
            {{pt(0, 0), {1, 1}, 1}, {pt(1, 0), {0, -1}, 1}}),
      chart("--", {pt(-1, -1), pt(0, 0), pt(1, 0)}, {{pt(-1, -1), pt(0, 0), 1}},
            {{pt(-1, -1), {-1, 0}, 1}, {pt(0, 0), {-1, 0}, 1}, {pt(1, 0), {0, -1}, 1}, {pt(1, 0), {1, 1}, 1}}),
  };
}

/// Random rational in [lo, hi] with denominator up to `den`.
inline Rational random_rational(std::mt19937& rng, long lo, long hi, long den = 7) {
  std::uniform_int_distribution<long> d(1, den);
  const long q = d(rng);
  std::uniform_int_distribution<long> n(lo * q, hi * q);
  return make_rational(n(rng), q);
}

/// Exact membership of a point in a chart piece.
inline bool on_chart(const Chart& c, const Point2& p) {
  for (auto& v : c.vertices)
    if (v == p) return true;
  for (auto& s : c.segments) {
    const Rational dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    if ((p.x - s.a.x) * dy != (p.y - s.a.y) * dx) continue;
    const Rational t = dx != 0 ? (p.x - s.a.x) / dx : (p.y - s.a.y) / dy;
    if (t >= 0 && t <= 1) return true;
  }
  for (auto& r : c.rays) {
    const Rational dx = r.direction.x, dy = r.direction.y;
    if ((p.x - r.base.x) * dy != (p.y - r.base.y) * dx) continue;
    const Rational t = dx != 0 ? (p.x - r.base.x) / dx : (p.y - r.base.y) / dy;
    if (t >= 0) return true;
  }
  return false;
}

/// Samples points in the relative interior of every piece of the chart.
inline std::vector<Point2> interior_samples(const Chart& c, std::mt19937& rng, int per_piece) {
  std::vector<Point2> out;
  for (auto& v : c.vertices) out.push_back(v);
  std::uniform_int_distribution<long> num(1, 999);
  for (auto& s : c.segments)
    for (int i = 0; i < per_piece; ++i) {
      const Rational t = make_rational(num(rng), 1000);
      out.push_back({s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)});
    }
  std::uniform_int_distribution<long> far(1, 50000);
  for (auto& r : c.rays)
    for (int i = 0; i < per_piece; ++i) {
      const Rational t = make_rational(far(rng), 1000);
      out.push_back({r.base.x + t * r.direction.x, r.base.y + t * r.direction.y});
    }
  return out;
}

}  // namespace fixture
