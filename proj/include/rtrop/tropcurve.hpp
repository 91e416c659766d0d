#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "rtrop/error.hpp"
#include "rtrop/lattice.hpp"
#include "rtrop/sign_vector.hpp"
#include "rtrop/subdivision.hpp"

namespace rtrop {

/// f = sum of (s_i, u_i) w^{alpha_i}: coefficient signs and moduli.
struct RealTropPoly {
  Support support;
  SignVector signs;  // pure, one per support point
  QVector lifts;     // moduli u_i

  void validate() const {
    detail::check_support(support);
    if (signs.size() != support.size() || lifts.size() != support.size())
      fail(ErrorCode::LengthMismatch, "signs and lifts need one entry per support point");
    if (!signs.is_pure()) fail(ErrorCode::NotPure, "coefficient signs must be + or -");
  }
};

/// The four elements of {+,-}^2 in the fixed order ++, +-, -+, --.
inline std::array<SignVector, 4> klein_group() {
  return {SignVector::parse("++"), SignVector::parse("+-"), SignVector::parse("-+"), SignVector::parse("--")};
}

inline void check_klein(const SignVector& v) {
  if (v.size() != 2 || !v.is_pure()) fail(ErrorCode::NotPure, "chart index must be a pure sign vector of length 2");
}

/// psi(v)_alpha = v_x^{alpha_x} * v_y^{alpha_y}.
inline SignVector klein_image(const Support& support, const SignVector& v) {
  check_klein(v);
  auto out = SignVector::all_plus(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    int s = 1;
    if (v[0] < 0 && (support[i].x % 2 != 0)) s = -s;
    if (v[1] < 0 && (support[i].y % 2 != 0)) s = -s;
    out.set(i, s);
  }
  return out;
}

struct ModulusValue {
  Rational value;
  IndexSet argmax;
};

/// |f|(x) = max_i (u_i + <x, alpha_i>) with the full set of maximizers.
inline ModulusValue eval_modulus(const RealTropPoly& f, const Point2& x) {
  ModulusValue out;
  for (std::size_t i = 0; i < f.support.size(); ++i) {
    const Rational t = f.lifts[i] + x.x * f.support[i].x + x.y * f.support[i].y;
    if (out.argmax.empty() || t > out.value) {
      out.value = t;
      out.argmax = {i};
    } else if (t == out.value) {
      out.argmax.push_back(i);
    }
  }
  return out;
}

/// Does the index set contain two points whose signs differ?
inline bool has_mixed_signs(const IndexSet& idx, const SignVector& signs) {
  bool plus = false, minus = false;
  for (auto i : idx) (signs[i] > 0 ? plus : minus) = true;
  return plus && minus;
}

/// The signed point (v, x) lies on the real tropical curve of f iff the
/// maximum of |f| at x is attained by two terms of different adjusted sign
/// s_i * psi(v)_i.
inline bool point_in_real_hypersurface(const RealTropPoly& f, const SignVector& v, const Point2& x) {
  const auto adjusted = sign_product(f.signs, klein_image(f.support, v));
  const auto ev = eval_modulus(f, x);
  return ev.argmax.size() >= 2 && has_mixed_signs(ev.argmax, adjusted);
}

/// T_v: same cells and marks, signs multiplied by psi(v).
inline MarkedSubdivision signed_subdivision_variant(const MarkedSubdivision& t, const SignVector& s,
                                                    const SignVector& v) {
  if (s.size() != t.support.size() || !s.is_pure())
    fail(ErrorCode::NotPure, "signs must be pure and cover the support");
  MarkedSubdivision out = t;
  out.signs = sign_product(s, klein_image(t.support, v));
  return out;
}

inline MarkedSubdivision signed_subdivision(const RealTropPoly& f, const SignVector& v) {
  f.validate();
  return signed_subdivision_variant(regular_marked_subdivision(f.support, f.lifts), f.signs, v);
}

struct ChartSegment {
  Point2 a, b;  // a < b
  std::int64_t weight = 1;

  friend bool operator==(const ChartSegment&, const ChartSegment&) = default;
  friend bool operator<(const ChartSegment& l, const ChartSegment& r) {
    if (!(l.a == r.a)) return l.a < r.a;
    if (!(l.b == r.b)) return l.b < r.b;
    return l.weight < r.weight;
  }
};

struct ChartRay {
  Point2 base;
  LatticePoint direction;  // primitive
  std::int64_t weight = 1;

  friend bool operator==(const ChartRay&, const ChartRay&) = default;
  friend bool operator<(const ChartRay& l, const ChartRay& r) {
    if (!(l.base == r.base)) return l.base < r.base;
    if (l.direction != r.direction) return l.direction < r.direction;
    return l.weight < r.weight;
  }
};

/// Piece of a real plane tropical curve lying in the v-chart, reported in
/// the modulus plane. All lists are sorted.
struct Chart {
  SignVector sign_index;
  std::vector<Point2> vertices;
  std::vector<ChartSegment> segments;
  std::vector<ChartRay> rays;

  bool empty() const { return vertices.empty() && segments.empty() && rays.empty(); }
  friend bool operator==(const Chart&, const Chart&) = default;

  /// Equal pieces, ignoring which chart they are indexed by.
  bool same_pieces(const Chart& o) const {
    return vertices == o.vertices && segments == o.segments && rays == o.rays;
  }

  /// Number of segments and rays incident to the vertex.
  std::size_t valence(const Point2& p) const {
    std::size_t n = 0;
    for (auto& s : segments)
      if (s.a == p || s.b == p) ++n;
    for (auto& r : rays)
      if (r.base == p) ++n;
    return n;
  }
};

namespace detail {

/// Dual pieces of a signed subdivision; with `all` set, the sign condition is
/// ignored and the whole (unsigned) tropical curve is returned.
inline Chart dual_pieces(const MarkedSubdivision& t, const SignVector& v, bool all) {
  Chart chart;
  chart.sign_index = v;
  for (const auto& c : t.cells)
    if (all || has_mixed_signs(c.marked, t.signs)) chart.vertices.push_back(c.dual());
  for (const auto& e : subdivision_edges(t)) {
    if (!all && !has_mixed_signs(e.marked, t.signs)) continue;
    if (e.cells.size() == 2) {
      Point2 a = t.cells[e.cells[0]].dual();
      Point2 b = t.cells[e.cells[1]].dual();
      if (b < a) std::swap(a, b);
      chart.segments.push_back({a, b, e.lattice_len});
    } else {
      chart.rays.push_back({t.cells[e.cells[0]].dual(), e.outward, e.lattice_len});
    }
  }
  std::sort(chart.vertices.begin(), chart.vertices.end());
  std::sort(chart.segments.begin(), chart.segments.end());
  std::sort(chart.rays.begin(), chart.rays.end());
  return chart;
}

}  // namespace detail

/// The v-chart of the real tropical curve of f, dual to T_v: cells and edges
/// whose marked points carry two different adjusted signs.
inline Chart compute_chart(const RealTropPoly& f, const SignVector& v) {
  f.validate();
  check_klein(v);
  if (!detail::is_two_dimensional(f.support))
    fail(ErrorCode::DegenerateSupport, "the Newton polygon must be two-dimensional");
  return detail::dual_pieces(signed_subdivision(f, v), v, false);
}

inline std::vector<Chart> compute_charts(const RealTropPoly& f) {
  std::vector<Chart> out;
  for (const auto& v : klein_group()) out.push_back(compute_chart(f, v));
  return out;
}

/// The tropical curve of |f| without sign conditions.
inline Chart unsigned_curve(const RealTropPoly& f) {
  f.validate();
  if (!detail::is_two_dimensional(f.support))
    fail(ErrorCode::DegenerateSupport, "the Newton polygon must be two-dimensional");
  return detail::dual_pieces(signed_subdivision(f, SignVector::parse("++")), SignVector::parse("++"), true);
}

/// Some v with s = psi(v) * s', trying ++, +-, -+, -- in that order.
inline std::optional<SignVector> sign_equivalent(const SignVector& s, const SignVector& s2, const Support& support) {
  if (s.size() != s2.size() || s.size() != support.size())
    fail(ErrorCode::LengthMismatch, "sign vectors must match the support");
  for (const auto& v : klein_group())
    if (sign_product(klein_image(support, v), s2) == s) return v;
  return std::nullopt;
}

/// A point (s, u) of the signed secondary fan.
struct SignedLift {
  SignVector signs;
  QVector lifts;
};

inline bool same_secondary_class(const SignedLift& p, const SignedLift& p2, const Support& support) {
  if (!sign_equivalent(p.signs, p2.signs, support)) return false;
  return same_cells(regular_marked_subdivision(support, p.lifts), regular_marked_subdivision(support, p2.lifts));
}

/// Action of (v, r) in the lineality group: signs times psi(v), lifts plus
/// r0 + r1*alpha_x + r2*alpha_y.
inline SignedLift lineality_act(const SignedLift& p, const SignVector& v, const std::array<Rational, 3>& r,
                                const Support& support) {
  if (p.signs.size() != support.size() || p.lifts.size() != support.size())
    fail(ErrorCode::LengthMismatch, "signs and lifts must match the support");
  SignedLift out;
  out.signs = sign_product(klein_image(support, v), p.signs);
  out.lifts = p.lifts;
  for (std::size_t i = 0; i < support.size(); ++i) out.lifts[i] += r[0] + r[1] * support[i].x + r[2] * support[i].y;
  return out;
}

/// Chart translated by t in the modulus plane.
inline Chart translated(Chart c, const Point2& t) {
  for (auto& p : c.vertices) p = {p.x + t.x, p.y + t.y};
  for (auto& s : c.segments) {
    s.a = {s.a.x + t.x, s.a.y + t.y};
    s.b = {s.b.x + t.x, s.b.y + t.y};
  }
  for (auto& r : c.rays) r.base = {r.base.x + t.x, r.base.y + t.y};
  return c;
}

}  // namespace rtrop
