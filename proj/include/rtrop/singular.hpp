#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rtrop/bergman.hpp"
#include "rtrop/error.hpp"
#include "rtrop/lattice.hpp"
#include "rtrop/linalg.hpp"
#include "rtrop/oriented_matroid.hpp"
#include "rtrop/subdivision.hpp"
#include "rtrop/tropcurve.hpp"

namespace rtrop {

/// Linear data of the family of curves with support A that are singular at
/// the point (1,1): A' has rows (1, x, y) over the support, G is a Gale
/// dual, the ideal matroid is realized by the columns of G and the point
/// matroid by the columns of A'.
struct SingularSetup {
  Support support;
  QMatrix aprime;
  std::array<std::size_t, 3> basis{};
  QMatrix g;
  OrientedMatroid ideal;
  OrientedMatroid points;

  std::size_t size() const noexcept { return support.size(); }
};

inline QMatrix point_matrix(const Support& support) {
  QMatrix a(3, support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    a(0, j) = 1;
    a(1, j) = support[j].x;
    a(2, j) = support[j].y;
  }
  return a;
}

inline SingularSetup build_singular_setup(const Support& support) {
  detail::check_support(support);
  if (support.size() < 4) fail(ErrorCode::DegenerateSupport, "at least four support points are needed");
  SingularSetup st;
  st.support = support;
  st.aprime = point_matrix(support);
  if (rank(st.aprime) < 3) fail(ErrorCode::DegenerateSupport, "support points are collinear");
  bool found = false;
  const std::size_t m = support.size();
  for (std::size_t i = 0; i < m && !found; ++i)
    for (std::size_t j = i + 1; j < m && !found; ++j)
      for (std::size_t k = j + 1; k < m && !found; ++k)
        if (orient2d(support[i], support[j], support[k]) != 0) {
          st.basis = {i, j, k};
          found = true;
        }
  st.g = gale_dual(st.aprime, st.basis);
  st.ideal = circuits_from_matrix(st.g);
  st.points = circuits_from_matrix(st.aprime);
  for (const auto* om : {&st.ideal, &st.points}) {
    const auto report = validate_circuit_axioms(om->circuits, m);
    if (!report.ok) fail(ErrorCode::DegenerateSupport, "circuit axiom " + report.axiom + " fails");
  }
  return st;
}

/// For every circuit C of the ideal matroid, the points of C with maximal
/// lift include one where s agrees with C and one where it disagrees.
inline bool singsat_membership(const SingularSetup& st, const SignVector& s, std::span<const Rational> u,
                               BergmanOptions opts = {}) {
  if (s.size() != st.size() || u.size() != st.size())
    fail(ErrorCode::LengthMismatch, "signs and lifts must match the support");
  if (!s.is_pure()) fail(ErrorCode::NotPure, "signs must be + or -");
  bool member = true;
  for (const auto& c : st.ideal.circuits) {
    const auto top = initial_circuit(c, u);
    bool agree = false, disagree = false;
    for (auto i : top.support()) (top[i] == s[i] ? agree : disagree) = true;
    if (!(agree && disagree)) {
      member = false;
      break;
    }
  }
  if (bergman_membership(st.ideal, s, u, opts).member != member)
    fail(ErrorCode::RouteDisagreement, "circuit test and Bergman membership disagree");
  return member;
}

enum class CircuitTag { A, B, C };

inline std::string_view to_string(CircuitTag t) {
  switch (t) {
    case CircuitTag::A: return "A";
    case CircuitTag::B: return "B";
    case CircuitTag::C: return "C";
  }
  return "?";
}

/// Planar circuit with its roles: A lists the four points counterclockwise;
/// B lists the triangle and names the interior point; C lists the two ends
/// and names the middle point.
struct PlanarCircuitType {
  CircuitTag tag = CircuitTag::A;
  IndexSet support;
  std::vector<std::size_t> outer;
  std::optional<std::size_t> special;
  SignVector signs;  // the circuit's signs (canonical orientation)
};

namespace detail {

/// The sign pattern forced on a planar circuit by its geometry.
inline PlanarCircuitType planar_shape(const Support& support, const IndexSet& idx) {
  PlanarCircuitType t;
  t.support = idx;
  std::vector<LatticePoint> pts;
  for (auto i : idx) pts.push_back(support[i]);
  auto index_of = [&](LatticePoint p) {
    for (auto i : idx)
      if (support[i] == p) return i;
    return idx.front();
  };
  auto radon = SignVector(support.size());
  if (idx.size() == 3) {
    t.tag = CircuitTag::C;
    for (auto i : idx) {
      std::vector<std::size_t> others;
      for (auto j : idx)
        if (j != i) others.push_back(j);
      if (on_segment(support[i], support[others[0]], support[others[1]])) {
        t.special = i;
        t.outer = others;
      }
    }
    for (auto i : t.outer) radon.set(i, 1);
    radon.set(*t.special, -1);
  } else {
    const auto hull = convex_hull(pts);
    for (auto p : hull) t.outer.push_back(index_of(p));
    if (hull.size() == 4) {
      t.tag = CircuitTag::A;
      for (std::size_t k = 0; k < 4; ++k) radon.set(t.outer[k], k % 2 == 0 ? 1 : -1);
    } else {
      t.tag = CircuitTag::B;
      for (auto i : idx)
        if (std::find(t.outer.begin(), t.outer.end(), i) == t.outer.end()) t.special = i;
      for (auto i : t.outer) radon.set(i, 1);
      radon.set(*t.special, -1);
    }
  }
  t.signs = canonical(radon);
  return t;
}

}  // namespace detail

inline PlanarCircuitType planar_circuit_type(const SingularSetup& st, const SignVector& c) {
  if (c.size() != st.size()) fail(ErrorCode::LengthMismatch, "circuit length differs from the support size");
  const auto can = canonical(c);
  if (!std::binary_search(st.points.circuits.begin(), st.points.circuits.end(), can))
    fail(ErrorCode::NotACircuit, "not a circuit of the point configuration");
  auto t = detail::planar_shape(st.support, can.support());
  if (t.signs != can) fail(ErrorCode::NotACircuit, "circuit signs contradict the planar configuration");
  return t;
}

/// Maximal flag of the ideal matroid in one of its two shapes.
struct FlagClass {
  char type = 'a';        // 'a' or 'b'
  IndexSet top;           // F_{k} \ F_{k-1} for the last step
  std::size_t pair_step = 0;  // (b): 1-based index k of the two-element step
  IndexSet pair;          // (b): that step
};

inline FlagClass classify_flag(const SingularSetup& st, const FlagOfFlats& flag) {
  const std::size_t m = st.size();
  if (m < 4 || flag.length() != m - 3) fail(ErrorCode::NotMaximal, "a maximal flag has m-3 members");
  detail::check_flag_shape(flag, m);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < flag.length(); ++i) sizes.push_back(flag.step(i).size());
  FlagClass out;
  out.top = flag.step(flag.length() - 1);
  const auto big_steps = [&](std::size_t bound) {
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
      if (sizes[i] > bound) ++n;
    return n;
  };
  if (sizes.back() == 4 && big_steps(1) == 0) {
    out.type = 'a';
  } else if (sizes.back() == 3 && big_steps(1) == 1 && big_steps(2) == 0) {
    out.type = 'b';
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
      if (sizes[i] == 2) {
        out.pair_step = i + 1;
        out.pair = flag.step(i);
      }
  } else {
    fail(ErrorCode::UnclassifiableFlag, "step sizes match neither maximal flag shape");
  }
  for (std::size_t i = 0; i < flag.length(); ++i)
    if (!is_flat(st.ideal, flag.flats[i]) || flat_rank(st.ideal, flag.flats[i]) != i + 1)
      fail(ErrorCode::NotMaximal, "flag member " + std::to_string(i + 1) + " is not a flat of rank " +
                                      std::to_string(i + 1));
  return out;
}

/// Type (a): the top difference is the support of a point circuit and s
/// restricted to it is that circuit's signing up to sign.
inline bool s_flag_condition_type_a(const SingularSetup& st, const FlagOfFlats& flag, const SignVector& s) {
  const auto cls = classify_flag(st, flag);
  if (cls.type != 'a') fail(ErrorCode::UnclassifiableFlag, "flag is not of type (a)");
  for (const auto& c : st.points.circuits)
    if (c.support() == cls.top) {
      const auto restricted = s.restricted(cls.top);
      return restricted == c || restricted == -c;
    }
  return false;
}

/// Type (b): the top triple is collinear with alternating signs, and the
/// pair {a, b} of the two-element step carries equal signs exactly when the
/// line through the triple separates a from b.
inline bool s_flag_condition_type_b(const SingularSetup& st, const FlagOfFlats& flag, const SignVector& s) {
  const auto cls = classify_flag(st, flag);
  if (cls.type != 'b') fail(ErrorCode::UnclassifiableFlag, "flag is not of type (b)");
  const auto& p = st.support;
  const auto& d = cls.top;
  if (orient2d(p[d[0]], p[d[1]], p[d[2]]) != 0) return false;
  const auto shape = detail::planar_shape(p, d);
  const auto restricted = s.restricted(d);
  if (restricted != shape.signs && restricted != -shape.signs) return false;
  const auto a = cls.pair[0], b = cls.pair[1];
  const auto side_a = orient2d(p[shape.outer[0]], p[shape.outer[1]], p[a]);
  const auto side_b = orient2d(p[shape.outer[0]], p[shape.outer[1]], p[b]);
  const bool separated = (side_a > 0 && side_b < 0) || (side_a < 0 && side_b > 0);
  return (s[a] == s[b]) == separated;
}

/// No white points: every lattice point of the polygon is a marked point.
inline bool is_max_dimensional_type(const MarkedSubdivision& t, const Support& support) {
  const auto marked = marked_points(t);
  for (const auto& lp : lattice_points_of_hull(support)) {
    const auto it = std::find(support.begin(), support.end(), lp);
    if (it == support.end()) return false;
    const auto idx = static_cast<std::size_t>(it - support.begin());
    if (!std::binary_search(marked.begin(), marked.end(), idx)) return false;
  }
  return true;
}

enum class SingularCase {
  FourValentVertex,
  IsolatedVertexMult3,
  Weight2EdgeMidpoint,
  Weight2EdgeInterval,
  Weight2InfiniteEdge,
};

inline std::string_view to_string(SingularCase c) {
  switch (c) {
    case SingularCase::FourValentVertex: return "FourValentVertex";
    case SingularCase::IsolatedVertexMult3: return "IsolatedVertexMult3";
    case SingularCase::Weight2EdgeMidpoint: return "Weight2EdgeMidpoint";
    case SingularCase::Weight2EdgeInterval: return "Weight2EdgeInterval";
    case SingularCase::Weight2InfiniteEdge: return "Weight2InfiniteEdge";
  }
  return "?";
}

/// Local picture of the (+,+) chart at the origin.
struct SingularityClass {
  SingularCase kind = SingularCase::FourValentVertex;
  FlagClass flag;                     // shape of the flag of u
  PlanarCircuitType circuit;          // the circuit whose points carry the maximal lift
  Point2 vertex;                      // cases 1 and 2: the singular vertex (the origin)
  std::vector<std::int64_t> edge_weights;  // case 1: weights of the edges at the vertex
  std::int64_t multiplicity = 0;      // case 2: normalized area of the circuit triangle
  // cases 3-5: the weight-2 edge x = t * direction through the origin
  std::int64_t edge_weight = 0;
  LatticePoint direction;
  std::vector<Point2> edge_vertices;  // bounded ends, sorted
  std::vector<std::size_t> valences;  // valence of each end in the (+,+) chart
  std::optional<Point2> midpoint;     // cases 3 and 4
  std::optional<LatticePoint> ray_direction;  // case 5: the unbounded direction
  std::optional<std::size_t> near_end;        // case 4: index of the end closer to the origin
};

namespace detail {

/// Valence of the vertex dual to cell c in the chart of signs `signs`:
/// the number of the cell's edges with two differently signed marked points.
inline std::size_t cell_valence(const MarkedSubdivision& t, std::size_t cell,
                                const std::vector<SubdivisionEdge>& edges) {
  std::size_t n = 0;
  for (const auto& e : edges)
    if (std::find(e.cells.begin(), e.cells.end(), cell) != e.cells.end() && has_mixed_signs(e.marked, t.signs)) ++n;
  return n;
}

inline std::optional<std::size_t> cell_with_dual(const MarkedSubdivision& t, const Point2& p) {
  for (std::size_t c = 0; c < t.cells.size(); ++c)
    if (t.cells[c].dual() == p) return c;
  return std::nullopt;
}

}  // namespace detail

inline SingularityClass classify_singularity(const SingularSetup& st, const SignVector& s,
                                             std::span<const Rational> u) {
  if (!singsat_membership(st, s, u))
    fail(ErrorCode::PreconditionFailed, "singsat: (s, u) is not in the singular family");
  const auto flag = flag_of_weight(u);
  if (flag.length() + 3 != st.size())
    fail(ErrorCode::PreconditionFailed, "generic: the lifts do not lie inside a maximal cone");
  const auto flag_class = classify_flag(st, flag);
  const auto base = regular_marked_subdivision(st.support, u);
  if (!is_max_dimensional_type(base, st.support))
    fail(ErrorCode::PreconditionFailed, "max-dimensional type: the subdivision has white points");
  const RealTropPoly f{st.support, s, QVector(u.begin(), u.end())};
  const auto plus = SignVector::parse("++");
  const Point2 origin{Rational(0), Rational(0)};
  if (!point_in_real_hypersurface(f, plus, origin))
    fail(ErrorCode::PreconditionFailed, "origin: (0,0) is not on the (+,+) chart");

  const auto t = signed_subdivision_variant(base, s, plus);
  const auto edges = subdivision_edges(t);
  const IndexSet top = eval_modulus(f, origin).argmax;
  const auto can = canonical(s.restricted(top));
  bool is_circuit = false;
  for (const auto& c : st.points.circuits)
    if (c.support() == top) is_circuit = true;
  if (!is_circuit)
    fail(ErrorCode::PreconditionFailed, "generic: the points of maximal lift do not form a single circuit");

  SingularityClass out;
  out.flag = flag_class;
  out.circuit = detail::planar_shape(st.support, top);
  if ((flag_class.type == 'a') != (out.circuit.tag != CircuitTag::C) || flag_class.top != top)
    fail(ErrorCode::UnrecognizedLocalPicture, "flag type does not match the top circuit");
  if (can != out.circuit.signs)
    fail(ErrorCode::UnrecognizedLocalPicture, "signs on the top circuit are not its circuit signing");

  if (out.circuit.tag != CircuitTag::C) {
    const auto cell = detail::cell_with_dual(t, origin);
    if (!cell) fail(ErrorCode::PreconditionFailed, "generic: no cell is dual to the origin");
    out.vertex = origin;
    for (const auto& e : edges)
      if (std::find(e.cells.begin(), e.cells.end(), *cell) != e.cells.end() && has_mixed_signs(e.marked, t.signs))
        out.edge_weights.push_back(e.lattice_len);
    if (out.circuit.tag == CircuitTag::A) {
      if (out.edge_weights.size() != 4) fail(ErrorCode::PreconditionFailed, "generic: the vertex at the origin is not 4-valent");
      out.kind = SingularCase::FourValentVertex;
    } else {
      if (!out.edge_weights.empty()) fail(ErrorCode::PreconditionFailed, "generic: the vertex at the origin is not isolated");
      std::vector<LatticePoint> tri;
      for (auto i : out.circuit.outer) tri.push_back(st.support[i]);
      out.kind = SingularCase::IsolatedVertexMult3;
      out.multiplicity = normalized_area(convex_hull(tri));
    }
    return out;
  }

  // Type (C): the edge dual to the collinear triple runs through the origin
  // in the direction n normal to the line L. Along x = t*n a point p off L
  // catches up with the triple (lift mu) at t = (mu - u_p) / k_p, where k_p
  // is the signed lattice distance of p from L.
  const LatticePoint a = st.support[out.circuit.outer[0]];
  const LatticePoint b = st.support[out.circuit.outer[1]];
  const LatticePoint dir = detail::primitive(b - a);
  const LatticePoint n{-dir.y, dir.x};
  const Rational mu = u[top[0]];
  std::optional<Rational> t_plus, t_minus;
  for (std::size_t p = 0; p < st.size(); ++p) {
    const auto k = n.x * (st.support[p].x - a.x) + n.y * (st.support[p].y - a.y);
    if (k == 0) continue;
    const Rational tp = (mu - u[p]) / Rational(k);
    if (k > 0 && (!t_plus || tp < *t_plus)) t_plus = tp;
    if (k < 0 && (!t_minus || tp > *t_minus)) t_minus = tp;
  }
  out.edge_weight = lattice_length(a, b);
  out.direction = n;
  std::vector<Rational> ends;
  if (t_minus) ends.push_back(*t_minus);
  if (t_plus) ends.push_back(*t_plus);
  auto at = [&](const Rational& tt) { return Point2{tt * n.x, tt * n.y}; };
  std::sort(ends.begin(), ends.end(), [&](const Rational& l, const Rational& r) { return at(l) < at(r); });
  for (const auto& tt : ends) {
    out.edge_vertices.push_back(at(tt));
    const auto cell = detail::cell_with_dual(t, out.edge_vertices.back());
    if (!cell) fail(ErrorCode::PreconditionFailed, "generic: an end of the weight-2 edge is not dual to a cell");
    out.valences.push_back(detail::cell_valence(t, *cell, edges));
  }

  if (ends.size() == 1) {
    out.kind = SingularCase::Weight2InfiniteEdge;
    out.ray_direction = t_plus ? LatticePoint{-n.x, -n.y} : n;
    if (out.valences[0] != 3)
      fail(ErrorCode::PreconditionFailed, "generic: the infinite weight-2 edge does not end in a 3-valent vertex");
    return out;
  }
  const Rational mid = (ends[0] + ends[1]) / 2;
  out.midpoint = at(mid);
  const auto is_end_valence = [](std::size_t v) { return v == 1 || v == 3; };
  if (mid == 0) {
    out.kind = SingularCase::Weight2EdgeMidpoint;
    if (out.valences[0] != out.valences[1] || !is_end_valence(out.valences[0]))
      fail(ErrorCode::PreconditionFailed, "generic: the ends of the weight-2 edge are not both 1- or 3-valent");
    return out;
  }
  out.kind = SingularCase::Weight2EdgeInterval;
  // The origin lies between the midpoint and the nearer end.
  const std::size_t near = abs(ends[0]) < abs(ends[1]) ? 0 : 1;
  out.near_end = near;
  if (out.valences[near] != 3 || !is_end_valence(out.valences[1 - near]))
    fail(ErrorCode::PreconditionFailed, "generic: the weight-2 edge ends have unexpected valences");
  return out;
}

}  // namespace rtrop
