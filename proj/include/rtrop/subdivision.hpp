#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <vector>

#include "rtrop/error.hpp"
#include "rtrop/lattice.hpp"
#include "rtrop/linalg.hpp"
#include "rtrop/sign_vector.hpp"

namespace rtrop {

/// Non-vertical plane h(x, y) = c0 + c1*x + c2*y.
struct Plane {
  Rational c0, c1, c2;

  Rational at(LatticePoint p) const { return c0 + c1 * p.x + c2 * p.y; }
  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Projection of one upper facet of the lifted point set.
struct Cell {
  std::vector<LatticePoint> vertices;  // counterclockwise, lexicographically smallest first
  IndexSet marked;                     // support indices whose lift lies on the facet
  Plane plane;

  /// The point of the modulus plane where exactly the marked terms of
  /// max(u_i + <x, alpha_i>) attain the maximum.
  Point2 dual() const { return {-plane.c1, -plane.c2}; }
};

/// Regular marked subdivision; `signs` is empty when unsigned, otherwise a
/// pure sign vector indexed like the support.
struct MarkedSubdivision {
  Support support;
  QVector lifts;
  std::vector<Cell> cells;  // sorted by vertex list
  SignVector signs;

  bool is_signed() const { return signs.size() == support.size() && !support.empty(); }
};

/// Edge of the subdivision together with the cells containing it.
struct SubdivisionEdge {
  LatticePoint p, q;              // p < q
  std::vector<std::size_t> cells; // one (boundary of the polygon) or two
  IndexSet marked;                // marked support indices on the edge
  std::int64_t lattice_len = 0;
  LatticePoint outward;           // primitive outward normal when on the boundary
};

namespace detail {

inline void check_support(const Support& support) {
  if (support.empty()) fail(ErrorCode::DegenerateSupport, "support is empty");
  auto sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorCode::DegenerateSupport, "support points must be distinct");
}

inline bool is_two_dimensional(const Support& support) {
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = i + 1; j < support.size(); ++j)
      for (std::size_t k = j + 1; k < support.size(); ++k)
        if (orient2d(support[i], support[j], support[k]) != 0) return true;
  return false;
}

inline LatticePoint primitive(LatticePoint d) {
  const auto g = std::gcd(d.x, d.y);
  return g == 0 ? d : LatticePoint{d.x / g, d.y / g};
}

}  // namespace detail

/// Upper facets of conv{(alpha_i, u_i)} projected to the plane. Every
/// non-vertical plane through three affinely independent lifted points is
/// tested; it supports an upper facet iff no lifted point lies above it.
/// The facet's cell is the hull of the points on the plane, and those
/// points are the marked ones.
inline MarkedSubdivision regular_marked_subdivision(const Support& support, std::span<const Rational> u) {
  detail::check_support(support);
  if (u.size() != support.size()) fail(ErrorCode::LengthMismatch, "one lift per support point expected");
  MarkedSubdivision out;
  out.support = support;
  out.lifts.assign(u.begin(), u.end());
  const std::size_t m = support.size();
  if (!detail::is_two_dimensional(support)) return out;

  std::vector<Plane> seen;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        if (orient2d(support[i], support[j], support[k]) == 0) continue;
        QMatrix sys(3, 3);
        QVector rhs(3);
        const std::array<std::size_t, 3> tri{i, j, k};
        for (std::size_t r = 0; r < 3; ++r) {
          sys(r, 0) = 1;
          sys(r, 1) = support[tri[r]].x;
          sys(r, 2) = support[tri[r]].y;
          rhs[r] = u[tri[r]];
        }
        const auto c = solve_square(sys, rhs);
        const Plane h{(*c)[0], (*c)[1], (*c)[2]};
        if (std::find(seen.begin(), seen.end(), h) != seen.end()) continue;
        bool upper = true;
        IndexSet on;
        for (std::size_t l = 0; l < m && upper; ++l) {
          const Rational height = h.at(support[l]);
          if (u[l] > height) upper = false;
          else if (u[l] == height) on.push_back(l);
        }
        if (!upper) continue;
        seen.push_back(h);
        Cell cell;
        std::vector<LatticePoint> pts;
        for (auto l : on) pts.push_back(support[l]);
        cell.vertices = convex_hull(pts);
        cell.marked = std::move(on);
        cell.plane = h;
        out.cells.push_back(std::move(cell));
      }
  std::sort(out.cells.begin(), out.cells.end(),
            [](const Cell& a, const Cell& b) { return a.vertices < b.vertices; });
  return out;
}

/// All edges of all cells, each listed once with its incident cells.
inline std::vector<SubdivisionEdge> subdivision_edges(const MarkedSubdivision& t) {
  std::map<std::pair<LatticePoint, LatticePoint>, SubdivisionEdge> edges;
  for (std::size_t c = 0; c < t.cells.size(); ++c) {
    const auto& poly = t.cells[c].vertices;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const LatticePoint a = poly[i];
      const LatticePoint b = poly[(i + 1) % poly.size()];
      const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
      auto& e = edges[key];
      if (e.cells.empty()) {
        e.p = key.first;
        e.q = key.second;
        e.lattice_len = lattice_length(a, b);
        e.outward = detail::primitive({b.y - a.y, a.x - b.x});  // a -> b is counterclockwise
        for (auto idx : t.cells[c].marked)
          if (on_segment(t.support[idx], a, b)) e.marked.push_back(idx);
      }
      e.cells.push_back(c);
    }
  }
  std::vector<SubdivisionEdge> out;
  for (auto& [key, e] : edges) out.push_back(std::move(e));
  return out;
}

/// Cell lists compared by vertices and marked sets only.
inline bool same_cells(const MarkedSubdivision& a, const MarkedSubdivision& b) {
  if (a.support != b.support || a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    if (a.cells[i].vertices != b.cells[i].vertices || a.cells[i].marked != b.cells[i].marked) return false;
  return true;
}

inline IndexSet marked_points(const MarkedSubdivision& t) {
  IndexSet out;
  for (auto& c : t.cells) out = set_union(out, c.marked);
  return out;
}

}  // namespace rtrop
