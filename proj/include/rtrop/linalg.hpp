#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "rtrop/error.hpp"
#include "rtrop/lattice.hpp"
#include "rtrop/qmatrix.hpp"
#include "rtrop/rational.hpp"

namespace rtrop {

struct RowEchelon {
  QMatrix reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination to reduced row echelon form.
inline RowEchelon reduced_row_echelon(QMatrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) swap(m(pivot, j), m(lead_row, j));
    const Rational inv = 1 / m(lead_row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(lead_row, j);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const QMatrix& m) { return reduced_row_echelon(m).pivots.size(); }

/// Basis of the right kernel {v : M v = 0}, one vector per free column. Each
/// vector has a 1 at its free column and zeros at the other free columns.
inline std::vector<QVector> kernel_basis(const QMatrix& m) {
  const auto ech = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves the square system M x = b; nullopt when M is singular.
inline std::optional<QVector> solve_square(const QMatrix& m, std::span<const Rational> b) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n) fail(ErrorCode::LengthMismatch, "solve_square expects a square system");
  if (n == 0) return QVector{};
  QMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  const auto ech = reduced_row_echelon(std::move(aug));
  if (ech.pivots.size() < n || ech.pivots.back() != n - 1) return std::nullopt;
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ech.reduced(i, n);
  return x;
}

/// Gale dual of a full-row-rank matrix with respect to a set of basis
/// columns. Row i of the result corresponds to the i-th non-basis column j
/// (in increasing order): it carries 1 at column j and, at the basis columns,
/// the negated coordinates of column j in the chosen basis. Hence
/// A * G^T = 0 and the non-basis columns form an identity block.
inline QMatrix gale_dual(const QMatrix& a, std::span<const std::size_t> basis_cols) {
  const std::size_t r = a.rows();
  const std::size_t m = a.cols();
  if (basis_cols.size() != r) fail(ErrorCode::LengthMismatch, "basis must have one column per row");
  std::vector<bool> in_basis(m, false);
  for (auto c : basis_cols) {
    if (c >= m) fail(ErrorCode::IndexOutOfRange, "basis column out of range");
    if (in_basis[c]) fail(ErrorCode::SingularBasis, "repeated basis column");
    in_basis[c] = true;
  }
  const QMatrix basis = a.select_columns(basis_cols);
  if (rank(basis) < r) fail(ErrorCode::SingularBasis, "selected basis columns are dependent");
  QMatrix g(m - r, m);
  std::size_t row = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (in_basis[j]) continue;
    const auto coords = solve_square(basis, a.column(j));
    for (std::size_t k = 0; k < r; ++k) g(row, basis_cols[k]) = -(*coords)[k];
    g(row, j) = 1;
    ++row;
  }
  return g;
}

/// Affine coordinates (a, b, c) with p = a*b1 + b*b2 + c*b3 and a+b+c = 1.
inline std::vector<std::array<Rational, 3>> affine_coordinates(
    std::span<const LatticePoint> points, const std::array<LatticePoint, 3>& basis) {
  QMatrix sys(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    sys(0, k) = 1;
    sys(1, k) = basis[k].x;
    sys(2, k) = basis[k].y;
  }
  if (rank(sys) < 3) fail(ErrorCode::SingularBasis, "affine basis points are collinear");
  std::vector<std::array<Rational, 3>> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const QVector rhs{Rational(1), Rational(p.x), Rational(p.y)};
    const auto x = solve_square(sys, rhs);
    out.push_back({(*x)[0], (*x)[1], (*x)[2]});
  }
  return out;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "dot product size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace rtrop
