#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "rtrop/error.hpp"
#include "rtrop/linalg.hpp"
#include "rtrop/qmatrix.hpp"
#include "rtrop/rational.hpp"

namespace rtrop {

/// A homogeneous linear form <coeffs, y>.
using LinearForm = QVector;

namespace detail {

struct FmRow {
  QVector coeffs;              // over y_0..y_{d-1} and the scale t (last)
  std::vector<bool> history;   // original rows this one was combined from
  std::size_t history_size = 0;
};

/// Deduplicates rows with equal coefficients, keeping the smallest history.
inline void dedupe(std::vector<FmRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const FmRow& a, const FmRow& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.history_size < b.history_size;
  });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const FmRow& a, const FmRow& b) { return a.coeffs == b.coeffs; }),
             rows.end());
}

/// Decides { z : <row, z> > 0 for all rows }. Homogeneity lets us ask for
/// <row, z> >= t with t > 0 instead, a non-strict system in (z, t) that is
/// decided by Fourier-Motzkin elimination of z with Kohler's redundancy
/// criterion and solved by back-substitution with t = 1.
inline std::optional<QVector> strict_homogeneous(const std::vector<QVector>& forms, std::size_t dim) {
  const std::size_t t_index = dim;
  const std::size_t count = forms.size();

  // Returns false when the row reads c*t >= 0 with c < 0 (contradiction);
  // otherwise reports whether the row still constrains some y.
  enum class RowKind { Contradiction, Trivial, Active };
  auto classify = [&](const QVector& c) {
    for (std::size_t j = 0; j < dim; ++j)
      if (c[j] != 0) return RowKind::Active;
    return c[t_index] < 0 ? RowKind::Contradiction : RowKind::Trivial;
  };

  std::vector<std::vector<FmRow>> levels(dim + 1);  // levels[k]: rows in y_0..y_{k-1}
  for (std::size_t i = 0; i < count; ++i) {
    QVector c(forms[i]);
    c.push_back(Rational(-1));
    FmRow r;
    r.coeffs = primitive_integer(c);
    r.history.assign(count, false);
    r.history[i] = true;
    r.history_size = 1;
    const auto kind = classify(r.coeffs);
    if (kind == RowKind::Contradiction) return std::nullopt;
    levels[dim].push_back(std::move(r));
  }
  dedupe(levels[dim]);

  for (std::size_t k = dim; k > 0; --k) {
    const std::size_t var = k - 1;
    const std::size_t eliminated = dim - var;
    std::vector<FmRow> next, pos, neg;
    for (auto& r : levels[k]) {
      const int s = sgn(r.coeffs[var]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        FmRow c;
        c.history.resize(count);
        for (std::size_t h = 0; h < count; ++h) {
          c.history[h] = p.history[h] || n.history[h];
          if (c.history[h]) ++c.history_size;
        }
        // Kohler: a row built from more than eliminated + 1 originals is
        // implied by the remaining ones.
        if (c.history_size > eliminated + 1) continue;
        QVector comb(dim + 1);
        const Rational a = p.coeffs[var];
        const Rational b = -n.coeffs[var];
        for (std::size_t j = 0; j <= dim; ++j) comb[j] = b * p.coeffs[j] + a * n.coeffs[j];
        c.coeffs = primitive_integer(comb);
        const auto kind = classify(c.coeffs);
        if (kind == RowKind::Contradiction) return std::nullopt;
        if (kind == RowKind::Trivial) continue;
        next.push_back(std::move(c));
      }
    dedupe(next);
    levels[var] = std::move(next);
  }

  QVector z(dim);
  for (std::size_t k = 1; k <= dim; ++k) {
    const std::size_t var = k - 1;
    std::optional<Rational> lo, hi;
    for (const auto& r : levels[k]) {
      const Rational& a = r.coeffs[var];
      if (a == 0) continue;
      Rational rest = r.coeffs[t_index];  // t = 1
      for (std::size_t j = 0; j < var; ++j) rest += r.coeffs[j] * z[j];
      const Rational bound = -rest / a;
      if (a > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi) z[var] = (*lo + *hi) / 2;
    else if (lo) z[var] = *lo;
    else if (hi) z[var] = *hi;
    else z[var] = 0;
  }
  return z;
}

}  // namespace detail

/// Finds y with <e, y> = 0 for every equality form e and <f, y> > 0 for
/// every strict form f, or returns nullopt when no such y exists. The
/// equalities are projected out through a kernel basis first; the remaining
/// strict system is decided by Fourier-Motzkin elimination. Witnesses are
/// primitive integer vectors.
inline std::optional<QVector> strict_feasibility(const std::vector<LinearForm>& equalities,
                                                 const std::vector<LinearForm>& strict_positives,
                                                 std::size_t dim) {
  for (const auto& f : equalities)
    if (f.size() != dim) fail(ErrorCode::LengthMismatch, "equality form has wrong dimension");
  for (const auto& f : strict_positives)
    if (f.size() != dim) fail(ErrorCode::LengthMismatch, "strict form has wrong dimension");

  std::vector<QVector> param;  // columns spanning the equality solution space
  if (equalities.empty()) {
    for (std::size_t j = 0; j < dim; ++j) {
      QVector e(dim);
      e[j] = 1;
      param.push_back(std::move(e));
    }
  } else {
    param = kernel_basis(QMatrix::from_rows(equalities));
  }
  const std::size_t reduced_dim = param.size();

  std::vector<QVector> reduced;
  reduced.reserve(strict_positives.size());
  for (const auto& f : strict_positives) {
    QVector g(reduced_dim);
    for (std::size_t k = 0; k < reduced_dim; ++k) g[k] = dot(f, param[k]);
    reduced.push_back(std::move(g));
  }
  const auto z = detail::strict_homogeneous(reduced, reduced_dim);
  if (!z) return std::nullopt;
  QVector y(dim);
  for (std::size_t k = 0; k < reduced_dim; ++k)
    if ((*z)[k] != 0)
      for (std::size_t j = 0; j < dim; ++j) y[j] += (*z)[k] * param[k][j];
  return primitive_integer(y);
}

}  // namespace rtrop
