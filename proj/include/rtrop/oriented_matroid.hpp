#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rtrop/error.hpp"
#include "rtrop/feasibility.hpp"
#include "rtrop/linalg.hpp"
#include "rtrop/qmatrix.hpp"
#include "rtrop/sign_vector.hpp"

namespace rtrop {

/// Oriented matroid on {0..n-1}: one canonical representative per pair
/// {C, -C} of signed circuits, sorted, plus an optional realizing matrix
/// whose columns are the ground-set vectors.
struct OrientedMatroid {
  std::size_t ground_size = 0;
  std::vector<SignVector> circuits;
  std::optional<QMatrix> realization;

  friend bool operator==(const OrientedMatroid& a, const OrientedMatroid& b) {
    return a.ground_size == b.ground_size && a.circuits == b.circuits;
  }
};

/// Canonicalizes, sorts and deduplicates a circuit list.
inline std::vector<SignVector> normalize_circuits(std::vector<SignVector> circuits) {
  for (auto& c : circuits) c = canonical(c);
  std::sort(circuits.begin(), circuits.end());
  circuits.erase(std::unique(circuits.begin(), circuits.end()), circuits.end());
  return circuits;
}

namespace detail {

/// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  IndexSet idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(static_cast<const IndexSet&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Signed circuits of the vector configuration given by the columns of A:
/// sign vectors of the support-minimal vectors of ker A. With d = dim ker A,
/// every such vector is the unique (up to scale) kernel vector vanishing on
/// some d-1 coordinates, so those coordinate subsets are enumerated.
inline OrientedMatroid circuits_from_matrix(const QMatrix& a) {
  OrientedMatroid om;
  om.ground_size = a.cols();
  om.realization = a;
  const auto kernel = kernel_basis(a);
  const std::size_t d = kernel.size();
  if (d == 0) return om;
  const std::size_t n = a.cols();
  std::vector<SignVector> found;
  detail::for_each_subset(n, d - 1, [&](const IndexSet& zero) {
    // Coefficients c with sum_k c_k kernel[k][j] = 0 for j in zero.
    QMatrix sys(zero.size(), d);
    for (std::size_t r = 0; r < zero.size(); ++r)
      for (std::size_t k = 0; k < d; ++k) sys(r, k) = kernel[k][zero[r]];
    const auto coeffs = kernel_basis(sys);
    if (coeffs.size() != 1) return;
    QVector v(n);
    for (std::size_t k = 0; k < d; ++k)
      if (coeffs[0][k] != 0)
        for (std::size_t j = 0; j < n; ++j) v[j] += coeffs[0][k] * kernel[k][j];
    found.push_back(SignVector::of(v));
  });
  om.circuits = normalize_circuits(std::move(found));
  return om;
}

struct AxiomReport {
  bool ok = true;
  std::string axiom;              // "C0".."C3" when violated
  std::vector<SignVector> witness;

  static AxiomReport violation(std::string axiom, std::vector<SignVector> witness) {
    return {false, std::move(axiom), std::move(witness)};
  }
};

/// Checks the circuit axioms on the closure of the list under negation. The
/// list is read as canonical representatives; an entry that is not in
/// canonical form must come with its negation, otherwise C1 fails.
inline AxiomReport validate_circuit_axioms(const std::vector<SignVector>& circuits, std::size_t n) {
  for (const auto& c : circuits)
    if (c.size() != n) fail(ErrorCode::LengthMismatch, "circuit length differs from ground size");
  for (const auto& c : circuits)
    if (c.is_zero()) return AxiomReport::violation("C0", {c});
  std::set<SignVector> given(circuits.begin(), circuits.end());
  for (const auto& c : circuits)
    if (!is_canonical(c) && !given.count(-c)) return AxiomReport::violation("C1", {c});

  std::vector<SignVector> closed;
  for (const auto& c : circuits) {
    closed.push_back(c);
    closed.push_back(-c);
  }
  closed = [&] {
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    return closed;
  }();

  std::vector<IndexSet> supports;
  for (const auto& c : closed) supports.push_back(c.support());
  for (std::size_t i = 0; i < closed.size(); ++i)
    for (std::size_t j = 0; j < closed.size(); ++j) {
      if (i == j || closed[i] == -closed[j]) continue;
      if (is_subset(supports[i], supports[j])) return AxiomReport::violation("C2", {closed[i], closed[j]});
    }

  for (std::size_t i = 0; i < closed.size(); ++i)
    for (std::size_t j = 0; j < closed.size(); ++j) {
      const auto& x = closed[i];
      const auto& y = closed[j];
      if (x == -y) continue;
      for (std::size_t e = 0; e < n; ++e) {
        if (!(x[e] > 0 && y[e] < 0)) continue;
        const bool eliminated = std::any_of(closed.begin(), closed.end(), [&](const SignVector& z) {
          if (z[e] != 0) return false;
          for (std::size_t k = 0; k < n; ++k) {
            if (z[k] > 0 && !(x[k] > 0 || y[k] > 0)) return false;
            if (z[k] < 0 && !(x[k] < 0 || y[k] < 0)) return false;
          }
          return true;
        });
        if (!eliminated) return AxiomReport::violation("C3", {x, y});
      }
    }
  return {};
}

/// Reorientation on the index set A: every circuit is multiplied by the
/// sign vector that is - on A; the realization has those columns negated.
inline OrientedMatroid reorient(const OrientedMatroid& m, const IndexSet& a) {
  const auto sigma = SignVector::minus_on(m.ground_size, a);
  OrientedMatroid out;
  out.ground_size = m.ground_size;
  std::vector<SignVector> cs;
  for (const auto& c : m.circuits) cs.push_back(sign_product(c, sigma));
  out.circuits = normalize_circuits(std::move(cs));
  if (m.realization) {
    QMatrix r = *m.realization;
    for (auto j : a)
      for (std::size_t i = 0; i < r.rows(); ++i) r(i, j) = -r(i, j);
    out.realization = std::move(r);
  }
  return out;
}

/// Restriction of a circuit to the indices of its support where w is largest.
inline SignVector initial_circuit(const SignVector& c, std::span<const Rational> w) {
  std::optional<Rational> best;
  for (auto i : c.support())
    if (!best || w[i] > *best) best = w[i];
  IndexSet top;
  for (auto i : c.support())
    if (w[i] == *best) top.push_back(i);
  return c.restricted(top);
}

/// Oriented initial matroid: the inclusion-minimal initial circuits.
inline OrientedMatroid initial_matroid(const OrientedMatroid& m, std::span<const Rational> w) {
  if (w.size() != m.ground_size) fail(ErrorCode::LengthMismatch, "weight length differs from ground size");
  std::vector<SignVector> initial;
  for (const auto& c : m.circuits) initial.push_back(initial_circuit(c, w));
  initial = normalize_circuits(std::move(initial));
  std::vector<IndexSet> supports;
  for (const auto& c : initial) supports.push_back(c.support());
  OrientedMatroid out;
  out.ground_size = m.ground_size;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < initial.size() && minimal; ++j)
      if (supports[j] != supports[i] && is_subset(supports[j], supports[i])) minimal = false;
    if (minimal) out.circuits.push_back(initial[i]);
  }
  return out;
}

inline const QMatrix& require_realization(const OrientedMatroid& m) {
  if (!m.realization) fail(ErrorCode::NoRealization, "operation needs a realizing matrix");
  return *m.realization;
}

/// Finds y with sign(<y, g_j>) = v_j for every column g_j of the realization.
inline std::optional<QVector> is_covector(const OrientedMatroid& m, const SignVector& v) {
  const QMatrix& g = require_realization(m);
  if (v.size() != m.ground_size) fail(ErrorCode::LengthMismatch, "sign vector length differs from ground size");
  std::vector<LinearForm> eq, strict;
  for (std::size_t j = 0; j < m.ground_size; ++j) {
    QVector col = g.column(j);
    if (v[j] == 0) {
      eq.push_back(std::move(col));
    } else {
      if (v[j] < 0)
        for (auto& x : col) x = -x;
      strict.push_back(std::move(col));
    }
  }
  return strict_feasibility(eq, strict, g.rows());
}

/// True when no signed circuit (in either orientation) is dominated by s.
inline bool is_s_acyclic(const OrientedMatroid& m, const SignVector& s) {
  if (s.size() != m.ground_size) fail(ErrorCode::LengthMismatch, "sign vector length differs from ground size");
  if (!s.is_pure()) fail(ErrorCode::NotPure, "sign vector must have no zero entries");
  for (const auto& c : m.circuits)
    if (sign_leq(c, s) || sign_leq(-c, s)) return false;
  return true;
}

/// All pure covectors, sorted. Candidates failing s-acyclicity are skipped
/// before the feasibility oracle decides the rest.
inline std::vector<SignVector> topes(const OrientedMatroid& m) {
  require_realization(m);
  const std::size_t n = m.ground_size;
  std::vector<SignVector> out;
  if (n == 0) {
    if (is_covector(m, SignVector(0))) out.emplace_back(0);
    return out;
  }
  // Topes come in pairs {T, -T}; enumerate those with first entry + only.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    SignVector s = SignVector::all_plus(n);
    for (std::size_t j = 1; j < n; ++j)
      if (mask >> (j - 1) & 1) s.set(j, -1);
    if (!is_s_acyclic(m, s)) continue;
    if (!is_covector(m, s)) continue;
    out.push_back(s);
    out.push_back(-s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Indices whose vectors lie in the span of the vectors indexed by S.
inline IndexSet closure_flat(const OrientedMatroid& m, const IndexSet& s) {
  const QMatrix& g = require_realization(m);
  for (auto i : s)
    if (i >= m.ground_size) fail(ErrorCode::IndexOutOfRange, "index outside the ground set");
  const std::size_t base = rank(g.select_columns(s));
  IndexSet out;
  for (std::size_t j = 0; j < m.ground_size; ++j) {
    IndexSet with = s;
    with.push_back(j);
    if (rank(g.select_columns(with)) == base) out.push_back(j);
  }
  return out;
}

inline bool is_flat(const OrientedMatroid& m, const IndexSet& s) { return closure_flat(m, s) == s; }

inline std::size_t matroid_rank(const OrientedMatroid& m) { return rank(require_realization(m)); }

inline std::size_t flat_rank(const OrientedMatroid& m, const IndexSet& s) {
  return rank(require_realization(m).select_columns(s));
}

}  // namespace rtrop
