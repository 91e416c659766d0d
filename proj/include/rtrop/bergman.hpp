#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rtrop/error.hpp"
#include "rtrop/feasibility.hpp"
#include "rtrop/oriented_matroid.hpp"
#include "rtrop/sign_vector.hpp"

namespace rtrop {

/// Chain F_1 < F_2 < ... < F_k = E of index sets. The empty set F_0 is
/// implicit and never stored.
struct FlagOfFlats {
  std::vector<IndexSet> flats;

  std::size_t length() const noexcept { return flats.size(); }
  /// F_i \ F_{i-1} for i = 1..k (0-based here: step(0) = F_1).
  IndexSet step(std::size_t i) const {
    return i == 0 ? flats[0] : set_difference(flats[i], flats[i - 1]);
  }

  friend bool operator==(const FlagOfFlats&, const FlagOfFlats&) = default;
  friend bool operator<(const FlagOfFlats& a, const FlagOfFlats& b) { return a.flats < b.flats; }
};

/// F_i collects the indices carrying the i smallest distinct weights, so the
/// last step holds the maximal weight.
inline FlagOfFlats flag_of_weight(std::span<const Rational> w) {
  std::vector<Rational> values(w.begin(), w.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  FlagOfFlats flag;
  for (const auto& t : values) {
    IndexSet f;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] <= t) f.push_back(j);
    flag.flats.push_back(std::move(f));
  }
  return flag;
}

/// A weight vector whose flag is the given one: step i gets weight i.
inline QVector weight_of_flag(const FlagOfFlats& flag, std::size_t n) {
  QVector w(n);
  for (std::size_t i = 0; i < flag.length(); ++i)
    for (auto j : flag.step(i)) w[j] = static_cast<long>(i);
  return w;
}

/// Is there a covector v <= s with zero set exactly F?
inline bool is_s_flat(const OrientedMatroid& m, const IndexSet& f, const SignVector& s) {
  const QMatrix& g = require_realization(m);
  std::vector<LinearForm> eq, strict;
  std::vector<bool> in_f(m.ground_size, false);
  for (auto j : f) in_f[j] = true;
  for (std::size_t j = 0; j < m.ground_size; ++j) {
    QVector col = g.column(j);
    if (in_f[j]) {
      eq.push_back(std::move(col));
    } else {
      if (s[j] < 0)
        for (auto& x : col) x = -x;
      strict.push_back(std::move(col));
    }
  }
  return strict_feasibility(eq, strict, g.rows()).has_value();
}

namespace detail {

inline void check_flag_shape(const FlagOfFlats& flag, std::size_t n) {
  if (flag.flats.empty() || flag.flats.back() != full_set(n))
    fail(ErrorCode::MalformedInput, "a flag must end with the full ground set");
  for (std::size_t i = 0; i < flag.length(); ++i) {
    const auto& f = flag.flats[i];
    if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end())
      fail(ErrorCode::MalformedInput, "flag members must be sorted index sets");
    if (!f.empty() && f.back() >= n) fail(ErrorCode::IndexOutOfRange, "flag index outside the ground set");
    if (i > 0 && (f.size() <= flag.flats[i - 1].size() || !is_subset(flag.flats[i - 1], f)))
      fail(ErrorCode::MalformedInput, "flag must be strictly increasing");
  }
}

inline void check_pure(const SignVector& s, std::size_t n) {
  if (s.size() != n) fail(ErrorCode::LengthMismatch, "sign vector length differs from ground size");
  if (!s.is_pure()) fail(ErrorCode::NotPure, "sign vector must have no zero entries");
}

/// s-flag test that reports non-flats as false instead of throwing.
inline bool s_flag_or_false(const OrientedMatroid& m, const FlagOfFlats& flag, const SignVector& s) {
  if (!is_s_flat(m, {}, s)) return false;  // s must itself be a tope
  for (const auto& f : flag.flats) {
    if (!is_flat(m, f)) return false;
    if (!is_s_flat(m, f, s)) return false;
  }
  return true;
}

}  // namespace detail

/// Every member of the flag (and the implicit empty set) must be the zero
/// set of a covector dominated by s.
inline bool is_s_flag(const OrientedMatroid& m, const FlagOfFlats& flag, const SignVector& s) {
  require_realization(m);
  detail::check_pure(s, m.ground_size);
  detail::check_flag_shape(flag, m.ground_size);
  for (std::size_t i = 0; i < flag.length(); ++i)
    if (!is_flat(m, flag.flats[i]))
      fail(ErrorCode::NotAFlat, "flag member " + std::to_string(i + 1) + " is not a flat");
  return detail::s_flag_or_false(m, flag, s);
}

struct BergmanOptions {
  bool verify = false;  // evaluate and cross-check all three routes
};

struct BergmanReport {
  bool member = false;
  bool route_initial = false;   // M_w is s-acyclic
  bool route_circuits = false;  // argmax sign condition on every circuit
  bool route_flag = false;      // flag of w is an s-flag
  bool verified = false;        // routes 1 and 3 were evaluated
};

/// Argmax of w over each circuit support meets both (s*C)+ and (s*C)-.
inline bool circuit_argmax_condition(const OrientedMatroid& m, const SignVector& s, std::span<const Rational> w) {
  for (const auto& c : m.circuits) {
    const auto top = initial_circuit(sign_product(s, c), w);
    if (top.positive().empty() || top.negative().empty()) return false;
  }
  return true;
}

inline BergmanReport bergman_membership(const OrientedMatroid& m, const SignVector& s,
                                        std::span<const Rational> w, BergmanOptions opts = {}) {
  detail::check_pure(s, m.ground_size);
  if (w.size() != m.ground_size) fail(ErrorCode::LengthMismatch, "weight length differs from ground size");
  BergmanReport r;
  r.route_circuits = circuit_argmax_condition(m, s, w);
  r.member = r.route_circuits;
  if (!opts.verify) return r;
  require_realization(m);
  r.verified = true;
  r.route_initial = is_s_acyclic(initial_matroid(m, w), s);
  r.route_flag = detail::s_flag_or_false(m, flag_of_weight(w), s);
  if (r.route_initial != r.route_circuits || r.route_flag != r.route_circuits)
    fail(ErrorCode::RouteDisagreement,
         std::string("membership routes disagree: initial=") + (r.route_initial ? "1" : "0") +
             " circuits=" + (r.route_circuits ? "1" : "0") + " flag=" + (r.route_flag ? "1" : "0"));
  return r;
}

/// All maximal flags of flats that are s-flags, found by depth-first
/// extension through the lattice of flats. A prefix that fails the s-flat
/// test cannot be completed, so it is pruned.
inline std::vector<FlagOfFlats> enumerate_s_flags(const OrientedMatroid& m, const SignVector& s) {
  require_realization(m);
  detail::check_pure(s, m.ground_size);
  std::vector<FlagOfFlats> out;
  if (!is_s_flat(m, {}, s)) return out;  // not a tope
  const IndexSet ground = full_set(m.ground_size);
  std::map<IndexSet, bool> s_flat_cache;
  auto s_flat = [&](const IndexSet& f) {
    auto it = s_flat_cache.find(f);
    if (it != s_flat_cache.end()) return it->second;
    return s_flat_cache[f] = is_s_flat(m, f, s);
  };
  FlagOfFlats current;
  auto extend = [&](auto&& self, const IndexSet& f) -> void {
    if (f == ground) {
      out.push_back(current);
      return;
    }
    std::set<IndexSet> covers;
    for (std::size_t e = 0; e < m.ground_size; ++e) {
      if (std::binary_search(f.begin(), f.end(), e)) continue;
      IndexSet g = f;
      g.insert(std::upper_bound(g.begin(), g.end(), e), e);
      covers.insert(closure_flat(m, g));
    }
    for (const auto& c : covers) {
      if (!s_flat(c)) continue;
      current.flats.push_back(c);
      self(self, c);
      current.flats.pop_back();
    }
  };
  extend(extend, closure_flat(m, {}));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rtrop
