#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtrop/error.hpp"
#include "rtrop/rational.hpp"

namespace rtrop {

/// Sorted list of ground-set indices (0-based).
using IndexSet = std::vector<std::size_t>;

/// Element of {+,0,-}^n, stored as -1/0/+1.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t n) : s_(n, 0) {}
  explicit SignVector(std::vector<std::int8_t> entries) : s_(std::move(entries)) {
    for (auto& x : s_) x = x > 0 ? 1 : (x < 0 ? -1 : 0);
  }

  /// Parses a string over "+-0".
  static SignVector parse(std::string_view text) {
    SignVector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
        case '+': v.s_[i] = 1; break;
        case '-': v.s_[i] = -1; break;
        case '0': v.s_[i] = 0; break;
        default: fail(ErrorCode::MalformedInput, "sign string may only contain '+', '-', '0'");
      }
    }
    return v;
  }

  static SignVector all_plus(std::size_t n) { return SignVector(std::vector<std::int8_t>(n, 1)); }

  /// Signs of the entries of a rational vector.
  static SignVector of(std::span<const Rational> v) {
    SignVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.s_[i] = static_cast<std::int8_t>(sgn(v[i]));
    return out;
  }

  /// Pure vector with - on the given indices and + elsewhere.
  static SignVector minus_on(std::size_t n, const IndexSet& idx) {
    auto v = all_plus(n);
    for (auto i : idx) {
      if (i >= n) fail(ErrorCode::IndexOutOfRange, "index outside the ground set");
      v.s_[i] = -1;
    }
    return v;
  }

  std::size_t size() const noexcept { return s_.size(); }
  int operator[](std::size_t i) const { return s_[i]; }
  void set(std::size_t i, int value) { s_[i] = static_cast<std::int8_t>(value > 0 ? 1 : (value < 0 ? -1 : 0)); }

  bool is_pure() const {
    return std::none_of(s_.begin(), s_.end(), [](auto x) { return x == 0; });
  }
  bool is_zero() const {
    return std::all_of(s_.begin(), s_.end(), [](auto x) { return x == 0; });
  }

  IndexSet support() const { return indices_where([](int x) { return x != 0; }); }
  IndexSet positive() const { return indices_where([](int x) { return x > 0; }); }
  IndexSet negative() const { return indices_where([](int x) { return x < 0; }); }
  IndexSet zeros() const { return indices_where([](int x) { return x == 0; }); }

  SignVector operator-() const {
    SignVector out(*this);
    for (auto& x : out.s_) x = static_cast<std::int8_t>(-x);
    return out;
  }

  /// Restriction to the given indices, zero elsewhere.
  SignVector restricted(const IndexSet& idx) const {
    SignVector out(size());
    for (auto i : idx) out.s_[i] = s_[i];
    return out;
  }

  std::string str() const {
    std::string out(s_.size(), '0');
    for (std::size_t i = 0; i < s_.size(); ++i) out[i] = s_[i] > 0 ? '+' : (s_[i] < 0 ? '-' : '0');
    return out;
  }

  const std::vector<std::int8_t>& entries() const noexcept { return s_; }

  friend bool operator==(const SignVector&, const SignVector&) = default;
  /// Orders like the string rendering, so sorted output is lexicographic.
  friend bool operator<(const SignVector& a, const SignVector& b) { return a.str() < b.str(); }

 private:
  template <class Pred>
  IndexSet indices_where(Pred pred) const {
    IndexSet out;
    for (std::size_t i = 0; i < s_.size(); ++i)
      if (pred(s_[i])) out.push_back(i);
    return out;
  }

  std::vector<std::int8_t> s_;
};

inline std::ostream& operator<<(std::ostream& os, const SignVector& v) { return os << v.str(); }

inline SignVector sign_product(const SignVector& a, const SignVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "sign vectors differ in length");
  SignVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a[i] * b[i]);
  return out;
}

/// a <= b iff a+ is contained in b+ and a- in b-.
inline bool sign_leq(const SignVector& a, const SignVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "sign vectors differ in length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && a[i] != b[i]) return false;
  return true;
}

/// The representative of {v, -v} whose first nonzero entry is +.
inline SignVector canonical(const SignVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return v[i] > 0 ? v : -v;
  return v;
}

inline bool is_canonical(const SignVector& v) { return canonical(v) == v; }

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet full_set(std::size_t n) {
  IndexSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace rtrop
