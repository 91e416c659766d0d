#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rtrop {

/// Exact rational number, always canonical (lowest terms, positive
/// denominator).
using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign_of(const Rational& r) { return sgn(r); }

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "p", "-p" or "p/q". Returns nullopt on malformed text or a zero
/// denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto valid_int = [](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_int(text)) return std::nullopt;
    return Rational(Integer(strip_plus(text)));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) return std::nullopt;
  Integer d(strip_plus(den));
  if (d == 0) return std::nullopt;
  Rational r(Integer(strip_plus(num)), d);
  r.canonicalize();
  return r;
}

/// Scales a rational vector by a positive factor so that it becomes an
/// integer vector whose entries have gcd one. The zero vector is returned
/// unchanged.
inline QVector primitive_integer(std::span<const Rational> v) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = lcm(lcm_den, Integer(x.get_den()));
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer content = 0;
  for (const auto& x : v) {
    Integer n = x.get_num() * (lcm_den / x.get_den());
    content = gcd(content, n);
    ints.push_back(n);
  }
  QVector out;
  out.reserve(v.size());
  for (auto& n : ints) {
    if (content != 0) n /= content;
    out.emplace_back(n);
  }
  return out;
}

/// Exact decimal rendering with a fixed number of fractional digits
/// (round half away from zero). Used for SVG coordinates.
inline std::string to_fixed(const Rational& r, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Integer num = abs(r.get_num()) * scale * 2 + r.get_den();
  Integer den = r.get_den() * 2;
  Integer q = num / den;  // floor(|r|*scale + 1/2)
  std::string digits_str = q.get_str();
  if (static_cast<int>(digits_str.size()) <= digits)
    digits_str.insert(0, static_cast<std::size_t>(digits + 1 - digits_str.size()), '0');
  std::string out;
  if (sgn(r) < 0 && q != 0) out.push_back('-');
  out += digits_str.substr(0, digits_str.size() - digits);
  if (digits > 0) {
    out.push_back('.');
    out += digits_str.substr(digits_str.size() - digits);
  }
  return out;
}

}  // namespace rtrop
