#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace rectsurf {

// Arbitrary precision rational, always kept in lowest terms.
using Rational = mpq_class;

// Parses "p", "-p" or "p/q". Throws Error(kMalformedInput) otherwise.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers print without a denominator.
std::string format_rational(const Rational& value);

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

inline Rational rabs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

std::size_t hash_value(const Rational& value);

struct RatPoint {
  Rational x;
  Rational y;

  friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RatPoint& a, const RatPoint& b) {
    const int c = cmp(a.x, b.x);
    return c != 0 ? c < 0 : a.y < b.y;
  }
  friend RatPoint operator+(const RatPoint& a, const RatPoint& b) { return {a.x + b.x, a.y + b.y}; }
  friend RatPoint operator-(const RatPoint& a, const RatPoint& b) { return {a.x - b.x, a.y - b.y}; }
};

inline Rational squared_norm(const RatPoint& v) { return v.x * v.x + v.y * v.y; }

std::string format_point(const RatPoint& p);

}  // namespace rectsurf

template <>
struct std::hash<rectsurf::Rational> {
  std::size_t operator()(const rectsurf::Rational& v) const { return rectsurf::hash_value(v); }
};
