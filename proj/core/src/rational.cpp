#include "rectsurf/rational.hpp"

#include <cctype>

#include "rectsurf/error.hpp"

namespace rectsurf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPointOnCurve: return "PointOnCurve";
    case ErrorCode::kNegativeWinding: return "NegativeWinding";
    case ErrorCode::kInvalidPoint: return "InvalidPoint";
    case ErrorCode::kInvalidSurface: return "InvalidSurface";
    case ErrorCode::kInconsistentEncoding: return "InconsistentEncoding";
    case ErrorCode::kInvalidSubUnion: return "InvalidSubUnion";
    case ErrorCode::kInvalidProbe: return "InvalidProbe";
    case ErrorCode::kRadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::kKTouchesBoundary: return "KTouchesBoundary";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kNotAChain: return "NotAChain";
    case ErrorCode::kNotContainedInS: return "NotContainedInS";
    case ErrorCode::kMalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den))) {
    throw Error(ErrorCode::kMalformedInput, "not a rational literal: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class numerator(n, 10);
  mpz_class denominator = 1;
  if (slash != std::string_view::npos) {
    std::string d(den);
    if (d.front() == '+') d.erase(0, 1);
    denominator = mpz_class(d, 10);
    if (denominator == 0) throw Error(ErrorCode::kMalformedInput, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

std::size_t hash_value(const Rational& value) {
  const std::size_t a = std::hash<std::string>{}(value.get_num().get_str(16));
  const std::size_t b = std::hash<std::string>{}(value.get_den().get_str(16));
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::string format_point(const RatPoint& p) {
  return "(" + format_rational(p.x) + ", " + format_rational(p.y) + ")";
}

}  // namespace rectsurf
