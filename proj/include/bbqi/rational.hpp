#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace bbqi {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p/q" or "p/q"; throws std::invalid_argument on malformed input
// or zero denominator.
inline Rational parse_rational(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("bad rational: '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Int floor_int(const Rational& q) {
  Int n = numerator(q), d = denominator(q);  // d > 0 canonically
  if (n >= 0) return n / d;
  return -((-n + d - 1) / d);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

template <class T>
T from_rational(const Rational& q);
template <>
inline double from_rational<double>(const Rational& q) {
  return to_double(q);
}
template <>
inline Rational from_rational<Rational>(const Rational& q) {
  return q;
}

}  // namespace bbqi
