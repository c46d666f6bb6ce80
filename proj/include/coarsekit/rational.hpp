#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace coarsekit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline Rational rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

/// Parse "p", "p/q" or a plain decimal like "-1.25" into an exact rational.
Rational parse_rational(const std::string& s);

/// Canonical "p/q" (or "p" when integral) form, suitable for round-tripping.
std::string format_rational(const Rational& q);

/// Nearest rational to x with denominator at most max_den (continued fractions).
Rational rational_reconstruct(double x, long long max_den);

}  // namespace coarsekit
