#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed (rational, int) equality with an integer recurses forever under C++20
// rewritten comparisons; a non-template overload takes precedence.
namespace boost {
inline constexpr bool operator==(const rational<std::int64_t>& a, int b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, long long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
}  // namespace boost

namespace glutton {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q", integers and plain decimals ("2.125", "-0.5").
Rational parse_rational(std::string_view text);

// Integers print bare, everything else as "p/q".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

Rational ipow(std::int64_t base, int exp);

// Smallest L >= 0 with c^L >= d. Returns -1 for d == 0.
int ceil_log(const Rational& d, int c);

inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace glutton
