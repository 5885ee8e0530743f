#pragma once

// Exact rational arithmetic. All cost values and every comparison that decides
// optimality use Rational; doubles appear only as display annotations.

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>
#include <string_view>

#include "fcmj/errors.hpp"
#include "fcmj/numtheory.hpp"

namespace fcmj {

// Kept in lowest terms with positive denominator by the backend.
using Rational = boost::multiprecision::cpp_rational;

inline Int numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rational& r) { return boost::multiprecision::denominator(r); }

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (denom(r) == 1) return numer(r).str();
  return numer(r).str() + "/" + denom(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p/q (~x.yz)" -- exact value first, decimal annotation second.
inline std::string format_approx(const Rational& r) {
  std::ostringstream os;
  os.precision(6);
  os << to_string(r) << " (≈" << to_double(r) << ")";
  return os.str();
}

// Accepts "p" or "p/q" with an optional leading '-'; parsed exactly.
inline Rational parse_rational(std::string_view s) {
  auto fail = [&] { throw ParseError("invalid rational literal: '" + std::string(s) + "'"); };
  std::string_view num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  auto check_digits = [&](std::string_view t, bool allow_sign) {
    if (allow_sign && !t.empty() && t.front() == '-') t.remove_prefix(1);
    if (t.empty()) fail();
    for (char c : t)
      if (c < '0' || c > '9') fail();
  };
  check_digits(num, true);
  check_digits(den, false);
  Int d{std::string(den)};
  if (d == 0) throw ParseError("invalid rational literal: zero denominator in '" + std::string(s) + "'");
  return Rational(Int{std::string(num)}, d);
}

}  // namespace fcmj
