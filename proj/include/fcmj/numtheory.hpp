#pragma once

// Unbounded-precision integer primitives: gcd, lcm over collections, and
// deterministic primality. Everything downstream (cost rates, the solver,
// the factoring reduction) runs on these; none of it may overflow silently.

#include <boost/multiprecision/cpp_int.hpp>

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace fcmj {

using Int = boost::multiprecision::cpp_int;

inline Int gcd(const Int& a, const Int& b) {
  if (a < 1 || b < 1) throw std::invalid_argument("gcd: arguments must be positive");
  return boost::multiprecision::gcd(a, b);
}

// Divides before multiplying so intermediates stay at lcm size.
inline Int lcm(const Int& a, const Int& b) {
  if (a < 1 || b < 1) throw std::invalid_argument("lcm: arguments must be positive");
  return a / boost::multiprecision::gcd(a, b) * b;
}

// lcm of a nonempty collection, folded pairwise.
inline Int lcm(const std::vector<Int>& values) {
  if (values.empty()) throw std::invalid_argument("lcm of empty set");
  Int acc = 1;
  for (const Int& v : values) acc = lcm(acc, v);
  return acc;
}

inline Int lcm(std::initializer_list<Int> values) {
  return lcm(std::vector<Int>(values));
}

namespace detail {

// True when `a` proves n composite in a Miller-Rabin round, n - 1 = d * 2^s.
inline bool miller_rabin_witness(const Int& n, const Int& d, unsigned s, Int a) {
  a %= n;
  if (a == 0) return false;
  Int x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

// Deterministic primality test. Trial division by the primes below 64 decides
// everything under 67^2; larger inputs go through Miller-Rabin with the first
// twelve prime bases, a proven witness set for every n < 3.3e24 -- far beyond
// the desk-scale integers this toolkit targets. is_prime(1) is false.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  static constexpr unsigned kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                              29, 31, 37, 41, 43, 47, 53, 59, 61};
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 67 * 67) return true;

  Int d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (detail::miller_rabin_witness(n, d, s, a)) return false;
  }
  return true;
}

}  // namespace fcmj
