#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fcmj/numtheory.hpp"
#include "oracles.hpp"

using fcmj::Int;

TEST_CASE("gcd on small hand cases") {
  CHECK(fcmj::gcd(12, 8) == 4);
  CHECK(fcmj::gcd(10, 15) == 5);
  for (int a = 1; a <= 50; ++a) CHECK(fcmj::gcd(a, 1) == 1);
  CHECK(fcmj::gcd(Int("123456789123456789"), Int("123456789123456789")) ==
        Int("123456789123456789"));
  CHECK_THROWS_AS(fcmj::gcd(0, 5), std::invalid_argument);
}

TEST_CASE("lcm on collections") {
  CHECK(fcmj::lcm({Int(4), Int(6)}) == 12);
  CHECK(fcmj::lcm({Int(7)}) == 7);
  CHECK(fcmj::lcm({Int(2), Int(3), Int(5)}) == 30);
  CHECK(fcmj::lcm({Int(6), Int(4)}) == 12);  // order-independent
  CHECK_THROWS_WITH(fcmj::lcm(std::vector<Int>{}), "lcm of empty set");
}

TEST_CASE("gcd times lcm equals the product") {
  std::mt19937_64 rng(20240901);
  std::uniform_int_distribution<std::uint64_t> d(1, 1'000'000);
  for (int i = 0; i < 500; ++i) {
    Int a = d(rng), b = d(rng);
    CHECK(fcmj::gcd(a, b) * fcmj::lcm(a, b) == a * b);
    CHECK(fcmj::gcd(a, b) == fcmj::gcd(b, a));
  }
}

TEST_CASE("lcm divides any common multiple and is divided by every element") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> d(1, 40);
  for (int i = 0; i < 200; ++i) {
    std::vector<Int> s;
    Int product = 1;
    for (int k = std::uniform_int_distribution<int>(1, 5)(rng); k > 0; --k) {
      s.push_back(Int(d(rng)));
      product *= s.back();
    }
    Int l = fcmj::lcm(s);
    for (const Int& v : s) CHECK(l % v == 0);
    CHECK(product % l == 0);
  }
}

TEST_CASE("is_prime small cases") {
  CHECK(fcmj::is_prime(2));
  CHECK_FALSE(fcmj::is_prime(1));
  CHECK_FALSE(fcmj::is_prime(0));
  CHECK_FALSE(fcmj::is_prime(561));  // 3 * 11 * 17, a Carmichael number
  CHECK(fcmj::is_prime(7919));
}

TEST_CASE("is_prime agrees with trial division up to 1e5") {
  for (std::uint64_t n = 0; n <= 100'000; ++n)
    REQUIRE(fcmj::is_prime(Int(n)) == oracle::trial_division_prime(n));
}

TEST_CASE("is_prime beyond 64-bit-adjacent values") {
  CHECK(fcmj::is_prime(Int("2305843009213693951")));  // 2^61 - 1
  CHECK_FALSE(fcmj::is_prime(Int("2305843009213693951") * Int("2305843009213693951")));
  CHECK_FALSE(fcmj::is_prime(Int(1'000'003) * Int(1'000'003)));
  CHECK_FALSE(fcmj::is_prime(Int("10585")));  // Carmichael
}
