#include <doctest.h>

#include <random>

#include "cosrig/angle.hpp"
#include "oracle.hpp"

using namespace cosrig;

namespace {
RationalAngle A(long p, long q) { return RationalAngle::canonicalized(p, q); }
}  // namespace

TEST_CASE("canonicalize reduces into [0, pi] and caches the order") {
  auto a = A(2, 5);
  CHECK(a.numer() == 2);
  CHECK(a.denom() == 5);
  CHECK(a.order() == 5);

  auto b = A(9, 4);  // 9 pi/4 == pi/4
  CHECK(b.numer() == 1);
  CHECK(b.denom() == 4);
  CHECK(b.order() == 8);

  auto c = A(-1, 3);  // reflection, cos is even
  CHECK(c == A(1, 3));
  CHECK(c.order() == 6);

  CHECK(A(0, 7) == RationalAngle());
  CHECK(A(7, 7).is_pi());
  CHECK(A(3, -2) == A(1, 2));  // negative denominator
}

TEST_CASE("canonicalize is idempotent and order divides 2q") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 400; ++t) {
    long p = static_cast<long>(rng() % 400) - 200;
    long q = static_cast<long>(rng() % 60) + 1;
    auto a = RationalAngle::canonicalized(p, q);
    auto again = RationalAngle::canonicalized(a.numer(), a.denom());
    CHECK(a == again);
    CHECK(mpz_class(2 * q) % a.order() == 0);
  }
}

TEST_CASE("order examples") {
  CHECK(order_of(RationalAngle()) == 1);
  CHECK(order_of(A(1, 1)) == 2);
  CHECK(order_of(A(2, 3)) == 3);
}

TEST_CASE("totient matches brute force and is multiplicative") {
  CHECK(totient(1) == 1);
  CHECK(totient(12) == 4);
  CHECK(totient(11) == 10);
  for (long n = 1; n <= 500; ++n) CHECK(totient(n) == oracle::totient_brute(n));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    long m = 1 + static_cast<long>(rng() % 80);
    long n = 1 + static_cast<long>(rng() % 80);
    if (std::gcd(m, n) != 1) continue;
    CHECK(totient(m) * totient(n) == totient(mpz_class(m) * n));
  }
}

TEST_CASE("inverse totient") {
  CHECK(inverse_totient(2) == std::vector<mpz_class>({3, 4, 6}));
  CHECK(inverse_totient(1) == std::vector<mpz_class>({1, 2}));
  CHECK(inverse_totient(14).empty());

  for (long v = 1; v <= 48; ++v) {
    auto got = inverse_totient(v);
    auto want = oracle::inverse_totient_brute(v, v * v + v + 1);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
  }
}

TEST_CASE("n is in inverse_totient(totient(n))") {
  for (long n = 1; n <= 10000; ++n) {
    auto set = inverse_totient(totient(n));
    CHECK(std::find(set.begin(), set.end(), mpz_class(n)) != set.end());
  }
}

TEST_CASE("angles_of_order enumerates the primitive representatives") {
  auto one = angles_of_order(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].is_zero());

  auto five = angles_of_order(5);
  REQUIRE(five.size() == 2);
  CHECK(five[0] == A(2, 5));
  CHECK(five[1] == A(4, 5));

  auto sixteen = angles_of_order(16);
  REQUIRE(sixteen.size() == 4);
  CHECK(sixteen[0] == A(1, 8));
  CHECK(sixteen[1] == A(3, 8));
  CHECK(sixteen[2] == A(5, 8));
  CHECK(sixteen[3] == A(7, 8));

  for (long u = 3; u <= 120; ++u) {
    auto angles = angles_of_order(u);
    CHECK(mpz_class(2 * angles.size()) == totient(u));
    for (const auto& a : angles) CHECK(a.order() == u);
  }
}

TEST_CASE("serialization round-trips") {
  CHECK(RationalAngle().str() == "0");
  CHECK(A(1, 1).str() == "1");
  CHECK(A(2, 5).str() == "2/5");
  CHECK(RationalAngle::parse("2/5").value() == A(2, 5));
  CHECK(RationalAngle::parse("0").value().is_zero());
  CHECK(RationalAngle::parse("1").value().is_pi());
  CHECK(!RationalAngle::parse("x/3").has_value());
  CHECK(!RationalAngle::parse("1/0").has_value());

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto a = RationalAngle::canonicalized(static_cast<long>(rng() % 100),
                                          1 + static_cast<long>(rng() % 50));
    CHECK(RationalAngle::parse(a.str()).value() == a);
  }
}
