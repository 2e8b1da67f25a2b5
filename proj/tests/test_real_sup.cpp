#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cosrig/errors.hpp"
#include "cosrig/real_sup.hpp"
#include "oracle.hpp"

using namespace cosrig;

TEST_CASE("trig_diff_sup golden values") {
  auto r13 = trig_diff_sup(1, 3, 1e-10);
  CHECK(r13.value.width() <= 1e-10);
  CHECK(r13.value.interval().contains(8.0 / (3.0 * std::sqrt(3.0))));
  CHECK(r13.value.closed_form().kind() == ClosedForm::Kind::EightOver3Sqrt3);

  auto r12 = trig_diff_sup(1, 2);
  CHECK(r12.value.closed_form().kind() == ClosedForm::Kind::Two);
  CHECK(r12.value.mid() == 2.0);
  CHECK(r12.value.width() == 0.0);

  auto r11 = trig_diff_sup(1, 1);
  CHECK(r11.value.mid() == 0.0);

  auto r35 = trig_diff_sup(3, 5);
  CHECK(r35.value.interval().lo.to_double() > 1.85);
}

TEST_CASE("dense grid sampling stays inside the certified bounds") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 12; ++t) {
    long p = 1 + static_cast<long>(rng() % 9);
    long q = 1 + static_cast<long>(rng() % 9);
    auto sup = trig_diff_sup(p, q, 1e-9);
    double grid = oracle::real_sup_grid(p, q, 1000000);
    CHECK(grid <= sup.value.interval().hi.to_double() + 1e-15);
    CHECK(grid >= sup.value.interval().lo.to_double() - 1e-9);
  }
}

TEST_CASE("scale invariance") {
  for (auto [p, q] : {std::pair<long, long>{1, 3}, {2, 5}, {3, 7}}) {
    auto base = trig_diff_sup(p, q, 1e-11);
    for (long k : {2L, 3L}) {
      auto scaled = trig_diff_sup(k * p, k * q, 1e-11);
      CHECK(scaled.value.mid() == doctest::Approx(base.value.mid()).epsilon(1e-10));
    }
  }
}

TEST_CASE("coprime pairs with an even product reach 2; odd pairs beat 8/(3*sqrt3)") {
  Threshold ceiling = Threshold::from_closed_form(ClosedForm(ClosedForm::Kind::EightOver3Sqrt3));
  for (long p = 1; p <= 9; ++p) {
    for (long q = p + 1; q <= 9; ++q) {
      if (std::gcd(p, q) != 1) continue;
      if (p % 2 == 0 || q % 2 == 0) {
        auto sup = trig_diff_sup(p, q);
        CHECK(sup.value.closed_form().kind() == ClosedForm::Kind::Two);
      } else if (q != 3 * p) {
        CHECK(trig_diff_sup_exceeds(p, q, ceiling));
      }
    }
  }
  CHECK(!trig_diff_sup_exceeds(1, 3, ceiling));
}

TEST_CASE("exceedance_interval") {
  auto len = exceedance_interval(1, 2, *Threshold::parse("1.5"));
  CHECK(len.interval().lo.to_double() >= 2 * 0.4472);
  CHECK(len.interval().lo.to_double() <= 2 * 0.4473);

  auto len13 = exceedance_interval(1, 3, *Threshold::parse("1.5"));
  CHECK(len13.interval().lo.to_double() > 0.0);

  CHECK_THROWS_AS(exceedance_interval(1, 1, *Threshold::parse("0.5")), ThresholdAboveSup);
  CHECK_THROWS_AS(exceedance_interval(1, 3, *Threshold::parse("1.55")), ThresholdAboveSup);
}

TEST_CASE("order_threshold stays within the published rows") {
  Threshold m = *Threshold::parse("1.5");
  CHECK(order_threshold(1, 2, m) <= 8);
  CHECK(order_threshold(1, 5, m) <= 21);
  CHECK(order_threshold(3, 11, m) <= 40);
}

TEST_CASE("order_threshold certifies the cyclic exceedance it promises") {
  Threshold m = *Threshold::parse("1.5");
  std::mt19937_64 rng(71);
  for (auto [p, q] : {std::pair<long, long>{1, 2}, {1, 5}, {3, 7}}) {
    long u0 = order_threshold(p, q, m);
    for (int t = 0; t < 20; ++t) {
      long u = u0 + static_cast<long>(rng() % 40);
      auto a = RationalAngle::canonicalized(2 * p, u);
      auto b = RationalAngle::canonicalized(2 * q, u);
      CHECK(compare_sup_to(a, b, m) == Rel::Above);
    }
  }
}

TEST_CASE("taylor tables dominate the published thresholds") {
  auto [f, g] = taylor_tables();
  REQUIRE(f.size() == 4);
  REQUIRE(g.size() == 13);

  CHECK(f[0].s == 2);
  CHECK(f[0].delta == 5);
  CHECK(f[0].threshold_u <= 8);
  CHECK(f[1].s == 4);
  CHECK(f[1].theta.mid() == doctest::Approx(2.0));
  CHECK(f[1].threshold_u <= 13);

  for (const auto& row : f) {
    CHECK(row.threshold_u <= row.reference_u);
    CHECK(row.delta == row.p * row.p + row.q * row.q);
    // strict ell^2 * delta < 2*theta - 3, checked at full precision (the gap
    // is one ulp by construction, invisible to doubles)
    Interval lhs = iv_mul(iv_mul(row.ell.interval(), row.ell.interval()),
                          iv_exact(row.delta, 128));
    Interval rhs = iv_sub(iv_mul(iv_exact(2L, 128), row.theta.interval()), iv_exact(3L, 128));
    CHECK(mpfr_cmp(lhs.hi.raw(), rhs.lo.raw()) < 0);
  }
  for (const auto& row : g) {
    CHECK(row.threshold_u <= row.reference_u);
    CHECK(row.p == 3);
  }
  // softer spot values
  CHECK(g[7].s == 13);
  CHECK(g[7].theta.interval().lo.to_double() > 1.97);
  CHECK(g[0].s == 2);
  CHECK(g[0].theta.mid() == doctest::Approx(2.0));
  CHECK(g[0].threshold_u <= 12);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(trig_diff_sup(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(trig_diff_sup(1, 3, -1.0), std::invalid_argument);
}
