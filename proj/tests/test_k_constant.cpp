#include <doctest.h>

#include <random>
#include <set>

#include "cosrig/errors.hpp"
#include "cosrig/k_constant.hpp"
#include "oracle.hpp"

using namespace cosrig;

TEST_CASE("delta sets") {
  CHECK(delta_set(12) == std::vector<long>({1, 5}));
  CHECK(delta1_set(12) == std::vector<long>({5}));
  CHECK(delta_set(6) == std::vector<long>({1}));
  CHECK(delta1_set(6).empty());
  CHECK(delta_set(1) == std::vector<long>({1}));
  for (long u : {2L, 3L, 4L, 6L}) CHECK(delta1_set(u).empty());
  for (long u = 5; u <= 40; ++u) {
    if (u == 6) continue;
    CHECK(!delta1_set(u).empty());
  }
}

TEST_CASE("sigma values") {
  for (long u : {1L, 2L, 3L, 4L, 5L, 6L, 8L, 10L})
    CHECK(sigma(u).closed_form().kind() == ClosedForm::Kind::ThreeHalves);
  for (long u : {7L, 9L, 11L, 12L, 13L, 14L, 15L}) {
    auto s = sigma(u);
    Interval th = ClosedForm(ClosedForm::Kind::ThreeHalves).enclosure(128);
    CHECK(mpfr_cmp(s.interval().lo.raw(), th.hi.raw()) > 0);
  }
}

TEST_CASE("theta values") {
  CHECK(theta(5).closed_form().kind() == ClosedForm::Kind::Sqrt5Over2);
  CHECK(theta(10).closed_form().kind() == ClosedForm::Kind::Sqrt5Over2);
  CHECK(theta(8).closed_form().kind() == ClosedForm::Kind::Sqrt2);
  CHECK(theta(16).closed_form().kind() == ClosedForm::Kind::Sqrt2);
  CHECK(theta(4).closed_form().kind() == ClosedForm::Kind::Two);
  CHECK(theta(11).closed_form().token() == "cos(2/11*pi)+cos(3/11*pi)");
  CHECK(theta(22).closed_form().token() == "cos(2/11*pi)+cos(3/11*pi)");
  CHECK(theta(11).mid() == doctest::Approx(1.4961).epsilon(2e-4));
}

TEST_CASE("k per order golden values") {
  CHECK(k_of_order(5).closed_form().kind() == ClosedForm::Kind::Sqrt5Over2);
  CHECK(k_of_order(16).closed_form().kind() == ClosedForm::Kind::Sqrt2);
  CHECK(k_of_order(12).closed_form().kind() == ClosedForm::Kind::ThreeHalves);
  auto k7 = k_of_order(7);
  CHECK(k7.value.mid() > 1.5);
  CHECK(k7.value.mid() <= 8.0 / (3.0 * std::sqrt(3.0)) + 1e-12);
}

TEST_CASE("k of symbolic angles") {
  auto ki = k_of_angle(SymbolicAngle{IrrationalMultipleOfPi{}});
  CHECK(ki.max_irrational);
  CHECK(ki.closed_form().kind() == ClosedForm::Kind::EightOver3Sqrt3);

  auto k0 = k_of_angle(SymbolicAngle{RationalAngle()});
  CHECK(k0.closed_form().kind() == ClosedForm::Kind::ThreeHalves);
  auto k_half_pi = k_of_angle(SymbolicAngle{RationalAngle::canonicalized(1, 2)});
  CHECK(k_half_pi.closed_form().kind() == ClosedForm::Kind::ThreeHalves);
}

TEST_CASE("orders 1, 2, 4 fall out of the general formula with value 3/2") {
  for (long u : {1L, 2L, 4L})
    CHECK(k_of_order(u).closed_form().kind() == ClosedForm::Kind::ThreeHalves);
}

TEST_CASE("k agrees with the double-precision brute oracle") {
  for (long u = 1; u <= 36; ++u)
    CHECK(k_of_order(u).value.mid() == doctest::Approx(oracle::k_brute(u)).epsilon(1e-9));
}

TEST_CASE("k depends only on the order") {
  for (long u : {5L, 9L, 12L, 16L, 22L}) {
    KValue base = k_of_order(u);
    for (const auto& a : angles_of_order(u)) {
      KValue k = k_of_angle(SymbolicAngle{a});
      CHECK(closed_forms_equal(k.closed_form(), base.closed_form()));
      CHECK(k.value.mid() == doctest::Approx(base.value.mid()).epsilon(1e-15));
    }
  }
}

TEST_CASE("floor and ceiling on a sampled range") {
  Threshold floor = Threshold::from_closed_form(ClosedForm(ClosedForm::Kind::Sqrt5Over2));
  for (long u = 1; u <= 40; ++u) {
    Rel rel = k_order_vs_threshold(u, floor);
    CHECK((rel == Rel::Above || rel == Rel::Equal));
    // strict ceiling for rational orders
    auto k = k_of_order(u);
    Interval cap = ClosedForm(ClosedForm::Kind::EightOver3Sqrt3).enclosure(256);
    CHECK(mpfr_cmp(k.value.interval().hi.raw(), cap.lo.raw()) < 0);
  }
}

TEST_CASE("strict ceiling for every order up to 200") {
  // k(u) <= sigma(u) <= the w = 1 competitor, whose sup samples the
  // triple-frequency difference at rational points and so stays strictly
  // below 8/(3*sqrt3)
  Threshold ceiling = Threshold::from_closed_form(ClosedForm(ClosedForm::Kind::EightOver3Sqrt3));
  for (long u = 1; u <= 200; ++u) {
    auto a = RationalAngle::canonicalized(2, 3 * u);
    auto b = RationalAngle::canonicalized(2, u);
    CHECK(compare_sup_to(a, b, ceiling) == Rel::Below);
  }
}

TEST_CASE("omega golden enumerations") {
  auto o12 = omega(*Threshold::parse("1.2"));
  CHECK(o12.order_classes == std::vector<long>({5, 10}));
  REQUIRE(o12.members.size() == 4);
  CHECK(o12.members[0].first == RationalAngle::canonicalized(1, 5));
  CHECK(o12.members[1].first == RationalAngle::canonicalized(2, 5));
  CHECK(o12.members[2].first == RationalAngle::canonicalized(3, 5));
  CHECK(o12.members[3].first == RationalAngle::canonicalized(4, 5));

  auto o10 = omega(*Threshold::parse("1.0"));
  CHECK(o10.members.empty());
  CHECK(o10.discrepancies.empty());
}

TEST_CASE("every omega member has a gamma witness at the same threshold") {
  auto m = Threshold::from_closed_form(ClosedForm(ClosedForm::Kind::ThreeHalves));
  auto o = omega(m);
  for (const auto& [a, k] : o.members) {
    auto g = gamma(a, m);
    // k(a) <= m means some distinct angle sits within sup-distance m
    CHECK(g.members.size() >= 2);
  }
}

TEST_CASE("omega is monotone in the threshold") {
  auto o1 = omega(*Threshold::parse("1.3"));
  auto o2 = omega(*Threshold::parse("1.45"));
  std::set<RationalAngle> bigger;
  for (const auto& [a, k] : o2.members) bigger.insert(a);
  for (const auto& [a, k] : o1.members) CHECK(bigger.count(a) == 1);
}

TEST_CASE("omega rejects thresholds at or above the irrational ceiling") {
  CHECK_THROWS_AS(omega(Threshold::from_closed_form(ClosedForm(ClosedForm::Kind::EightOver3Sqrt3))),
                  ThresholdTooHigh);
  CHECK_THROWS_AS(omega(*Threshold::parse("1.54")), ThresholdTooHigh);
}

TEST_CASE("triple-sup classification report") {
  auto rep = verify_triple_sup_classification();
  CHECK(rep.all_pass);
  // 34 classification rows plus the sampled range [35, 60]
  CHECK(rep.rows.size() == 60);
  for (const auto& row : rep.rows) {
    CHECK(row.pass);
    if (row.u == 22) CHECK(row.expected.token() == "cos(2/11*pi)+cos(3/11*pi)");
    if (row.u == 2) CHECK(row.expected.terms().empty());
    if (row.u >= 35) CHECK(row.expect_above_three_halves);
  }
}
