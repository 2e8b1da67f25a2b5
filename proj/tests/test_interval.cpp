#include <doctest.h>

#include <cmath>
#include <random>

#include "cosrig/interval.hpp"
#include "oracle.hpp"

using namespace cosrig;

namespace {

// containment with slack for the reference's own rounding error (the library
// intervals can be exact points, e.g. cos(pi/3), which a round-to-nearest
// reference misses by one half-ulp)
bool contains_mpfr(const Interval& iv, mpfr_srcptr v, double slack = 1e-140) {
  Real lo(512), hi(512);
  mpfr_sub_d(lo.raw(), iv.lo.raw(), slack, MPFR_RNDD);
  mpfr_add_d(hi.raw(), iv.hi.raw(), slack, MPFR_RNDU);
  return mpfr_cmp(lo.raw(), v) <= 0 && mpfr_cmp(v, hi.raw()) <= 0;
}

}  // namespace

TEST_CASE("cos_pi_rational hits exact algebraic values") {
  auto half = cos_pi_rational(1, 3, 64);
  CHECK(half.interval().contains(0.5));
  CHECK(half.width() == 0.0);  // q = 3 takes the exact route

  auto one = cos_pi_rational(0, 1, 64);
  CHECK(one.interval().lo.to_double() == 1.0);
  CHECK(one.interval().hi.to_double() == 1.0);

  // golden-ratio identity: cos(pi/5) = (1 + sqrt5)/4, referenced at 256 bits
  auto golden = cos_pi_rational(1, 5, 64);
  Real ref(256);
  mpfr_sqrt_ui(ref.raw(), 5, MPFR_RNDN);
  mpfr_add_ui(ref.raw(), ref.raw(), 1, MPFR_RNDN);
  mpfr_div_ui(ref.raw(), ref.raw(), 4, MPFR_RNDN);
  CHECK(contains_mpfr(golden.interval(), ref.raw()));
  CHECK(golden.width() <= std::ldexp(1.0, 4 - 64));
}

TEST_CASE("cos_pi_rational width bound and soundness against a high-precision value") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10000; ++t) {
    long p = static_cast<long>(rng() % 2000) - 1000;
    long q = 1 + static_cast<long>(rng() % 300);
    Prec bits = 32 + static_cast<Prec>(rng() % 160);
    auto c = cos_pi_rational(p, q, bits);
    CHECK(c.width() <= std::ldexp(1.0, static_cast<int>(4 - bits)));

    // oracle: point evaluation at much higher precision, with the argument
    // reduced exactly in the integers first so its own error stays below
    // the interval width
    long pr = ((p % (2 * q)) + 2 * q) % (2 * q);
    Real x(512), ref(512);
    mpfr_const_pi(x.raw(), MPFR_RNDN);
    mpfr_mul_si(x.raw(), x.raw(), pr, MPFR_RNDN);
    mpfr_div_si(x.raw(), x.raw(), q, MPFR_RNDN);
    mpfr_cos(ref.raw(), x.raw(), MPFR_RNDN);
    CHECK(contains_mpfr(c.interval(), ref.raw()));
  }
}

TEST_CASE("cos_pi_rational is periodic modulo 2q") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    long p = static_cast<long>(rng() % 500);
    long q = 1 + static_cast<long>(rng() % 60);
    auto a = cos_pi_rational(p, q, 96);
    auto b = cos_pi_rational(p + 2 * q, q, 96);
    CHECK(iv_cmp(a.interval(), b.interval()) == Cmp::Unknown);  // overlap
  }
}

TEST_CASE("cmp_certified") {
  auto iv = [](double lo, double hi) {
    Interval x(64);
    mpfr_set_d(x.lo.raw(), lo, MPFR_RNDD);
    mpfr_set_d(x.hi.raw(), hi, MPFR_RNDU);
    return CertScalar(std::move(x));
  };
  CHECK(cmp_certified(iv(0.1, 0.2), iv(0.3, 0.4)) == Cmp::Less);
  CHECK(cmp_certified(iv(0.1, 0.35), iv(0.3, 0.4)) == Cmp::Unknown);
  CHECK(cmp_certified(iv(0.5, 0.6), iv(0.3, 0.4)) == Cmp::Greater);

  auto sqrt2 = CertScalar::from_closed_form(ClosedForm(ClosedForm::Kind::Sqrt2), 64);
  auto three_halves = CertScalar::from_closed_form(ClosedForm(ClosedForm::Kind::ThreeHalves), 64);
  CHECK(cmp_certified(sqrt2, three_halves) == Cmp::Less);
}

TEST_CASE("refine reaches tight widths and never widens") {
  auto x = CertScalar::from_closed_form(ClosedForm(ClosedForm::Kind::EightOver3Sqrt3), 64);
  auto r = refine(x, 1e-30);
  CHECK(r.width() <= 1e-30);
  CHECK(r.mid() == doctest::Approx(1.539600717839002).epsilon(1e-14));
  CHECK(mpfr_cmp(r.interval().lo.raw(), x.interval().lo.raw()) >= 0);
  CHECK(mpfr_cmp(r.interval().hi.raw(), x.interval().hi.raw()) <= 0);

  auto zero = CertScalar::exact_zero(64);
  auto rz = refine(zero, 1e-300);
  CHECK(rz.width() == 0.0);
}

TEST_CASE("monotone refinement across a precision ladder") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 50; ++t) {
    long p = static_cast<long>(rng() % 97);
    long q = 7 + static_cast<long>(rng() % 89);
    auto c = cos_pi_rational(p, q, 64);
    double last = c.width();
    for (double target : {1e-25, 1e-40, 1e-60}) {
      c = refine(c, target);
      CHECK(c.width() <= last + 1e-300);
      last = c.width();
    }
  }
}

TEST_CASE("comparing two enclosures of the same value exhausts precision") {
  auto a = CertScalar::from_closed_form(ClosedForm(ClosedForm::Kind::Sqrt2), 64);
  auto b = CertScalar::from_closed_form(ClosedForm(ClosedForm::Kind::Sqrt2), 128);
  CHECK_THROWS_AS(cmp_refining(a, b), PrecisionExhausted);
}

TEST_CASE("matches_closed_form") {
  auto s = ClosedForm::cos_sum({{+1, RationalAngle::canonicalized(1, 5)},
                                {+1, RationalAngle::canonicalized(2, 5)}});
  CHECK(s.kind() == ClosedForm::Kind::Sqrt5Over2);
  CHECK(matches_closed_form(CertScalar::from_closed_form(s),
                            ClosedForm(ClosedForm::Kind::Sqrt5Over2)));

  // 1.4961 +- 1e-5 is far from sqrt2
  Interval iv(64);
  mpfr_set_d(iv.lo.raw(), 1.49609, MPFR_RNDD);
  mpfr_set_d(iv.hi.raw(), 1.49611, MPFR_RNDU);
  CHECK(!matches_closed_form(CertScalar(std::move(iv)), ClosedForm(ClosedForm::Kind::Sqrt2),
                             1e-4));
}

TEST_CASE("closed form recognition and tokens") {
  auto two = ClosedForm::cos_sum({{+1, RationalAngle()}, {-1, RationalAngle::canonicalized(1, 1)}});
  CHECK(two.kind() == ClosedForm::Kind::Two);

  auto c11 = ClosedForm::cos_sum({{+1, RationalAngle::canonicalized(2, 11)},
                                  {-1, RationalAngle::canonicalized(8, 11)}});
  CHECK(c11.kind() == ClosedForm::Kind::CosSum);
  CHECK(c11.token() == "cos(2/11*pi)+cos(3/11*pi)");
  CHECK(!c11.exact().has_value());

  CHECK(ClosedForm::parse_token("three-halves")->kind() == ClosedForm::Kind::ThreeHalves);
  CHECK(ClosedForm::parse_token("sqrt5-over-2")->kind() == ClosedForm::Kind::Sqrt5Over2);
  CHECK(!ClosedForm::parse_token("bogus").has_value());
}

TEST_CASE("interval cos handles extrema inside the range") {
  Interval x(96);
  mpfr_set_d(x.lo.raw(), 3.0, MPFR_RNDD);
  mpfr_set_d(x.hi.raw(), 3.3, MPFR_RNDU);  // contains pi
  Interval c = iv_cos(x);
  CHECK(c.lo.to_double() == -1.0);
  CHECK(c.hi.to_double() < -0.97);

  mpfr_set_d(x.lo.raw(), 0.0, MPFR_RNDD);
  mpfr_set_d(x.hi.raw(), 7.0, MPFR_RNDU);  // full range
  c = iv_cos(x);
  CHECK(c.lo.to_double() == -1.0);
  CHECK(c.hi.to_double() == 1.0);
}

TEST_CASE("cmp_certified is antisymmetric and consistent with midpoints") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    auto x = cos_pi_rational(static_cast<long>(rng() % 101), 1 + static_cast<long>(rng() % 47),
                             64);
    auto y = cos_pi_rational(static_cast<long>(rng() % 101), 1 + static_cast<long>(rng() % 47),
                             64);
    Cmp xy = cmp_certified(x, y);
    Cmp yx = cmp_certified(y, x);
    if (xy == Cmp::Less) {
      CHECK(yx == Cmp::Greater);
      CHECK(x.mid() < y.mid());
    } else if (xy == Cmp::Greater) {
      CHECK(yx == Cmp::Less);
      CHECK(x.mid() > y.mid());
    } else {
      CHECK(yx == Cmp::Unknown);
    }
  }
}

TEST_CASE("cos(n*a) is periodic in n with the angle's order") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 100; ++t) {
    auto a = RationalAngle::canonicalized(static_cast<long>(rng() % 60),
                                          1 + static_cast<long>(rng() % 30));
    long u = a.order().get_si();
    long n = 1 + static_cast<long>(rng() % 1000);
    auto c1 = cos_pi_rational(n * a.numer(), a.denom(), 96);
    auto c2 = cos_pi_rational((n + u) * a.numer(), a.denom(), 96);
    CHECK(closed_forms_equal(c1.closed_form(), c2.closed_form()));
  }
}

TEST_CASE("quad values decide exact equalities") {
  QuadValue a(mpq_class(3, 2));
  auto sum = ClosedForm::cos_sum({{+1, RationalAngle()}, {+1, RationalAngle::canonicalized(1, 3)}});
  REQUIRE(sum.exact().has_value());
  CHECK(*sum.exact() == a);
  CHECK(quad_sign(quad_sub(*sum.exact(), a)) == 0);
  CHECK(quad_sign(quad_sub(QuadValue(mpq_class(2)), a)) == 1);
}
