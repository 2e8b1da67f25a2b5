#include "cosrig/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cosrig {

namespace {

Prec op_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

void set_min2(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr b) {
  mpfr_min(out, a, b, MPFR_RNDD);
}
void set_max2(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr b) {
  mpfr_max(out, a, b, MPFR_RNDU);
}

}  // namespace

std::string Real::str() const {
  if (mpfr_zero_p(v_)) return "0";
  int digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 3;
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

double Interval::width() const {
  Real w(precision());
  mpfr_sub(w.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

double Interval::mid() const {
  Real m(precision());
  mpfr_add(m.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
  mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
  return m.to_double(MPFR_RNDN);
}

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo.raw(), x) <= 0 && mpfr_cmp_d(hi.raw(), x) >= 0;
}

Interval iv_exact(long v, Prec prec) {
  Interval r(prec);
  mpfr_set_si(r.lo.raw(), v, MPFR_RNDD);
  mpfr_set_si(r.hi.raw(), v, MPFR_RNDU);
  return r;
}

Interval iv_exact(const mpq_class& v, Prec prec) {
  Interval r(prec);
  mpfr_set_q(r.lo.raw(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi.raw(), v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval iv_pi(Prec prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo.raw(), MPFR_RNDD);
  mpfr_const_pi(r.hi.raw(), MPFR_RNDU);
  return r;
}

Interval iv_add(const Interval& a, const Interval& b) {
  Interval r(op_prec(a, b));
  mpfr_add(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
  mpfr_add(r.hi.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
  return r;
}

Interval iv_sub(const Interval& a, const Interval& b) {
  Interval r(op_prec(a, b));
  mpfr_sub(r.lo.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDD);
  mpfr_sub(r.hi.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDU);
  return r;
}

Interval iv_mul(const Interval& a, const Interval& b) {
  Prec p = op_prec(a, b);
  Interval r(p);
  Real t(p), best(p);
  mpfr_srcptr as[2] = {a.lo.raw(), a.hi.raw()};
  mpfr_srcptr bs[2] = {b.lo.raw(), b.hi.raw()};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t.raw(), x, y, MPFR_RNDD);
      if (first) {
        mpfr_set(best.raw(), t.raw(), MPFR_RNDD);
        first = false;
      } else {
        set_min2(best.raw(), best.raw(), t.raw());
      }
    }
  mpfr_set(r.lo.raw(), best.raw(), MPFR_RNDD);
  first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t.raw(), x, y, MPFR_RNDU);
      if (first) {
        mpfr_set(best.raw(), t.raw(), MPFR_RNDU);
        first = false;
      } else {
        set_max2(best.raw(), best.raw(), t.raw());
      }
    }
  mpfr_set(r.hi.raw(), best.raw(), MPFR_RNDU);
  return r;
}

Interval iv_div(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo.raw()) <= 0 && mpfr_sgn(b.hi.raw()) >= 0)
    throw std::domain_error("iv_div: divisor interval contains zero");
  Prec p = op_prec(a, b);
  Interval r(p);
  Real t(p), best(p);
  mpfr_srcptr as[2] = {a.lo.raw(), a.hi.raw()};
  mpfr_srcptr bs[2] = {b.lo.raw(), b.hi.raw()};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_div(t.raw(), x, y, MPFR_RNDD);
      if (first) {
        mpfr_set(best.raw(), t.raw(), MPFR_RNDD);
        first = false;
      } else {
        set_min2(best.raw(), best.raw(), t.raw());
      }
    }
  mpfr_set(r.lo.raw(), best.raw(), MPFR_RNDD);
  first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_div(t.raw(), x, y, MPFR_RNDU);
      if (first) {
        mpfr_set(best.raw(), t.raw(), MPFR_RNDU);
        first = false;
      } else {
        set_max2(best.raw(), best.raw(), t.raw());
      }
    }
  mpfr_set(r.hi.raw(), best.raw(), MPFR_RNDU);
  return r;
}

Interval iv_neg(const Interval& a) {
  Interval r(a.precision());
  mpfr_neg(r.lo.raw(), a.hi.raw(), MPFR_RNDD);
  mpfr_neg(r.hi.raw(), a.lo.raw(), MPFR_RNDU);
  return r;
}

Interval iv_abs(const Interval& a) {
  Interval r(a.precision());
  if (mpfr_sgn(a.lo.raw()) >= 0) return a;
  if (mpfr_sgn(a.hi.raw()) <= 0) return iv_neg(a);
  // straddles zero
  Real nl(a.precision());
  mpfr_neg(nl.raw(), a.lo.raw(), MPFR_RNDU);
  mpfr_set_zero(r.lo.raw(), 1);
  set_max2(r.hi.raw(), nl.raw(), a.hi.raw());
  return r;
}

Interval iv_sqrt(const Interval& a) {
  if (mpfr_sgn(a.hi.raw()) < 0) throw std::domain_error("iv_sqrt: negative interval");
  Interval r(a.precision());
  if (mpfr_sgn(a.lo.raw()) < 0) {
    mpfr_set_zero(r.lo.raw(), 1);  // clamp rounding spill below zero
  } else {
    mpfr_sqrt(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
  }
  mpfr_sqrt(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
  return r;
}

Interval iv_pow_ui(const Interval& a, unsigned long e) {
  Interval r = iv_exact(1, a.precision());
  for (unsigned long i = 0; i < e; ++i) r = iv_mul(r, a);
  return r;
}

Interval iv_hull(const Interval& a, const Interval& b) {
  Interval r(op_prec(a, b));
  set_min2(r.lo.raw(), a.lo.raw(), b.lo.raw());
  set_max2(r.hi.raw(), a.hi.raw(), b.hi.raw());
  return r;
}

Cmp iv_cmp(const Interval& a, const Interval& b) {
  if (mpfr_cmp(a.hi.raw(), b.lo.raw()) < 0) return Cmp::Less;
  if (mpfr_cmp(a.lo.raw(), b.hi.raw()) > 0) return Cmp::Greater;
  return Cmp::Unknown;
}

namespace {

// Conservative integer bounds for multiples of pi inside [x.lo, x.hi].
// Returns false when the range is too wide to enumerate.
bool pi_multiples_range(const Interval& x, long& k_first, long& k_last) {
  Prec p = x.precision() + 8;
  Interval pi = iv_pi(p);
  Interval xl(p), xh(p);
  mpfr_set(xl.lo.raw(), x.lo.raw(), MPFR_RNDD);
  mpfr_set(xl.hi.raw(), x.lo.raw(), MPFR_RNDU);
  mpfr_set(xh.lo.raw(), x.hi.raw(), MPFR_RNDD);
  mpfr_set(xh.hi.raw(), x.hi.raw(), MPFR_RNDU);
  Interval q1 = iv_div(xl, pi), q2 = iv_div(xh, pi);
  Real t(p);
  mpfr_ceil(t.raw(), q1.lo.raw());
  if (!mpfr_fits_slong_p(t.raw(), MPFR_RNDN)) return false;
  k_first = mpfr_get_si(t.raw(), MPFR_RNDN);
  mpfr_floor(t.raw(), q2.hi.raw());
  if (!mpfr_fits_slong_p(t.raw(), MPFR_RNDN)) return false;
  k_last = mpfr_get_si(t.raw(), MPFR_RNDN);
  return true;
}

}  // namespace

Interval iv_cos(const Interval& x) {
  Prec p = x.precision();
  Interval r(p);
  long k1 = 0, k2 = 0;
  if (!pi_multiples_range(x, k1, k2) || k2 - k1 >= 2) {
    mpfr_set_si(r.lo.raw(), -1, MPFR_RNDD);
    mpfr_set_si(r.hi.raw(), 1, MPFR_RNDU);
    return r;
  }
  Real cll(p), clu(p), chl(p), chu(p);
  mpfr_cos(cll.raw(), x.lo.raw(), MPFR_RNDD);
  mpfr_cos(clu.raw(), x.lo.raw(), MPFR_RNDU);
  mpfr_cos(chl.raw(), x.hi.raw(), MPFR_RNDD);
  mpfr_cos(chu.raw(), x.hi.raw(), MPFR_RNDU);
  set_min2(r.lo.raw(), cll.raw(), chl.raw());
  set_max2(r.hi.raw(), clu.raw(), chu.raw());
  for (long k = k1; k <= k2; ++k) {
    if ((k % 2) == 0) {
      mpfr_set_si(r.hi.raw(), 1, MPFR_RNDU);
    } else {
      mpfr_set_si(r.lo.raw(), -1, MPFR_RNDD);
    }
  }
  // clamp to the range of cos against rounding spill
  Real one(p);
  mpfr_set_si(one.raw(), 1, MPFR_RNDN);
  if (mpfr_cmp_si(r.hi.raw(), 1) > 0) mpfr_set(r.hi.raw(), one.raw(), MPFR_RNDU);
  mpfr_neg(one.raw(), one.raw(), MPFR_RNDN);
  if (mpfr_cmp_si(r.lo.raw(), -1) < 0) mpfr_set(r.lo.raw(), one.raw(), MPFR_RNDD);
  return r;
}

Interval iv_sin(const Interval& x) {
  Prec p = x.precision();
  Interval half_pi = iv_pi(p + 8);
  mpfr_div_2ui(half_pi.lo.raw(), half_pi.lo.raw(), 1, MPFR_RNDD);
  mpfr_div_2ui(half_pi.hi.raw(), half_pi.hi.raw(), 1, MPFR_RNDU);
  return iv_cos(iv_sub(x, half_pi));
}

Interval iv_acos(const Interval& x) {
  Prec p = x.precision();
  if (mpfr_cmp_si(x.lo.raw(), 1) > 0 || mpfr_cmp_si(x.hi.raw(), -1) < 0)
    throw std::domain_error("iv_acos: interval outside [-1, 1]");
  Real a(p), b(p);
  mpfr_set(a.raw(), x.hi.raw(), MPFR_RNDN);
  if (mpfr_cmp_si(a.raw(), 1) > 0) mpfr_set_si(a.raw(), 1, MPFR_RNDN);
  mpfr_set(b.raw(), x.lo.raw(), MPFR_RNDN);
  if (mpfr_cmp_si(b.raw(), -1) < 0) mpfr_set_si(b.raw(), -1, MPFR_RNDN);
  Interval r(p);
  mpfr_acos(r.lo.raw(), a.raw(), MPFR_RNDD);
  mpfr_acos(r.hi.raw(), b.raw(), MPFR_RNDU);
  return r;
}

QuadValue quad_sub(const QuadValue& a, const QuadValue& b) {
  QuadValue r = a;
  r += -b;
  return r;
}

int quad_sign(const QuadValue& v) {
  if (v.is_zero()) return 0;
  for (Prec p = 128; p <= kPrecCap; p *= 2) {
    Interval iv = v.enclosure(p);
    if (mpfr_sgn(iv.lo.raw()) > 0) return 1;
    if (mpfr_sgn(iv.hi.raw()) < 0) return -1;
  }
  throw std::logic_error("quad_sign: lattice value not separated from zero");
}

bool closed_forms_equal(const ClosedForm& a, const ClosedForm& b) {
  if (a == b) return true;
  auto ea = a.exact();
  auto eb = b.exact();
  return ea && eb && *ea == *eb;
}

QuadValue& QuadValue::operator+=(const QuadValue& o) {
  one += o.one;
  sqrt2 += o.sqrt2;
  sqrt3 += o.sqrt3;
  sqrt5 += o.sqrt5;
  return *this;
}

QuadValue QuadValue::operator-() const {
  QuadValue r;
  r.one = -one;
  r.sqrt2 = -sqrt2;
  r.sqrt3 = -sqrt3;
  r.sqrt5 = -sqrt5;
  return r;
}

Interval QuadValue::enclosure(Prec prec) const {
  Interval acc = iv_exact(one, prec);
  const std::pair<const mpq_class*, long> roots[] = {{&sqrt2, 2}, {&sqrt3, 3}, {&sqrt5, 5}};
  for (auto [coeff, base] : roots) {
    if (*coeff == 0) continue;
    acc = iv_add(acc, iv_mul(iv_exact(*coeff, prec), iv_sqrt(iv_exact(base, prec))));
  }
  return acc;
}

std::optional<QuadValue> cos_pi_rational_exact(const mpz_class& p, const mpz_class& q) {
  RationalAngle a = RationalAngle::canonicalized(p, q);
  const mpz_class& num = a.numer();
  const mpz_class& den = a.denom();
  if (den > 6) return std::nullopt;
  long n = num.get_si(), d = den.get_si();
  QuadValue v;
  switch (d) {
    case 1:
      v.one = (n == 0) ? 1 : -1;
      return v;
    case 2:
      return v;  // cos(pi/2) = 0
    case 3:
      v.one = mpq_class(n == 1 ? 1 : -1, 2);
      return v;
    case 4:
      v.sqrt2 = mpq_class(n == 1 ? 1 : -1, 2);
      return v;
    case 5:
      // cos(pi/5) = (1+sqrt5)/4, cos(2pi/5) = (sqrt5-1)/4, reflections negate
      if (n == 1) v.one = mpq_class(1, 4), v.sqrt5 = mpq_class(1, 4);
      if (n == 2) v.one = mpq_class(-1, 4), v.sqrt5 = mpq_class(1, 4);
      if (n == 3) v.one = mpq_class(1, 4), v.sqrt5 = mpq_class(-1, 4);
      if (n == 4) v.one = mpq_class(-1, 4), v.sqrt5 = mpq_class(-1, 4);
      return v;
    case 6:
      v.sqrt3 = mpq_class(n == 1 ? 1 : -1, 2);
      return v;
  }
  return std::nullopt;
}

namespace {

std::optional<QuadValue> named_quad(ClosedForm::Kind k) {
  QuadValue v;
  switch (k) {
    case ClosedForm::Kind::Two:
      v.one = 2;
      return v;
    case ClosedForm::Kind::ThreeHalves:
      v.one = mpq_class(3, 2);
      return v;
    case ClosedForm::Kind::Sqrt2:
      v.sqrt2 = 1;
      return v;
    case ClosedForm::Kind::Sqrt5Over2:
      v.sqrt5 = mpq_class(1, 2);
      return v;
    case ClosedForm::Kind::EightOver3Sqrt3:
      v.sqrt3 = mpq_class(8, 9);  // 8/(3*sqrt3) = 8*sqrt3/9
      return v;
    default:
      return std::nullopt;
  }
}

}  // namespace

ClosedForm ClosedForm::cos_sum(std::vector<CosTerm> terms) {
  std::vector<CosTerm> norm;
  for (auto& t : terms) {
    RationalAngle a = t.angle;
    int sign = t.sign;
    if (a.numer() == 1 && a.denom() == 2) continue;  // cos(pi/2) = 0
    // fold -cos(pi*x) with x > 1/2 to +cos(pi*(1-x))
    if (2 * a.numer() > a.denom()) {
      a = RationalAngle::canonicalized(a.denom() - a.numer(), a.denom());
      sign = -sign;
    }
    norm.push_back({sign, a});
  }
  std::sort(norm.begin(), norm.end(), [](const CosTerm& x, const CosTerm& y) {
    if (x.angle != y.angle) return x.angle < y.angle;
    return x.sign > y.sign;
  });
  // cancel opposite-sign duplicates
  std::vector<CosTerm> out;
  for (auto& t : norm) {
    if (!out.empty() && out.back().angle == t.angle && out.back().sign == -t.sign) {
      out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  ClosedForm f(Kind::CosSum);
  f.terms_ = std::move(out);
  if (auto ex = f.exact()) {
    for (Kind k : {Kind::Two, Kind::ThreeHalves, Kind::Sqrt2, Kind::Sqrt5Over2,
                   Kind::EightOver3Sqrt3}) {
      if (*ex == *named_quad(k)) return ClosedForm(k);
    }
  }
  return f;
}

std::optional<QuadValue> ClosedForm::exact() const {
  if (auto v = named_quad(kind_)) return v;
  if (kind_ != Kind::CosSum) return std::nullopt;
  QuadValue acc;
  for (const auto& t : terms_) {
    auto v = cos_pi_rational_exact(t.angle.numer(), t.angle.denom());
    if (!v) return std::nullopt;
    acc += (t.sign > 0) ? *v : -*v;
  }
  return acc;
}

Interval ClosedForm::enclosure(Prec prec) const {
  if (auto ex = exact()) return ex->enclosure(prec);
  if (kind_ != Kind::CosSum) throw std::logic_error("ClosedForm::enclosure on empty form");
  Interval acc = iv_exact(0L, prec);
  for (const auto& t : terms_) {
    Interval c = cos_pi_rational_iv(t.angle.numer(), t.angle.denom(), prec);
    acc = (t.sign > 0) ? iv_add(acc, c) : iv_sub(acc, c);
  }
  return acc;
}

std::string ClosedForm::token() const {
  switch (kind_) {
    case Kind::None:
      return "";
    case Kind::Two:
      return "two";
    case Kind::ThreeHalves:
      return "three-halves";
    case Kind::Sqrt2:
      return "sqrt2";
    case Kind::Sqrt5Over2:
      return "sqrt5-over-2";
    case Kind::EightOver3Sqrt3:
      return "eight-over-3sqrt3";
    case Kind::CosSum: {
      if (terms_.empty()) return "0";
      std::string s;
      for (const auto& t : terms_) {
        if (!s.empty() || t.sign < 0) s += (t.sign > 0) ? "+" : "-";
        s += "cos(" + t.angle.str() + "*pi)";
      }
      return s;
    }
  }
  return "";
}

std::optional<ClosedForm> ClosedForm::parse_token(std::string_view text) {
  if (text == "two") return ClosedForm(Kind::Two);
  if (text == "three-halves") return ClosedForm(Kind::ThreeHalves);
  if (text == "sqrt2") return ClosedForm(Kind::Sqrt2);
  if (text == "sqrt5-over-2") return ClosedForm(Kind::Sqrt5Over2);
  if (text == "eight-over-3sqrt3") return ClosedForm(Kind::EightOver3Sqrt3);
  return std::nullopt;
}

CertScalar::CertScalar(Interval iv, ClosedForm form, Evaluator eval)
    : iv_(std::move(iv)), form_(std::move(form)), eval_(std::move(eval)) {}

CertScalar CertScalar::exact_zero(Prec prec) {
  return CertScalar(iv_exact(0L, prec), {}, [](Prec p) { return iv_exact(0L, p); });
}

CertScalar CertScalar::from_rational(const mpq_class& v, Prec prec) {
  return CertScalar(iv_exact(v, prec), {}, [v](Prec p) { return iv_exact(v, p); });
}

CertScalar CertScalar::from_closed_form(const ClosedForm& form, Prec prec) {
  return CertScalar(form.enclosure(prec), form, [form](Prec p) { return form.enclosure(p); });
}

Interval cos_pi_rational_iv(const mpz_class& p, const mpz_class& q, Prec prec) {
  RationalAngle a = RationalAngle::canonicalized(p, q);
  if (auto ex = cos_pi_rational_exact(a.numer(), a.denom())) return ex->enclosure(prec);
  Interval theta = iv_mul(iv_pi(prec + 8), iv_exact(mpq_class(a.numer(), a.denom()), prec + 8));
  Interval c = iv_cos(theta);
  Interval out(prec);
  mpfr_set(out.lo.raw(), c.lo.raw(), MPFR_RNDD);
  mpfr_set(out.hi.raw(), c.hi.raw(), MPFR_RNDU);
  return out;
}

Interval sin_pi_rational_iv(const mpz_class& p, const mpz_class& q, Prec prec) {
  // sin(pi*t) = cos(pi*(1/2 - t))
  mpq_class t(p, q);
  t.canonicalize();
  mpq_class shifted = mpq_class(1, 2) - t;
  return cos_pi_rational_iv(shifted.get_num(), shifted.get_den(), prec);
}

CertScalar cos_pi_rational(const mpz_class& p, const mpz_class& q, Prec precision_bits) {
  if (precision_bits < 32) throw std::invalid_argument("cos_pi_rational: precision_bits >= 32");
  RationalAngle a = RationalAngle::canonicalized(p, q);
  ClosedForm form = ClosedForm::cos_sum({{+1, a}});
  mpz_class pn = a.numer(), qn = a.denom();
  Evaluator eval = [pn, qn](Prec pr) { return cos_pi_rational_iv(pn, qn, pr); };
  return CertScalar(eval(precision_bits), form, eval);
}

CertScalar cos_pi_rational(long p, long q, Prec precision_bits) {
  return cos_pi_rational(mpz_class(p), mpz_class(q), precision_bits);
}

Cmp cmp_certified(const CertScalar& x, const CertScalar& y) {
  return iv_cmp(x.interval(), y.interval());
}

namespace {

Interval iv_intersect(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_max(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
  mpfr_min(r.hi.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
  if (mpfr_cmp(r.lo.raw(), r.hi.raw()) > 0)
    throw std::logic_error("iv_intersect: disjoint enclosures of one value");
  return r;
}

}  // namespace

CertScalar refine(const CertScalar& x, double target_width, Prec cap) {
  if (target_width <= 0) throw std::invalid_argument("refine: target_width must be positive");
  if (x.width() <= target_width) return x;
  if (!x.refinable())
    throw PrecisionExhausted("refine: no recompute handle and width above target");
  Interval iv = x.interval();
  Prec p = std::max<Prec>(x.precision_bits(), 64);
  while (iv.width() > target_width) {
    if (p >= cap)
      throw PrecisionExhausted("refine: width target unreachable at precision cap");
    p = std::min<Prec>(p * 2, cap);
    iv = iv_intersect(iv, x.evaluator()(p));
  }
  return CertScalar(std::move(iv), x.closed_form(), x.evaluator());
}

Cmp cmp_refining(const CertScalar& x, const CertScalar& y, Prec cap) {
  Cmp c = cmp_certified(x, y);
  if (c != Cmp::Unknown) return c;
  auto ex = x.exact();
  auto ey = y.exact();
  if (ex && ey && *ex == *ey)
    throw PrecisionExhausted("cmp_refining: operands are exactly equal");
  CertScalar a = x, b = y;
  Prec p = std::max<Prec>(std::max(a.precision_bits(), b.precision_bits()), 64);
  while (true) {
    if (p >= cap) throw PrecisionExhausted("cmp_refining: not separated at precision cap");
    p = std::min<Prec>(p * 2, cap);
    if (a.refinable()) a = CertScalar(iv_intersect(a.interval(), a.evaluator()(p)),
                                      a.closed_form(), a.evaluator());
    if (b.refinable()) b = CertScalar(iv_intersect(b.interval(), b.evaluator()(p)),
                                      b.closed_form(), b.evaluator());
    Cmp r = cmp_certified(a, b);
    if (r != Cmp::Unknown) return r;
    if (!a.refinable() && !b.refinable())
      throw PrecisionExhausted("cmp_refining: overlapping and not refinable");
  }
}

bool matches_closed_form(const CertScalar& x, const ClosedForm& c, double tol_width, Prec cap) {
  if (tol_width <= 0) throw std::invalid_argument("matches_closed_form: tol_width > 0");
  auto ex = x.exact();
  auto ec = c.exact();
  if (ex && ec) return *ex == *ec;
  CertScalar xs = refine(x, tol_width, cap);
  CertScalar cs = refine(CertScalar::from_closed_form(c, kDefaultPrec), tol_width, cap);
  const Interval& a = xs.interval();
  const Interval& b = cs.interval();
  return !(mpfr_cmp(a.hi.raw(), b.lo.raw()) < 0 || mpfr_cmp(b.hi.raw(), a.lo.raw()) < 0);
}

}  // namespace cosrig
