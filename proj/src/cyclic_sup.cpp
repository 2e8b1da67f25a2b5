#include "cosrig/cyclic_sup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <unordered_map>

#include "cosrig/errors.hpp"

namespace cosrig {

namespace {

struct Grid {
  unsigned long U = 1, A = 0, B = 0;
};

Grid to_grid(const RationalAngle& a, const RationalAngle& b) {
  mpz_class U = lcm(a.order(), b.order());
  if (U > kPeriodGuard)
    throw PeriodOverflow("cyclic scan period " + U.get_str() + " exceeds guard");
  Grid g;
  g.U = U.get_ui();
  mpz_class A = a.two_pi_numer() * (U / a.order());
  mpz_class B = b.two_pi_numer() * (U / b.order());
  g.A = A.get_ui();
  g.B = B.get_ui();
  return g;
}

unsigned long fold(unsigned long m, unsigned long U) { return std::min(m, U - m); }

// Candidates n with identical folded residues share the value
// |cos(2*pi*n*A/U) - cos(2*pi*n*B/U)| = 2*sin(pi*r1/U)*sin(pi*r2/U) exactly,
// so the scan groups them and keeps the smallest index.
struct Group {
  unsigned long r1, r2;  // folded residues of n(A+B) and n(A-B), r1 >= r2
  unsigned long min_n;
};

std::vector<Group> scan_groups(const Grid& g) {
  unsigned long s = (g.A + g.B) % g.U;
  unsigned long d = (g.A + g.U - g.B) % g.U;
  std::unordered_map<unsigned long long, size_t> seen;
  std::vector<Group> groups;
  unsigned long m1 = 0, m2 = 0;
  for (unsigned long n = 1; n <= g.U; ++n) {
    m1 += s;
    if (m1 >= g.U) m1 -= g.U;
    m2 += d;
    if (m2 >= g.U) m2 -= g.U;
    unsigned long r1 = fold(m1, g.U), r2 = fold(m2, g.U);
    if (r1 < r2) std::swap(r1, r2);
    auto key = static_cast<unsigned long long>(r1) * (g.U + 1) + r2;
    if (seen.emplace(key, groups.size()).second) groups.push_back({r1, r2, n});
  }
  return groups;
}

Interval group_eval(const Group& g, unsigned long U, Prec prec) {
  if (g.r2 == 0) return iv_exact(0L, prec);
  Interval s1 = sin_pi_rational_iv(g.r1, U, prec);
  Interval s2 = sin_pi_rational_iv(g.r2, U, prec);
  return iv_mul(iv_exact(2L, prec), iv_mul(s1, s2));
}

// Product-to-sum: 2 sin(pi r1/U) sin(pi r2/U) = cos(pi(r1-r2)/U) - cos(pi(r1+r2)/U).
ClosedForm group_form(const Group& g, unsigned long U) {
  RationalAngle t1 = RationalAngle::canonicalized(mpz_class(g.r1 - g.r2), mpz_class(U));
  RationalAngle t2 = RationalAngle::canonicalized(mpz_class(g.r1 + g.r2), mpz_class(U));
  return ClosedForm::cos_sum({{+1, t1}, {-1, t2}});
}

struct MaxOutcome {
  CertScalar value;
  unsigned long witness_n;
};

MaxOutcome certified_max(const std::vector<Group>& groups, unsigned long U,
                         const NumericConfig& cfg) {
  Prec prec = cfg.precision_bits;
  std::vector<size_t> alive(groups.size());
  for (size_t i = 0; i < groups.size(); ++i) alive[i] = i;
  std::vector<Interval> ivs;
  ivs.reserve(groups.size());
  for (const auto& g : groups) ivs.push_back(group_eval(g, U, prec));

  while (true) {
    // prune groups certified below the best lower bound
    size_t arg_lo = alive.front();
    for (size_t i : alive)
      if (mpfr_cmp(ivs[i].lo.raw(), ivs[arg_lo].lo.raw()) > 0) arg_lo = i;
    std::vector<size_t> next;
    for (size_t i : alive)
      if (mpfr_cmp(ivs[i].hi.raw(), ivs[arg_lo].lo.raw()) >= 0) next.push_back(i);
    alive.swap(next);

    bool resolved = alive.size() == 1;
    if (!resolved) {
      // surviving groups may be exact ties; merge through their closed forms
      ClosedForm f0 = group_form(groups[alive[0]], U);
      resolved = true;
      for (size_t k = 1; k < alive.size() && resolved; ++k)
        resolved = closed_forms_equal(f0, group_form(groups[alive[k]], U));
    }
    if (resolved) {
      const Group& win = groups[alive.front()];  // alive keeps ascending min_n order
      unsigned long r1 = win.r1, r2 = win.r2;
      Evaluator eval = [r1, r2, U](Prec p) { return group_eval(Group{r1, r2, 0}, U, p); };
      return {CertScalar(ivs[alive.front()], group_form(win, U), eval), win.min_n};
    }
    if (prec >= cfg.precision_cap)
      throw PrecisionExhausted("cyclic sup: distinct candidates tied beyond precision cap");
    prec = std::min<Prec>(prec * 2, cfg.precision_cap);
    for (size_t i : alive) ivs[i] = group_eval(groups[i], U, prec);
  }
}

}  // namespace

Threshold Threshold::from_rational(const mpq_class& v) {
  Threshold t;
  t.rational_ = v;
  return t;
}

Threshold Threshold::from_closed_form(const ClosedForm& f) {
  if (!f.present()) throw std::invalid_argument("Threshold: empty closed form");
  Threshold t;
  t.form_ = f;
  return t;
}

std::optional<Threshold> Threshold::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto f = ClosedForm::parse_token(text)) return from_closed_form(*f);
  // decimal: [-]digits[.digits]
  std::string s(text);
  bool neg = s[0] == '-';
  if (neg) s.erase(0, 1);
  auto dot = s.find('.');
  std::string whole = (dot == std::string::npos) ? s : s.substr(0, dot);
  std::string frac = (dot == std::string::npos) ? "" : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  for (char c : whole + frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  mpq_class v(whole.empty() ? mpz_class(0) : mpz_class(whole));
  if (!frac.empty()) {
    mpz_class den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    v += mpq_class(mpz_class(frac), den);
  }
  v.canonicalize();
  if (neg) v = -v;
  return from_rational(v);
}

Interval Threshold::enclosure(Prec prec) const {
  if (form_.present()) return form_.enclosure(prec);
  return iv_exact(rational_, prec);
}

std::optional<QuadValue> Threshold::exact() const {
  if (form_.present()) return form_.exact();
  return QuadValue(rational_);
}

CertScalar Threshold::scalar(Prec prec) const {
  if (form_.present()) return CertScalar::from_closed_form(form_, prec);
  return CertScalar::from_rational(rational_, prec);
}

std::string Threshold::str() const {
  if (form_.present()) return form_.token();
  return rational_.get_str();
}

CyclicSupResult sup_distance(const RationalAngle& a, const RationalAngle& b,
                             const NumericConfig& cfg) {
  if (a == b) {
    mpz_class U = a.order();
    return {CertScalar::exact_zero(cfg.precision_bits), 1, U.get_ui()};
  }
  Grid g = to_grid(a, b);
  auto groups = scan_groups(g);
  auto mx = certified_max(groups, g.U, cfg);
  return {std::move(mx.value), mx.witness_n, g.U};
}

CyclicSupResult sup_distance_to_triple(const RationalAngle& a, const NumericConfig& cfg) {
  RationalAngle b = RationalAngle::canonicalized(3 * a.numer(), a.denom());
  return sup_distance(a, b, cfg);
}

Rel compare_sup_to(const RationalAngle& a, const RationalAngle& b, const Threshold& m,
                   const NumericConfig& cfg) {
  if (a == b) {
    // sup is exactly zero
    if (auto te = m.exact()) {
      int s = te->is_zero() ? 0 : quad_sign(*te);
      return s > 0 ? Rel::Below : (s == 0 ? Rel::Equal : Rel::Above);
    }
    Interval t = m.enclosure(256);
    if (mpfr_sgn(t.lo.raw()) > 0) return Rel::Below;
    if (mpfr_sgn(t.hi.raw()) < 0) return Rel::Above;
    return Rel::Unknown;
  }

  Grid g = to_grid(a, b);
  Prec prec = cfg.precision_bits;
  Interval thr = m.enclosure(prec);

  // single pass with an early exit once some candidate certifies exceedance
  unsigned long s = (g.A + g.B) % g.U;
  unsigned long d = (g.A + g.U - g.B) % g.U;
  std::unordered_map<unsigned long long, size_t> seen;
  std::vector<Group> groups;
  unsigned long m1 = 0, m2 = 0;
  for (unsigned long n = 1; n <= g.U; ++n) {
    m1 += s;
    if (m1 >= g.U) m1 -= g.U;
    m2 += d;
    if (m2 >= g.U) m2 -= g.U;
    unsigned long r1 = fold(m1, g.U), r2 = fold(m2, g.U);
    if (r1 < r2) std::swap(r1, r2);
    auto key = static_cast<unsigned long long>(r1) * (g.U + 1) + r2;
    if (!seen.emplace(key, groups.size()).second) continue;
    groups.push_back({r1, r2, n});
    Interval v = group_eval(groups.back(), g.U, prec);
    if (mpfr_cmp(v.lo.raw(), thr.hi.raw()) > 0) return Rel::Above;
  }

  auto mx = certified_max(groups, g.U, cfg);
  CertScalar val = std::move(mx.value);

  while (true) {
    Cmp c = iv_cmp(val.interval(), thr);
    if (c == Cmp::Less) return Rel::Below;
    if (c == Cmp::Greater) return Rel::Above;
    auto ev = val.exact();
    auto et = m.exact();
    if (ev && et) {
      int sg = quad_sign(quad_sub(*ev, *et));
      return sg < 0 ? Rel::Below : (sg == 0 ? Rel::Equal : Rel::Above);
    }
    if (m.is_closed_form() && closed_forms_equal(val.closed_form(), m.closed_form()))
      return Rel::Equal;
    if (prec >= cfg.precision_cap) return Rel::Unknown;
    prec = std::min<Prec>(prec * 2, cfg.precision_cap);
    val = CertScalar(val.evaluator()(prec), val.closed_form(), val.evaluator());
    thr = m.enclosure(prec);
  }
}

namespace {

unsigned long folded_residue(const mpz_class& x, const mpz_class& mod) {
  mpz_class r = x % mod;
  if (r < 0) r += mod;
  mpz_class alt = mod - r;
  if (alt < r) r = alt;
  return r.get_ui();
}

}  // namespace

PairReduction reduce_pair(const RationalAngle& a, const RationalAngle& b) {
  if (a == b) throw std::invalid_argument("reduce_pair: angles must differ canonically");
  PairReduction out;
  const mpz_class u = a.order();
  const mpz_class v = b.order();
  out.u = u;

  auto mod_inverse = [](const mpz_class& x, const mpz_class& mod) {
    mpz_class inv;
    if (mod == 1) return mpz_class(0);
    if (mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw std::logic_error("reduce_pair: non-invertible residue");
    return inv;
  };

  if (u == v) {
    out.kind = PairCase::SameOrder;
    mpz_class gamma = mod_inverse(a.two_pi_numer(), u);
    mpz_class w = folded_residue(gamma * b.two_pi_numer(), u);
    out.w = w;
    out.canonical_a = RationalAngle::canonicalized(2, u);
    out.canonical_b = RationalAngle::canonicalized(2 * w, u);
    return out;
  }
  if (v == 3 * u) {
    out.kind = PairCase::TripleOrder;
    mpz_class gamma = mod_inverse(b.two_pi_numer(), v);
    mpz_class w = u == 1 ? 1 : folded_residue(gamma * a.two_pi_numer(), u);
    if (w == 0) w = 1;
    out.w = w;
    out.canonical_a = RationalAngle::canonicalized(2, 3 * u);
    out.canonical_b = RationalAngle::canonicalized(2 * w, u);
    return out;
  }
  if (u == 3 * v) {
    out.kind = PairCase::ThirdOrder;
    mpz_class gamma = mod_inverse(a.two_pi_numer(), u);
    mpz_class w = v == 1 ? 1 : folded_residue(gamma * b.two_pi_numer(), v);
    if (w == 0) w = 1;
    out.w = w;
    out.canonical_a = RationalAngle::canonicalized(2, u);
    out.canonical_b = RationalAngle::canonicalized(6 * w, u);
    return out;
  }
  out.kind = PairCase::Far;
  return out;
}

namespace {

void check_threshold_range(const Threshold& m, bool require_at_least_one) {
  Interval t = m.enclosure(256);
  if (mpfr_cmp_si(t.hi.raw(), 2) >= 0) {
    if (auto te = m.exact()) {
      if (quad_sign(quad_sub(*te, QuadValue(mpq_class(2)))) >= 0)
        throw std::invalid_argument("threshold must be < 2");
    } else {
      throw std::invalid_argument("threshold must be certified < 2");
    }
  }
  if (require_at_least_one && mpfr_cmp_si(t.lo.raw(), 1) < 0) {
    bool ok = false;
    if (auto te = m.exact()) ok = quad_sign(quad_sub(*te, QuadValue(mpq_class(1)))) >= 0;
    if (!ok) throw std::invalid_argument("threshold must be >= 1");
  }
}

bool threshold_below_one(const Threshold& m) {
  if (auto te = m.exact()) {
    QuadValue diff = quad_sub(*te, QuadValue(mpq_class(1)));
    return !diff.is_zero() && quad_sign(diff) < 0;
  }
  Interval t = m.enclosure(256);
  return mpfr_cmp_si(t.hi.raw(), 1) < 0;
}

std::vector<RationalAngle> gamma_zero_members(const Threshold& m, const NumericConfig& cfg,
                                              bool& certified) {
  std::vector<RationalAngle> members;
  RationalAngle zero;
  Interval t = m.enclosure(cfg.precision_bits);
  Interval bound = iv_div(iv_pi(cfg.precision_bits),
                          iv_acos(iv_sub(t, iv_exact(1L, cfg.precision_bits))));
  long qmax = static_cast<long>(bound.hi.to_double(MPFR_RNDU)) + 1;
  long vmax = 2 * qmax + 2;  // safety margin over the odd-order bound
  for (long v = 1; v <= vmax; ++v) {
    for (const auto& b : angles_of_order(v)) {
      Rel rel = compare_sup_to(zero, b, m, cfg);
      if (rel == Rel::Below || rel == Rel::Equal) {
        members.push_back(b);
      } else if (rel == Rel::Unknown) {
        if (m.is_closed_form())
          throw PrecisionExhausted("gamma_zero: boundary undecided for closed-form threshold");
        members.push_back(b);
        certified = false;
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

AngleSet gamma_zero(const Threshold& m, const NumericConfig& cfg) {
  check_threshold_range(m, /*require_at_least_one=*/true);
  AngleSet out{m, RationalAngle(), {}, true};
  out.members = gamma_zero_members(m, cfg, out.certified);
  return out;
}

AngleSet gamma(const RationalAngle& a, const Threshold& m, const NumericConfig& cfg) {
  check_threshold_range(m, /*require_at_least_one=*/false);
  AngleSet out{m, a, {}, true};

  std::vector<RationalAngle> seeds;
  if (threshold_below_one(m)) {
    seeds.emplace_back();  // Gamma(0, m) = {0} for m < 1
  } else {
    seeds = gamma_zero_members(m, cfg, out.certified);
  }

  mpz_class u = a.order();
  if (u > kPeriodGuard) throw PeriodOverflow("gamma: order exceeds guard");
  long un = u.get_si();

  std::set<RationalAngle> candidates;
  for (const auto& c : seeds) {
    for (long k = 0; k < un; ++k) {
      for (int sgn : {+1, -1}) {
        mpz_class num = sgn * c.numer() + 2 * k * c.denom();
        candidates.insert(RationalAngle::canonicalized(num, c.denom() * u));
      }
    }
  }

  for (const auto& b : candidates) {
    Rel rel = compare_sup_to(a, b, m, cfg);
    if (rel == Rel::Below || rel == Rel::Equal) {
      out.members.push_back(b);
    } else if (rel == Rel::Unknown) {
      if (m.is_closed_form())
        throw PrecisionExhausted("gamma: boundary undecided for closed-form threshold");
      out.members.push_back(b);
      out.certified = false;
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

AngleSet gamma(const SymbolicAngle& a, const Threshold& m, const NumericConfig& cfg) {
  if (std::holds_alternative<IrrationalMultipleOfPi>(a))
    throw std::invalid_argument(
        "gamma: enumeration is undefined for an irrational multiple of pi; "
        "only gamma_card_bound applies");
  return gamma(std::get<RationalAngle>(a), m, cfg);
}

CertScalar gamma_card_bound(const Threshold& m, double cap, const NumericConfig& cfg) {
  check_threshold_range(m, /*require_at_least_one=*/true);
  Prec prec = cfg.precision_bits;
  Interval t = m.enclosure(prec);
  Interval acos_arg = iv_sub(t, iv_exact(1L, prec));
  Interval ac = iv_acos(acos_arg);
  Interval bound(prec);
  if (mpfr_sgn(ac.lo.raw()) <= 0) {
    mpfr_set_d(bound.lo.raw(), cap, MPFR_RNDD);
    mpfr_set_inf(bound.hi.raw(), 1);
    return CertScalar(std::move(bound));
  }
  bound = iv_mul(iv_exact(2L, prec), iv_pow_ui(iv_div(iv_pi(prec), ac), 7));
  if (!(bound.hi.to_double(MPFR_RNDU) < cap)) mpfr_set_inf(bound.hi.raw(), 1);
  return CertScalar(std::move(bound));
}

}  // namespace cosrig
