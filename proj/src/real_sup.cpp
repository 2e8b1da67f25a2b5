#include "cosrig/real_sup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "cosrig/errors.hpp"

namespace cosrig {

namespace {

constexpr int kMaxDepth = 39;          // box width floor pi / 2^39
constexpr long kMaxIterations = 400000;

struct Box {
  unsigned long k = 0;
  int depth = 0;
  double ub = 2.0;      // certified upper bound on |f| over the box
  double center = 0.0;  // midpoint as a double, for witness reporting

  // left endpoint as a dyadic fraction k / 2^depth, scaled to a common grid
  unsigned long long left_key() const {
    return static_cast<unsigned long long>(k) << (kMaxDepth + 1 - depth);
  }
};

struct BoxOrder {
  bool operator()(const Box& a, const Box& b) const {
    if (a.ub != b.ub) return a.ub < b.ub;  // max-heap on upper bound
    return a.left_key() > b.left_key();    // then leftmost first
  }
};

struct Search {
  long p, q;
  Prec prec;
  Interval pi;
  long delta;

  explicit Search(long p_, long q_, Prec prec_)
      : p(p_), q(q_), prec(prec_), pi(iv_pi(prec_)), delta(p_ * p_ + q_ * q_) {}

  // |f| over the dyadic box [k, k+1] / 2^depth scaled by pi
  Interval box_range(const Box& b) const {
    mpz_class den = mpz_class(1) << b.depth;
    Interval t(prec);
    mpfr_set_q(t.lo.raw(), mpq_class(b.k, den).get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(t.hi.raw(), mpq_class(b.k + 1, den).get_mpq_t(), MPFR_RNDU);
    Interval x = iv_mul(pi, t);
    Interval fp = iv_cos(iv_mul(x, iv_exact(p, prec)));
    Interval fq = iv_cos(iv_mul(x, iv_exact(q, prec)));
    return iv_abs(iv_sub(fp, fq));
  }

  // value and first derivative at the center, an exact rational multiple of pi
  void center_bounds(const Box& b, Interval& fc_abs, Interval& dfc_abs) const {
    mpz_class num = 2 * mpz_class(b.k) + 1;
    mpz_class den = mpz_class(1) << (b.depth + 1);
    Interval cp = cos_pi_rational_iv(p * num, den, prec);
    Interval cq = cos_pi_rational_iv(q * num, den, prec);
    fc_abs = iv_abs(iv_sub(cp, cq));
    Interval sp = sin_pi_rational_iv(p * num, den, prec);
    Interval sq = sin_pi_rational_iv(q * num, den, prec);
    dfc_abs = iv_abs(iv_sub(iv_mul(sq, iv_exact(q, prec)), iv_mul(sp, iv_exact(p, prec))));
  }

  // evaluate a box: upper bound plus the incumbent candidate at its center
  Box evaluate(unsigned long k, int depth, double& cand_lo) const {
    Box b;
    b.k = k;
    b.depth = depth;
    Interval fc, dfc;
    center_bounds(b, fc, dfc);
    cand_lo = fc.lo.to_double(MPFR_RNDD);

    Interval h(prec);  // half-width pi / 2^(depth+1)
    mpfr_div_2ui(h.lo.raw(), pi.lo.raw(), depth + 1, MPFR_RNDD);
    mpfr_div_2ui(h.hi.raw(), pi.hi.raw(), depth + 1, MPFR_RNDU);
    Interval quad = iv_mul(iv_exact(mpq_class(delta, 2), prec), iv_mul(h, h));
    Interval taylor = iv_add(fc, iv_add(iv_mul(dfc, h), quad));

    double ub_taylor = taylor.hi.to_double(MPFR_RNDU);
    double ub_range = box_range(b).hi.to_double(MPFR_RNDU);
    b.ub = std::min({ub_taylor, ub_range, 2.0});
    b.center = (2.0 * static_cast<double>(k) + 1.0) / std::ldexp(1.0, depth + 1) * M_PI;
    return b;
  }
};

struct NormalizedPair {
  long p, q;
};

NormalizedPair normalize(long p, long q) {
  if (p < 1 || q < 1) throw std::invalid_argument("trig_diff_sup: p, q must be positive");
  long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p > q) std::swap(p, q);
  return {p, q};
}

// Shared search loop.  If exceed_target is set, stops with Above as soon as
// the incumbent clears it; otherwise runs to the width target.
struct SupOutcome {
  double lo = 0.0, hi = 0.0;
  double witness = 0.0;
  bool exceeded = false;
};

SupOutcome run_search(long p, long q, double target_width, const double* exceed_target,
                      const NumericConfig& cfg) {
  Search s(p, q, std::max<Prec>(cfg.precision_bits, 128));
  SupOutcome out;

  // x = pi attains |(-1)^p - (-1)^q| exactly; with one of p, q even and the
  // pair coprime this pins the supremum at 2
  out.lo = (p % 2 != q % 2) ? 2.0 : 0.0;
  out.witness = M_PI;

  std::priority_queue<Box, std::vector<Box>, BoxOrder> queue;
  auto push_box = [&](unsigned long k, int depth) {
    double cand = 0.0;
    Box b = s.evaluate(k, depth, cand);
    if (cand > out.lo) {
      out.lo = cand;
      out.witness = b.center;
    }
    if (b.ub > out.lo + target_width * 0.25) queue.push(b);
  };
  for (unsigned long k = 0; k < 8; ++k) push_box(k, 3);

  for (long iter = 0; iter < kMaxIterations; ++iter) {
    if (exceed_target && out.lo > *exceed_target) {
      out.exceeded = true;
      return out;
    }
    if (queue.empty()) {
      out.hi = out.lo + target_width * 0.25;  // every box fell below lo + target/4
      return out;
    }
    Box top = queue.top();
    if (top.ub <= out.lo + target_width) {
      // regions discarded at push time are bounded by lo + target/4 as well
      out.hi = std::max(top.ub, out.lo + target_width * 0.25);
      return out;
    }
    queue.pop();
    if (top.depth >= kMaxDepth)
      throw PrecisionExhausted("trig_diff_sup: width target below box resolution");
    push_box(2 * top.k, top.depth + 1);
    push_box(2 * top.k + 1, top.depth + 1);
  }
  throw PrecisionExhausted("trig_diff_sup: iteration budget exhausted");
}

}  // namespace

RealSupResult trig_diff_sup(long p, long q, double target_width, const NumericConfig& cfg) {
  if (target_width <= 0) throw std::invalid_argument("trig_diff_sup: target_width > 0");
  auto [pn, qn] = normalize(p, q);
  if (pn == qn) return {CertScalar::exact_zero(cfg.precision_bits), 0.0};

  SupOutcome out = run_search(pn, qn, target_width, nullptr, cfg);
  Interval iv(cfg.precision_bits);
  mpfr_set_d(iv.lo.raw(), out.lo, MPFR_RNDD);
  mpfr_set_d(iv.hi.raw(), out.hi, MPFR_RNDU);

  ClosedForm form;
  if (out.lo >= 2.0) {
    form = ClosedForm(ClosedForm::Kind::Two);
    mpfr_set_si(iv.lo.raw(), 2, MPFR_RNDD);
    mpfr_set_si(iv.hi.raw(), 2, MPFR_RNDU);
  } else if (qn == 3 * pn) {
    // the triple-frequency family attains 8/(3*sqrt3); tag when the tight
    // enclosure of that constant sits inside ours
    Interval c = ClosedForm(ClosedForm::Kind::EightOver3Sqrt3).enclosure(cfg.precision_bits);
    if (mpfr_cmp(iv.lo.raw(), c.lo.raw()) <= 0 && mpfr_cmp(c.hi.raw(), iv.hi.raw()) <= 0)
      form = ClosedForm(ClosedForm::Kind::EightOver3Sqrt3);
  }
  return {CertScalar(std::move(iv), form), out.witness};
}

bool trig_diff_sup_exceeds(long p, long q, const Threshold& m, const NumericConfig& cfg) {
  auto [pn, qn] = normalize(p, q);
  Interval t = m.enclosure(cfg.precision_bits);
  double target = t.hi.to_double(MPFR_RNDU);
  if (pn == qn) return 0.0 > target;
  if (target < 0) return true;
  SupOutcome out = run_search(pn, qn, 1e-9, &target, cfg);
  return out.exceeded;
}

CertScalar exceedance_interval(long p, long q, const Threshold& m, const NumericConfig& cfg) {
  auto [pn, qn] = normalize(p, q);
  Prec prec = std::max<Prec>(cfg.precision_bits, 128);
  Interval thr = m.enclosure(prec);
  if (pn == qn) throw ThresholdAboveSup("exceedance_interval: supremum is zero");

  RealSupResult sup = trig_diff_sup(pn, qn, 1e-9, cfg);
  Interval lam(prec);
  mpfr_set(lam.lo.raw(), sup.value.interval().lo.raw(), MPFR_RNDD);
  mpfr_set(lam.hi.raw(), sup.value.interval().lo.raw(), MPFR_RNDU);  // point: certified lower bound
  if (mpfr_cmp(thr.hi.raw(), lam.lo.raw()) >= 0)
    throw ThresholdAboveSup("exceedance_interval: threshold not strictly below supremum");

  // |f(x)| >= lambda - delta/2 (x - alpha)^2 > m on an interval of length
  // 2*sqrt(2*(lambda - m)/delta) around the maximizer
  long delta = pn * pn + qn * qn;
  Interval gap = iv_sub(lam, thr);
  Interval len = iv_mul(iv_exact(2L, prec),
                        iv_sqrt(iv_div(iv_mul(iv_exact(2L, prec), gap), iv_exact(delta, prec))));
  mpfr_nextbelow(len.lo.raw());  // keep the certified length strictly inside
  return CertScalar(std::move(len));
}

long order_threshold(long p, long q, const Threshold& m, const NumericConfig& cfg) {
  CertScalar len = exceedance_interval(p, q, m, cfg);
  Prec prec = std::max<Prec>(cfg.precision_bits, 128);
  Interval two_pi = iv_add(iv_pi(prec), iv_pi(prec));
  Interval len_pt(prec);
  mpfr_set(len_pt.lo.raw(), len.interval().lo.raw(), MPFR_RNDD);
  mpfr_set(len_pt.hi.raw(), len.interval().lo.raw(), MPFR_RNDU);
  Interval ratio = iv_div(two_pi, len_pt);
  long u = static_cast<long>(ratio.hi.to_double(MPFR_RNDU)) + 1;
  // certify 2*pi / u < length
  Real lhs(prec);
  for (;; ++u) {
    mpfr_mul_si(lhs.raw(), len.interval().lo.raw(), u, MPFR_RNDD);
    if (mpfr_cmp(two_pi.hi.raw(), lhs.raw()) < 0) break;
    if (u > 1000000) throw PrecisionExhausted("order_threshold: no certified order found");
  }
  return u;
}

namespace {

TaylorRow make_row(long s, long p, long q, long reference_u, const NumericConfig& cfg) {
  Prec prec = std::max<Prec>(cfg.precision_bits, 128);
  TaylorRow row;
  row.s = s;
  row.p = p;
  row.q = q;
  row.delta = p * p + q * q;
  RealSupResult sup = trig_diff_sup(p, q, 1e-9, cfg);
  row.theta = sup.value;

  Interval theta_lo(prec);
  mpfr_set(theta_lo.lo.raw(), sup.value.interval().lo.raw(), MPFR_RNDD);
  mpfr_set(theta_lo.hi.raw(), sup.value.interval().lo.raw(), MPFR_RNDU);
  Interval margin = iv_sub(iv_mul(iv_exact(2L, prec), theta_lo), iv_exact(3L, prec));
  if (mpfr_sgn(margin.lo.raw()) <= 0)
    throw PrecisionExhausted("taylor_tables: supremum margin over 3/2 not certified");
  Interval ell = iv_sqrt(iv_div(margin, iv_exact(row.delta, prec)));
  // strict ell < sqrt((2 theta - 3)/delta), with a 2^-100 relative margin so
  // the inequality survives outward rounding in later checks
  Real shrink(prec);
  mpfr_set_ui_2exp(shrink.raw(), 1, -100, MPFR_RNDN);
  mpfr_ui_sub(shrink.raw(), 1, shrink.raw(), MPFR_RNDD);
  Interval ell_pt(prec);
  mpfr_mul(ell_pt.lo.raw(), ell.lo.raw(), shrink.raw(), MPFR_RNDD);
  mpfr_set(ell_pt.hi.raw(), ell_pt.lo.raw(), MPFR_RNDU);
  row.ell = CertScalar(ell_pt);

  // smallest integer u with pi / u < ell, certified
  Interval ratio = iv_div(iv_pi(prec), ell_pt);
  long u = static_cast<long>(ratio.hi.to_double(MPFR_RNDU)) + 1;
  Real lhs(prec);
  Interval pi = iv_pi(prec);
  for (;; ++u) {
    mpfr_mul_si(lhs.raw(), ell_pt.lo.raw(), u, MPFR_RNDD);
    if (mpfr_cmp(pi.hi.raw(), lhs.raw()) < 0) break;
  }
  row.threshold_u = u;
  row.reference_u = reference_u;
  if (row.threshold_u > reference_u)
    throw std::logic_error("taylor_tables: computed threshold above reference");
  return row;
}

}  // namespace

std::pair<std::vector<TaylorRow>, std::vector<TaylorRow>> taylor_tables(const NumericConfig& cfg) {
  const std::pair<long, long> f_rows[] = {{2, 8}, {4, 13}, {5, 21}, {6, 20}};
  const std::pair<long, long> g_rows[] = {{2, 12},  {4, 16},  {5, 22},  {7, 27},  {8, 27},
                                          {10, 33}, {11, 40}, {13, 44}, {14, 45}, {16, 53},
                                          {17, 56}, {19, 65}, {20, 64}};
  std::vector<TaylorRow> f, g;
  for (auto [s, ref] : f_rows) f.push_back(make_row(s, 1, s, ref, cfg));
  for (auto [s, ref] : g_rows) g.push_back(make_row(s, 3, s, ref, cfg));
  return {std::move(f), std::move(g)};
}

}  // namespace cosrig
