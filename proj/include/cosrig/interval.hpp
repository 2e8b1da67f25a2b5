#pragma once

#include <gmpxx.h>

#include <cstdarg>
#include <cstdio>

#include <mpfr.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cosrig/angle.hpp"
#include "cosrig/errors.hpp"

namespace cosrig {

using Prec = mpfr_prec_t;

inline constexpr Prec kDefaultPrec = 128;
inline constexpr Prec kPrecCap = 4096;
inline constexpr double kClosedFormWidth = 1e-30;

/// Per-call numeric policy.  Precision is never global state.
struct NumericConfig {
  Prec precision_bits = kDefaultPrec;
  Prec precision_cap = kPrecCap;
};

/// RAII wrapper around a single mpfr number.
class Real {
 public:
  explicit Real(Prec prec = kDefaultPrec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  Prec precision() const { return mpfr_get_prec(v_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  /// Decimal string with enough digits to round-trip the binary value.
  std::string str() const;

 private:
  mpfr_t v_;
};

/// Directed-rounding enclosure [lo, hi] of a real value.
struct Interval {
  Real lo, hi;

  explicit Interval(Prec prec = kDefaultPrec) : lo(prec), hi(prec) {}
  Prec precision() const { return std::max(lo.precision(), hi.precision()); }
  double width() const;  // upper bound on hi - lo
  double mid() const;
  bool contains(double x) const;
};

enum class Cmp { Less, Greater, Unknown };

Interval iv_exact(long v, Prec prec = kDefaultPrec);
Interval iv_exact(const mpq_class& v, Prec prec);
Interval iv_pi(Prec prec);
Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_mul(const Interval& a, const Interval& b);
Interval iv_div(const Interval& a, const Interval& b);
Interval iv_neg(const Interval& a);
Interval iv_abs(const Interval& a);
Interval iv_sqrt(const Interval& a);
Interval iv_cos(const Interval& x);
Interval iv_sin(const Interval& x);
Interval iv_acos(const Interval& x);
Interval iv_pow_ui(const Interval& a, unsigned long e);
Interval iv_hull(const Interval& a, const Interval& b);
Cmp iv_cmp(const Interval& a, const Interval& b);

/// Exact element of the lattice spanned by {1, sqrt2, sqrt3, sqrt5} over Q.
/// Sums of cos(pi*p/q) with q <= 6 live here, which is what makes the
/// equality claims among the named constants decidable instead of merely
/// certified to 1e-30.
struct QuadValue {
  mpq_class one, sqrt2, sqrt3, sqrt5;

  QuadValue() = default;
  explicit QuadValue(const mpq_class& rational) : one(rational) {}
  QuadValue& operator+=(const QuadValue& o);
  QuadValue operator-() const;
  friend bool operator==(const QuadValue&, const QuadValue&) = default;
  bool is_zero() const { return one == 0 && sqrt2 == 0 && sqrt3 == 0 && sqrt5 == 0; }
  Interval enclosure(Prec prec) const;
};

/// cos(pi*p/q) as an exact QuadValue when the reduced denominator is <= 6.
std::optional<QuadValue> cos_pi_rational_exact(const mpz_class& p, const mpz_class& q);

QuadValue quad_sub(const QuadValue& a, const QuadValue& b);

/// Sign of a lattice value (0 only for the zero element), decided by
/// enclosures at escalating precision.
int quad_sign(const QuadValue& v);

/// Recognized closed form attached to a certified scalar.
class ClosedForm {
 public:
  enum class Kind { None, Two, ThreeHalves, Sqrt2, Sqrt5Over2, EightOver3Sqrt3, CosSum };

  struct CosTerm {
    int sign;  // +1 or -1
    RationalAngle angle;
    friend bool operator==(const CosTerm&, const CosTerm&) = default;
  };

  ClosedForm() : kind_(Kind::None) {}
  explicit ClosedForm(Kind k) : kind_(k) {}

  /// Sum of signed cosines; collapses to a named constant when the exact
  /// value matches one.
  static ClosedForm cos_sum(std::vector<CosTerm> terms);

  Kind kind() const { return kind_; }
  bool present() const { return kind_ != Kind::None; }
  const std::vector<CosTerm>& terms() const { return terms_; }

  Interval enclosure(Prec prec) const;
  std::optional<QuadValue> exact() const;

  /// Token used in JSON output and threshold parsing, e.g. "three-halves".
  std::string token() const;
  static std::optional<ClosedForm> parse_token(std::string_view text);

  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;

 private:
  Kind kind_;
  std::vector<CosTerm> terms_;  // CosSum only
};

/// Exact equality of two closed forms: identical normalized shape, or equal
/// lattice values.
bool closed_forms_equal(const ClosedForm& a, const ClosedForm& b);

/// Handle that re-evaluates a quantity at a requested precision.
using Evaluator = std::function<Interval(Prec)>;

/// Certified scalar: a directed-rounding enclosure at some working precision,
/// optionally carrying a recognized closed form (whose exact value is
/// guaranteed to lie in the enclosure) and a recompute handle for refinement.
class CertScalar {
 public:
  CertScalar() : iv_(kDefaultPrec) {}
  explicit CertScalar(Interval iv, ClosedForm form = {}, Evaluator eval = {});

  static CertScalar exact_zero(Prec prec = kDefaultPrec);
  static CertScalar from_rational(const mpq_class& v, Prec prec = kDefaultPrec);
  static CertScalar from_closed_form(const ClosedForm& form, Prec prec = kDefaultPrec);

  const Interval& interval() const { return iv_; }
  Prec precision_bits() const { return iv_.precision(); }
  const ClosedForm& closed_form() const { return form_; }
  const Evaluator& evaluator() const { return eval_; }
  bool refinable() const { return static_cast<bool>(eval_); }
  double width() const { return iv_.width(); }
  double mid() const { return iv_.mid(); }

  /// Exact lattice value, when the closed form provides one.
  std::optional<QuadValue> exact() const { return form_.exact(); }

 private:
  Interval iv_;
  ClosedForm form_;
  Evaluator eval_;
};

/// Enclosure of cos(pi*p/q) of width <= 2^(4 - precision_bits).  Reduced
/// denominators up to 6 take the exact algebraic route.
CertScalar cos_pi_rational(const mpz_class& p, const mpz_class& q, Prec precision_bits);
CertScalar cos_pi_rational(long p, long q, Prec precision_bits = kDefaultPrec);

/// Interval-only variants used by inner loops.
Interval cos_pi_rational_iv(const mpz_class& p, const mpz_class& q, Prec prec);
Interval sin_pi_rational_iv(const mpz_class& p, const mpz_class& q, Prec prec);

/// Less iff x.hi < y.lo, Greater iff x.lo > y.hi, Unknown on overlap.
Cmp cmp_certified(const CertScalar& x, const CertScalar& y);

/// Re-evaluates through the recompute handle, doubling precision until the
/// width target is met.  Never widens.  Throws PrecisionExhausted at the cap.
CertScalar refine(const CertScalar& x, double target_width, Prec cap = kPrecCap);

/// Comparison with refinement; throws PrecisionExhausted if the intervals
/// still overlap at the cap (e.g. two enclosures of the same value).
Cmp cmp_refining(const CertScalar& x, const CertScalar& y, Prec cap = kPrecCap);

/// Numeric certification of equality with a closed form: both enclosures are
/// refined to width <= tol_width and must overlap.  This certifies interval
/// coincidence, not a symbolic identity, except when both sides carry exact
/// lattice values, in which case the answer is exact.
bool matches_closed_form(const CertScalar& x, const ClosedForm& c,
                         double tol_width = kClosedFormWidth, Prec cap = kPrecCap);

}  // namespace cosrig
