#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosrig/angle.hpp"
#include "cosrig/interval.hpp"

namespace cosrig {

/// Largest admissible common period for a cyclic scan.
inline constexpr unsigned long kPeriodGuard = 1000000;

/// Certified supremum of n |-> |cos(na) - cos(nb)| together with the smallest
/// attaining index and the (finite) enumeration period.
struct CyclicSupResult {
  CertScalar value;
  unsigned long witness_n = 1;
  unsigned long period = 1;
};

/// Comparison threshold: either an exact rational (decimal input) or a
/// recognized closed form, so boundary cases like "equals 3/2" stay decidable.
class Threshold {
 public:
  static Threshold from_rational(const mpq_class& v);
  static Threshold from_closed_form(const ClosedForm& f);
  /// Accepts a decimal like "1.5" or a closed-form token like "three-halves".
  static std::optional<Threshold> parse(std::string_view text);

  bool is_closed_form() const { return form_.present(); }
  const ClosedForm& closed_form() const { return form_; }
  const mpq_class& rational() const { return rational_; }

  Interval enclosure(Prec prec) const;
  std::optional<QuadValue> exact() const;
  CertScalar scalar(Prec prec = kDefaultPrec) const;
  std::string str() const;

 private:
  Threshold() = default;
  mpq_class rational_;
  ClosedForm form_;  // present() decides which member is live
};

/// Certified relation of a supremum to a threshold.
enum class Rel { Below, Equal, Above, Unknown };

CyclicSupResult sup_distance(const RationalAngle& a, const RationalAngle& b,
                             const NumericConfig& cfg = {});

/// sup_n |cos(na) - cos(3na)|, i.e. the distance to the tripled angle.
CyclicSupResult sup_distance_to_triple(const RationalAngle& a, const NumericConfig& cfg = {});

/// Certified relation of sup_distance(a, b) to m.  Scans with an early exit
/// for the Above case; equality at the boundary is decided through exact
/// closed forms where possible.  Returns Unknown only when undecidable at the
/// precision cap.
Rel compare_sup_to(const RationalAngle& a, const RationalAngle& b, const Threshold& m,
                   const NumericConfig& cfg = {});

enum class PairCase { SameOrder, TripleOrder, ThirdOrder, Far };

/// Order-based classification of a pair with the canonical (u, w) reduction.
/// For every non-Far case, sup_distance(a, b) equals sup_distance of the
/// canonical pair exactly.
struct PairReduction {
  PairCase kind = PairCase::Far;
  mpz_class u;  // order of a
  mpz_class w;  // canonical multiplier; unset for Far
  RationalAngle canonical_a, canonical_b;
};

PairReduction reduce_pair(const RationalAngle& a, const RationalAngle& b);

/// A set Gamma(a, m) of angles within certified sup-distance m of a.
struct AngleSet {
  Threshold threshold;
  RationalAngle base;
  std::vector<RationalAngle> members;  // sorted ascending
  bool certified = true;               // false if a decimal boundary was unresolved
};

/// Gamma(0, m) for 1 <= m < 2, by enumerating candidate orders up to the
/// arccos search bound and filtering with certified sup comparisons.
AngleSet gamma_zero(const Threshold& m, const NumericConfig& cfg = {});

/// Gamma(a, m) for m < 2 via lifts (+-c + 2*k*pi)/u of c in Gamma(0, m).
AngleSet gamma(const RationalAngle& a, const Threshold& m, const NumericConfig& cfg = {});

/// Enumeration needs a rational base: the irrational marker is rejected with
/// a typed error, and only gamma_card_bound applies to it.
AngleSet gamma(const SymbolicAngle& a, const Threshold& m, const NumericConfig& cfg = {});

/// The cardinality bound 2*(pi/arccos(m-1))^7 for the irrational-base case.
/// Returns an enclosure whose hi endpoint is +inf once the bound exceeds cap.
CertScalar gamma_card_bound(const Threshold& m, double cap = 1e15,
                            const NumericConfig& cfg = {});

}  // namespace cosrig
