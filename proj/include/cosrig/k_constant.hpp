#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cosrig/angle.hpp"
#include "cosrig/cyclic_sup.hpp"
#include "cosrig/interval.hpp"

namespace cosrig {

/// Delta(u): integers s with 1 <= s <= u/2 and gcd(u, s) = 1.  Delta(1) is
/// {1} by convention, which makes sigma(1) = 3/2 and keeps the order-1 case
/// inside the general formula.
std::vector<long> delta_set(long u);

/// Delta(u) \ {1}.  Empty exactly for u in {1, 2, 3, 4, 6}.
std::vector<long> delta1_set(long u);

/// sigma(u): min over w in Delta(u) of sup_n |cos(2n pi/(3u)) - cos(2nw pi/u)|.
CertScalar sigma(long u, const NumericConfig& cfg = {});

/// theta(u): min over w in Delta1(u) of sup_n |cos(2n pi/u) - cos(2nw pi/u)|,
/// with the convention theta(u) = 2 when Delta1(u) is empty.
CertScalar theta(long u, const NumericConfig& cfg = {});

/// The rigidity constant k(a).  For irrational multiples of pi it is exactly
/// 8/(3*sqrt3); for rational ones it is a certified value with a recognized
/// closed form whenever one exists.
struct KValue {
  bool max_irrational = false;
  CertScalar value;

  const ClosedForm& closed_form() const { return value.closed_form(); }
};

/// k for an order class: inf(sigma(u), theta(u)), adding sigma(u/3) when
/// 3 divides u.  The value depends only on the order, not the angle.
KValue k_of_order(long u, const NumericConfig& cfg = {});

KValue k_of_angle(const SymbolicAngle& a, const NumericConfig& cfg = {});

/// Certified relation of k(order u) to a threshold without computing the
/// value: every candidate pair is screened with early exits.
Rel k_order_vs_threshold(long u, const Threshold& m, const NumericConfig& cfg = {});

/// Double-precision adjudication oracle: plain cyclic maxima over periods
/// up to 3000, no certification.  Used to annotate discrepancy records.
double brute_k_of_order(long u);

struct OmegaDiscrepancy {
  std::string listed;       // token as published (may lie outside [0, pi])
  RationalAngle canonical;  // canonical equivalent in [0, pi]
  std::string kind;         // "present-but-unlisted" | "unlistable" | "missing-from-derived"
  double brute_k = 0.0;     // adjudicated double-precision k of the canonical angle
  bool brute_confirms = false;
};

struct OmegaResult {
  Threshold m;
  long cutoff_order = 0;
  std::vector<long> order_classes;
  std::vector<std::pair<RationalAngle, KValue>> members;  // sorted by angle
  std::vector<OmegaDiscrepancy> discrepancies;
};

/// Enumerates Omega(m) = {a in [0, pi] : k(a) <= m} for m certified below
/// 8/(3*sqrt3).  The cutoff order is recomputed from certified exceedance
/// thresholds, never assumed.  When m equals 3/2 exactly, the members are
/// cross-checked against the published 43-element list and every difference
/// is reported as an adjudicated discrepancy record.
OmegaResult omega(const Threshold& m, const NumericConfig& cfg = {});

struct TripleSupRow {
  long u = 0;
  ClosedForm expected;  // empty form means "> 3/2" is expected
  bool expect_above_three_halves = false;
  CertScalar value;
  bool pass = false;
};

struct TripleSupReport {
  std::vector<TripleSupRow> rows;
  bool all_pass = true;
};

/// Checks the five-way classification of sup_n |cos(na) - cos(3na)| by order:
/// exact values for every order u <= 34 and certified "> 3/2" for u in
/// [35, 60].
TripleSupReport verify_triple_sup_classification(const NumericConfig& cfg = {});

}  // namespace cosrig
