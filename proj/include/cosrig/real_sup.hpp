#pragma once

#include <utility>
#include <vector>

#include "cosrig/cyclic_sup.hpp"
#include "cosrig/interval.hpp"

namespace cosrig {

/// sup over the reals of x |-> |cos(px) - cos(qx)|, reduced to [0, pi] by
/// periodicity and evenness.  The second derivative is bounded by p^2 + q^2
/// everywhere, which drives both the branch-and-bound pruning and the
/// exceedance-interval estimates.
struct TrigSupProblem {
  long p = 1, q = 1;
  long second_derivative_bound() const { return p * p + q * q; }
};

struct RealSupResult {
  CertScalar value;
  double witness_x = 0.0;  // maximizer within the final box resolution
};

/// Certified enclosure of sup_x |cos(px) - cos(qx)| of width <= target_width.
/// Branch-and-bound over dyadic subdivisions of [0, pi] with pruning by the
/// centered quadratic bound |f(x)| <= |f(c)| + |f'(c)| h + (p^2+q^2)/2 h^2.
RealSupResult trig_diff_sup(long p, long q, double target_width = 1e-12,
                            const NumericConfig& cfg = {});

inline RealSupResult trig_diff_sup(const TrigSupProblem& problem, double target_width = 1e-12,
                                   const NumericConfig& cfg = {}) {
  return trig_diff_sup(problem.p, problem.q, target_width, cfg);
}

/// True once the incumbent lower bound certifies sup > m (early exit).
bool trig_diff_sup_exceeds(long p, long q, const Threshold& m, const NumericConfig& cfg = {});

/// Certified length of an interval on which |cos(px) - cos(qx)| > m, derived
/// from the quadratic bound around the maximizer.  Throws ThresholdAboveSup
/// unless m is strictly below the certified supremum.
CertScalar exceedance_interval(long p, long q, const Threshold& m, const NumericConfig& cfg = {});

/// Smallest certified u such that 2*pi/u is below the exceedance length: every
/// angle of order >= u then witnesses sup_n |cos(npa) - cos(nqa)| > m.
long order_threshold(long p, long q, const Threshold& m, const NumericConfig& cfg = {});

/// One recomputed row of the two threshold tables.
struct TaylorRow {
  long s;            // family parameter
  long p, q;         // the underlying pair
  CertScalar theta;  // certified sup of |cos(px) - cos(qx)|
  long delta;        // rigorous second-derivative bound p^2 + q^2
  CertScalar ell;    // certified half-length with ell < sqrt((2*theta-3)/delta)
  long threshold_u;  // computed order threshold for exceedance of 3/2
  long reference_u;  // published threshold the computed one must not exceed
};

/// Recomputes both threshold tables: the family cos(x) - cos(sx) for
/// s in {2,4,5,6} and cos(3x) - cos(sx) for s in {2,4,5,7,8,10,11,13,14,16,
/// 17,19,20}.  Throws if any computed threshold exceeds its reference.
std::pair<std::vector<TaylorRow>, std::vector<TaylorRow>> taylor_tables(
    const NumericConfig& cfg = {});

}  // namespace cosrig
