#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cosrig/angle.hpp"
#include "cosrig/interval.hpp"

namespace cosrig {

using Matrix = Eigen::MatrixXcd;

/// cos(n * a) for a rational angle, with exact values when the reduced
/// denominator is 1, 2 or 3 (the triadic family relies on exactness there).
double cos_of_multiple(const RationalAngle& a, long n);

/// Largest singular value.
double operator_norm(const Matrix& m);

struct SpectralPart {
  RationalAngle angle;
  Matrix idempotent;
};

/// Finite-dimensional cosine sequence C(n) = sum_j cos(n b_j) p_j with
/// pairwise-orthogonal idempotents p_j summing to the identity.
class SpectralCosine {
 public:
  /// Validates the idempotent family (sum, orthogonality, squares, distinct
  /// angles) within tol before accepting it.  Throws InvalidIdempotents.
  static SpectralCosine build(std::vector<SpectralPart> parts, double tol = 1e-12);

  long dim() const { return dim_; }
  const std::vector<SpectralPart>& parts() const { return parts_; }
  Matrix at(long n) const;
  bool is_diagonal(double tol = 1e-14) const;

 private:
  SpectralCosine(long dim, std::vector<SpectralPart> parts)
      : dim_(dim), parts_(std::move(parts)) {}
  long dim_ = 0;
  std::vector<SpectralPart> parts_;
};

/// max over 0 <= n <= m <= horizon of ||C(m+n) + C(m-n) - 2 C(m) C(n)||.
double dalembert_residual(const SpectralCosine& c, long horizon);

bool check_dalembert(const SpectralCosine& c, long horizon, double tol);

/// Eigendecomposition of a cosine generator: diagonalizable with real
/// spectrum in [-1, 1] whose points are cosines of rational angles.  The
/// spectral projections become the idempotents and arccos of the eigenvalues
/// (recognized as rational multiples of pi) become the angles.  Throws
/// NotCosineGenerator on spectrum or conditioning violations.
SpectralCosine decompose(const Matrix& c1, double min_separation = 1e-6);

struct MatrixSupResult {
  double value = 0.0;
  unsigned long witness_n = 1;
  unsigned long period = 1;
};

/// Exact maximum over one full period of ||C(n) - cos(na) I|| in the
/// operator norm.  Throws PeriodOverflow when the common period exceeds the
/// cyclic guard.
MatrixSupResult sup_distance_to_scalar(const SpectralCosine& c, const RationalAngle& a);

/// Random similarity I + scale*G with condition number kept small enough for
/// stable conjugated idempotents.
Matrix random_similarity(long dim, std::mt19937_64& rng, double cond_cap = 10.0);

/// Conjugated coordinate-projection family for the given distinct angles.
SpectralCosine random_spectral(const std::vector<RationalAngle>& angles, long dim,
                               std::mt19937_64& rng, bool diagonal);

/// Truncation of the (Z/3Z)^N cosine family to diagonal N x N matrices:
/// C(g) = diag(cos(2 pi g_m / 3)).  Entries are exact (1 or -1/2), so the
/// advertised identities hold to the last bit.
class TriadicFamily {
 public:
  explicit TriadicFamily(int n);

  int coords() const { return n_; }
  Matrix at(const std::vector<int>& g) const;

  /// sup over the whole group of ||I - C(g)||: full enumeration of 3^N
  /// elements up to N = 13, beyond that the scan over single-coordinate
  /// elements (whose maximum the diagonal structure attains).
  double sup_norm_distance_to_identity() const;

  /// (2/3) (C(0) - C(g_{m})): exactly the m-th coordinate projection.
  Matrix coordinate_idempotent(int m) const;

  /// True when the recovered idempotents separate all coordinates, i.e. the
  /// generated algebra is the full diagonal algebra.
  bool recovers_all_coordinates() const;

 private:
  int n_;
};

struct HarnessRow {
  std::string name;
  bool pass = false;
  double sup = 0.0;
  double k = 0.0;
  bool dalembert_ok = false;
  std::string detail;
};

struct HarnessReport {
  std::vector<HarnessRow> rows;
  long trials = 0;
  long failures = 0;
};

/// Randomized contrapositive of the rigidity law at matrix scale: every
/// non-scalar spectral cosine stays at sup-distance >= k(a) from the scalar
/// family of a; the order 5 / 8 / 11 witnesses attain k exactly with a
/// closed-form match.
HarnessReport zero_law_harness(long trials, std::uint64_t seed, const NumericConfig& cfg = {});

}  // namespace cosrig
