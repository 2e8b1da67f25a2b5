#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cosrig {

/// A rational multiple of pi, canonicalized into [0, pi].
///
/// The stored fraction numer/denom is reduced, with 0 <= numer/denom <= 1,
/// and the angle value is pi * numer / denom.  The order -- the smallest
/// u >= 1 with e^{i u a} = 1 -- is derived at construction and cached.
class RationalAngle {
 public:
  /// The zero angle.
  RationalAngle();

  /// Reduces pi*p/q modulo 2*pi and reflects into [0, pi] (cos is even, so
  /// the canonical representative has the same cosine orbit).
  static RationalAngle canonicalized(const mpz_class& p, const mpz_class& q);
  static RationalAngle canonicalized(long p, long q);

  const mpz_class& numer() const { return numer_; }
  const mpz_class& denom() const { return denom_; }
  const mpz_class& order() const { return order_; }

  bool is_zero() const { return numer_ == 0; }
  bool is_pi() const { return numer_ == 1 && denom_ == 1; }

  /// The angle as 2*pi*alpha/order with gcd(alpha, order) = 1 (alpha = 0 only
  /// for the zero angle).
  mpz_class two_pi_numer() const;

  /// Serialized form: "p/q" meaning pi*p/q, with "0" and "1" for 0 and pi.
  std::string str() const;
  static std::optional<RationalAngle> parse(std::string_view text);

  friend bool operator==(const RationalAngle& a, const RationalAngle& b) {
    return a.numer_ == b.numer_ && a.denom_ == b.denom_;
  }
  friend std::strong_ordering operator<=>(const RationalAngle& a, const RationalAngle& b) {
    int c = cmp(a.numer_ * b.denom_, b.numer_ * a.denom_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class numer_;
  mpz_class denom_;
  mpz_class order_;
};

/// Marker for an angle that is an irrational multiple of pi.  Carries no
/// numeric payload: downstream operations classify, they never approximate.
struct IrrationalMultipleOfPi {};

/// Either a rational multiple of pi or the opaque irrational marker.
using SymbolicAngle = std::variant<RationalAngle, IrrationalMultipleOfPi>;

/// Smallest u >= 1 with e^{i u a} = 1.
mpz_class order_of(const RationalAngle& a);

/// Euler totient by the prime-factorization product.
mpz_class totient(const mpz_class& n);

/// All n with totient(n) = v.  Every solution satisfies n <= v^2 + v + 1
/// (totient(n) >= sqrt(n/2) for all n, so the search space is bounded); the
/// search walks admissible prime factorizations inside that bound.
std::vector<mpz_class> inverse_totient(const mpz_class& v);

/// All angles in [0, pi] of order exactly u, sorted ascending:
/// {2*pi*alpha/u : 1 <= alpha <= u/2, gcd(alpha, u) = 1}, plus {0} for u = 1.
/// For u >= 3 the count equals totient(u)/2.
std::vector<RationalAngle> angles_of_order(const mpz_class& u);

}  // namespace cosrig
