#include "cosrig/angle.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace cosrig {

namespace {

mpz_class derive_order(const mpz_class& numer, const mpz_class& denom) {
  if (numer == 0) return 1;
  if (mpz_even_p(numer.get_mpz_t())) return denom;
  return 2 * denom;
}

}  // namespace

RationalAngle::RationalAngle() : numer_(0), denom_(1), order_(1) {}

RationalAngle RationalAngle::canonicalized(const mpz_class& p, const mpz_class& q) {
  if (q == 0) throw std::invalid_argument("RationalAngle: zero denominator");
  mpq_class t(p, q);
  t.canonicalize();
  // reduce modulo 2 (i.e. the angle modulo 2*pi)
  mpz_class whole = t.get_num() / t.get_den();  // truncated division
  t -= 2 * (whole / 2);
  if (t < 0) t += 2;
  if (t > 1) t = 2 - t;  // reflect: cos(2*pi - x) = cos(x)
  RationalAngle a;
  a.numer_ = t.get_num();
  a.denom_ = t.get_den();
  a.order_ = derive_order(a.numer_, a.denom_);
  return a;
}

RationalAngle RationalAngle::canonicalized(long p, long q) {
  return canonicalized(mpz_class(p), mpz_class(q));
}

mpz_class RationalAngle::two_pi_numer() const {
  if (numer_ == 0) return 0;
  if (mpz_even_p(numer_.get_mpz_t())) return numer_ / 2;  // order = denom
  return numer_;                                          // order = 2*denom
}

std::string RationalAngle::str() const {
  if (numer_ == 0) return "0";
  if (numer_ == 1 && denom_ == 1) return "1";
  return numer_.get_str() + "/" + denom_.get_str();
}

std::optional<RationalAngle> RationalAngle::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-')) return std::nullopt;
  }
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class p(s);
      return canonicalized(p, mpz_class(1));
    }
    mpz_class p(s.substr(0, slash));
    mpz_class q(s.substr(slash + 1));
    if (q == 0) return std::nullopt;
    return canonicalized(p, q);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

mpz_class order_of(const RationalAngle& a) { return a.order(); }

mpz_class totient(const mpz_class& n) {
  if (n <= 0) throw std::invalid_argument("totient: n must be positive");
  mpz_class result = 1;
  mpz_class m = n;
  mpz_class p = 2;
  while (p * p <= m) {
    if (m % p == 0) {
      mpz_class pk = 1;
      while (m % p == 0) {
        m /= p;
        pk *= p;
      }
      result *= (pk / p) * (p - 1);
    }
    p += (p == 2) ? 1 : 2;
  }
  if (m > 1) result *= m - 1;
  return result;
}

namespace {

bool is_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

// Walks factorizations n = prod p_i^{e_i} with phi(n) = v, requiring each new
// prime to exceed the previous one so every n is produced exactly once.
// A remaining budget of 1 is itself a solution and may still absorb a factor
// of 2 (phi(2) = 1), so the walk continues past the push.
void inverse_totient_search(const mpz_class& v, const mpz_class& min_prime,
                            const mpz_class& partial, std::vector<mpz_class>& out) {
  if (v == 1) out.push_back(partial);
  mpz_class d = 1;
  for (; d * d <= v; ++d) {
    if (v % d != 0) continue;
    for (const mpz_class& div : {d, mpz_class(v / d)}) {
      mpz_class p = div + 1;
      if (p > min_prime && is_prime(p)) {
        mpz_class rest = v / div;  // phi contribution (p-1) consumed
        mpz_class pe = p;
        while (true) {
          inverse_totient_search(rest, p, partial * pe, out);
          if (rest % p != 0) break;
          rest /= p;
          pe *= p;
        }
      }
      if (d * d == v) break;  // avoid revisiting the square divisor
    }
  }
}

}  // namespace

std::vector<mpz_class> inverse_totient(const mpz_class& v) {
  if (v <= 0) throw std::invalid_argument("inverse_totient: v must be positive");
  std::vector<mpz_class> out;
  inverse_totient_search(v, 1, 1, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  const mpz_class bound = v * v + v + 1;
  for (const auto& n : out) {
    if (n > bound) throw std::logic_error("inverse_totient: solution above stated bound");
  }
  return out;
}

std::vector<RationalAngle> angles_of_order(const mpz_class& u) {
  if (u <= 0) throw std::invalid_argument("angles_of_order: u must be positive");
  std::vector<RationalAngle> out;
  if (u == 1) {
    out.emplace_back();
    return out;
  }
  for (mpz_class alpha = 1; 2 * alpha <= u; ++alpha) {
    if (gcd(alpha, u) == 1) out.push_back(RationalAngle::canonicalized(2 * alpha, u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cosrig
