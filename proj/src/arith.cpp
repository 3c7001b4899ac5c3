#include "rdens/arith.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "rdens/errors.hpp"

namespace rdens::nt {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw DomainError("element is not invertible modulo " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto [p, e] : factor(n)) result = result / p * (p - 1);
  return result;
}

std::uint64_t carmichael(std::uint64_t n) {
  std::uint64_t result = 1;
  for (auto [p, e] : factor(n)) {
    std::uint64_t part = checked_pow(p, e - 1) * (p - 1);
    if (p == 2 && e >= 3) part /= 2;
    result = std::lcm(result, part);
  }
  return result;
}

int moebius(std::uint64_t n) {
  int sign = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

unsigned valuation(const Integer& n, unsigned long p) {
  if (n == 0) throw DomainError("valuation of zero");
  Integer m = n;
  unsigned v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  std::uint64_t order = carmichael(n);
  for (auto [q, e] : factor(order)) {
    while (order % q == 0 && pow_mod(a, order / q, n) == 1) order /= q;
  }
  return order;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) throw ResourceError("integer power overflows 64 bits");
  }
  return result;
}

Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    Rational inv = 1 / base;
    return pow(inv, -exp);
  }
  Rational r(pow(Integer(base.get_num()), static_cast<unsigned long>(exp)),
             pow(Integer(base.get_den()), static_cast<unsigned long>(exp)));
  r.canonicalize();
  return r;
}

Integer root_ceil(const Integer& n, unsigned long k) {
  if (n < 0) throw DomainError("root of a negative bound");
  Integer r;
  int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  if (!exact) ++r;
  return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace rdens::nt
