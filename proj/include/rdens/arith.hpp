#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rdens {

using Integer = mpz_class;
using Rational = mpq_class;

namespace nt {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Requires gcd(a, m) = 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

// Trial division; fine for the small conductors and exponents used here.
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
// Exponent of (Z/nZ)^x.
std::uint64_t carmichael(std::uint64_t n);
int moebius(std::uint64_t n);

// v_p(n) for n > 0.
unsigned valuation(std::uint64_t n, std::uint64_t p);
unsigned valuation(const Integer& n, unsigned long p);

// Order of a modulo n; requires gcd(a, n) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

// Throws ResourceError on overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

Integer pow(const Integer& base, unsigned long exp);
// base^exp for any integer exp; base != 0 when exp < 0.
Rational pow(const Rational& base, long exp);

// Smallest r >= 0 with r^k >= n, for n >= 0.
Integer root_ceil(const Integer& n, unsigned long k);

// Segmented-friendly sieve of the primes in [2, n].
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

}  // namespace nt
}  // namespace rdens
