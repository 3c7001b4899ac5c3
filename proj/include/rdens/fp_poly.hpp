#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rdens/arith.hpp"

// Dense univariate polynomials over a prime field F_p (p < 2^63) and the
// residue fields F_p[x]/(g) built from them.
namespace rdens::fp {

// Little-endian coefficients in [0, p); the zero polynomial is empty.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a);
inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly scale(const Poly& a, std::uint64_t c, std::uint64_t p);
// Remainder of a modulo a nonzero b.
Poly rem(const Poly& a, const Poly& b, std::uint64_t p);
Poly quo(const Poly& a, const Poly& b, std::uint64_t p);
Poly monic(const Poly& a, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p);
Poly pow_mod(const Poly& a, const Integer& e, const Poly& m, std::uint64_t p);
// Inverse of a modulo m, if gcd(a, m) = 1.
std::optional<Poly> inv_mod(const Poly& a, const Poly& m, std::uint64_t p);
std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t p);

// Reduce integer coefficients modulo p.
Poly from_integers(const std::vector<Integer>& coeffs, std::uint64_t p);

// Split a monic squarefree f whose irreducible factors all have the given
// degree (Cantor-Zassenhaus; trace splitting in characteristic 2). The
// result is sorted, so it does not depend on the generator state.
std::vector<Poly> equal_degree_factor(const Poly& f, unsigned factor_degree, std::uint64_t p,
                                      std::mt19937_64& rng);

// The finite field F_p[x]/(g) for monic irreducible g.
class ResidueField {
 public:
  ResidueField(std::uint64_t p, Poly modulus);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return static_cast<unsigned>(modulus_.size() - 1); }
  const Poly& modulus() const { return modulus_; }
  // Size of the multiplicative group, p^f - 1.
  const Integer& group_order() const { return group_order_; }

  Poly reduce(const Poly& a) const { return rem(a, modulus_, p_); }
  Poly mul(const Poly& a, const Poly& b) const { return mul_mod(a, b, modulus_, p_); }
  Poly pow(const Poly& a, const Integer& e) const;
  Poly inv(const Poly& a) const;
  static bool is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }

  // All solutions of x^ell = c for nonzero c (generalized Tonelli-Shanks).
  std::vector<Poly> ell_roots(const Poly& c, unsigned ell, std::mt19937_64& rng) const;

 private:
  std::uint64_t p_;
  Poly modulus_;
  Integer group_order_;
};

}  // namespace rdens::fp
