#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdens/arith.hpp"

namespace rdens {

namespace detail {
struct FieldData;
}

// Q(zeta_w) with the conductor normalized so that w = 1 or w != 2 mod 4.
// Copies share immutable data; equal conductors share the same data.
class CyclotomicField {
 public:
  explicit CyclotomicField(std::uint64_t w);

  std::uint64_t conductor() const;
  std::size_t degree() const;
  // Coefficients of Phi_w, constant term first, monic.
  const std::vector<Integer>& modulus() const;
  // Number of roots of unity in the field: w for even w, 2w for odd w.
  std::uint64_t torsion_order() const;
  bool contains_root_of_unity(std::uint64_t n) const { return torsion_order() % n == 0; }

  const detail::FieldData& data() const { return *data_; }

  friend bool operator==(const CyclotomicField& a, const CyclotomicField& b) {
    return a.conductor() == b.conductor();
  }

 private:
  std::shared_ptr<const detail::FieldData> data_;
};

CyclotomicField make_field(std::uint64_t w);

// The n-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(std::uint64_t n);

// sum c_i zeta_w^i in the unique reduced form modulo Phi_w.
class CycElement {
 public:
  explicit CycElement(CyclotomicField field);
  CycElement(CyclotomicField field, std::vector<Rational> coeffs);
  CycElement(CyclotomicField field, const Rational& value);

  // zeta_w^k for any integer k.
  static CycElement root_of_unity(const CyclotomicField& field, long k);

  const CyclotomicField& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  CycElement operator-() const;
  CycElement& operator+=(const CycElement& o);
  CycElement& operator-=(const CycElement& o);
  CycElement& operator*=(const CycElement& o);
  CycElement& operator/=(const CycElement& o);
  friend CycElement operator+(CycElement a, const CycElement& b) { return a += b; }
  friend CycElement operator-(CycElement a, const CycElement& b) { return a -= b; }
  friend CycElement operator*(CycElement a, const CycElement& b) { return a *= b; }
  friend CycElement operator/(CycElement a, const CycElement& b) { return a /= b; }
  friend bool operator==(const CycElement& a, const CycElement& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  // Extended Euclid against Phi_w over Q. Throws DomainError on zero.
  CycElement inverse() const;
  CycElement pow(long e) const;
  CycElement pow(const Integer& e) const;

  // Least common denominator q and the integral numerator q * x.
  Integer denominator() const;
  std::vector<Integer> integral_numerator(const Integer& q) const;

 private:
  CyclotomicField field_;
  std::vector<Rational> coeffs_;
};

// Maps zeta_w to zeta_{w'}^{w'/w}; the target conductor must be a multiple.
CycElement embed(const CycElement& x, const CyclotomicField& target);

// Field norm N_{K/Q}(x), exact.
Rational norm(const CycElement& x);

struct TorsionInfo {
  std::uint64_t order;        // W
  unsigned ell_valuation;     // z = v_ell(W)
  CycElement ell_generator;   // generates the ell-part of the roots of unity
};

TorsionInfo torsion_info(const CyclotomicField& field, unsigned ell);

// A generator of all roots of unity of the field (order W).
CycElement torsion_generator(const CyclotomicField& field);

// Exact multiplicative order if x is a root of unity.
std::optional<std::uint64_t> as_root_of_unity(const CycElement& x);

// Grammar:
//   expr   ::= term (('+'|'-') term)*
//   term   ::= factor ('*' factor)*
//   factor ::= '-' factor | atom ('^' integer)*
//   atom   ::= integer ('/' positive-integer)? | 'z' | '(' expr ')'
// z stands for zeta_w of the field.
CycElement parse_element(std::string_view text, const CyclotomicField& field);
// Comma-separated list of expressions; empty input gives an empty list.
std::vector<CycElement> parse_element_list(std::string_view text, const CyclotomicField& field);
std::string format_element(const CycElement& x);

}  // namespace rdens
