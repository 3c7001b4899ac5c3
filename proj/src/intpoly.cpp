#include "rdens/detail/intpoly.hpp"

namespace rdens::detail {

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return r;
}

void reduce(IntPoly& a, const std::vector<Integer>& modulus) {
  const std::size_t n = modulus.size() - 1;
  for (std::size_t k = a.size(); k-- > n;) {
    if (a[k] == 0) continue;
    const Integer c = a[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (modulus[i] != 0) mpz_submul(a[k - n + i].get_mpz_t(), c.get_mpz_t(), modulus[i].get_mpz_t());
    }
    a[k] = 0;
  }
  a.resize(n);
}

IntPoly mul_reduce(const IntPoly& a, const IntPoly& b, const std::vector<Integer>& modulus) {
  IntPoly r = mul(a, b);
  reduce(r, modulus);
  return r;
}

void mod_coeffs(IntPoly& a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
}

void symmetric_coeffs(IntPoly& a, const Integer& m) {
  const Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
}

}  // namespace rdens::detail
