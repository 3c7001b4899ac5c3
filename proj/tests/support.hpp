#pragma once

#include <complex>
#include <random>
#include <vector>

#include "rdens/cyclotomic.hpp"

namespace testing {

// Small random element with integer coefficients in [-bound, bound], never
// zero and never a root of unity.
inline rdens::CycElement random_element(const rdens::CyclotomicField& k, std::mt19937_64& rng, int bound = 3) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  for (;;) {
    std::vector<rdens::Rational> c(k.degree());
    for (auto& x : c) x = dist(rng);
    rdens::CycElement e(k, c);
    if (!e.is_zero() && !rdens::as_root_of_unity(e)) return e;
  }
}

// Value of x under zeta_w -> exp(2 pi i j / w), computed independently of
// the polynomial reduction.
inline std::complex<double> embed_complex(const rdens::CycElement& x, long j = 1) {
  const double w = static_cast<double>(x.field().conductor());
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    s += x.coeffs()[i].get_d() * std::polar(1.0, 2 * M_PI * static_cast<double>(j * static_cast<long>(i)) / w);
  }
  return s;
}

}  // namespace testing
