#include <doctest.h>

#include "rdens/density.hpp"
#include "rdens/errors.hpp"
#include "support.hpp"

using namespace rdens;

namespace {

Rational dens(std::uint64_t w, unsigned ell, const char* g) {
  CyclotomicField k(w);
  return density(k, ell, parse_element_list(g, k)).value;
}

Rational frac(long a, long b) { return Rational(a, b); }

// Groups with two random generators whose norms are independent.
std::vector<CycElement> random_group(const CyclotomicField& k, std::mt19937_64& rng, std::size_t rank) {
  for (;;) {
    std::vector<CycElement> g;
    for (std::size_t i = 0; i < rank; ++i) {
      CycElement x = testing::random_element(k, rng, 3);
      // Random small powers and twists reach nonzero d and h.
      x = x.pow(static_cast<long>(1 + rng() % 4)) * torsion_generator(k).pow(static_cast<long>(rng() % 8));
      g.push_back(x);
    }
    if (norms_independent(g)) return g;
  }
}

}  // namespace

TEST_CASE("worked-example densities") {
  CHECK(dens(8, 2, "12,18") == frac(1, 56));
  CHECK(dens(8, 2, "12*z,18") == frac(1, 56));
  CHECK(dens(8, 2, "12,18*z") == frac(1, 448));
  CHECK(dens(1, 3, "12,18") == frac(8, 13));
}

TEST_CASE("classical densities over Q and Q(i)") {
  CHECK(dens(1, 2, "2") == frac(7, 24));
  CHECK(dens(1, 2, "3") == frac(1, 3));
  CHECK(dens(1, 2, "-9") == frac(1, 6));
  CHECK(dens(4, 2, "2") == frac(1, 12));
  CHECK(dens(4, 2, "3") == frac(1, 6));
  CHECK(dens(4, 2, "-9") == frac(1, 3));
  CHECK(dens(1, 3, "2") == frac(5, 8));
}

TEST_CASE("dispatcher routes") {
  CyclotomicField k5(5), q(1), k8(8);
  auto t = density(k5, 5, parse_element_list("z", k5));
  CHECK(t.value == 0);
  CHECK(t.path == DensityPath::torsion_zero);
  auto r = density(q, 3, parse_element_list("-1", q));
  CHECK(r.value == 1);
  CHECK(r.path == DensityPath::rank_zero);
  // Prime-to-ell torsion is dropped.
  CHECK(density(q, 3, parse_element_list("-2", q)).value == frac(5, 8));
  auto g = density(q, 2, parse_element_list("2", q));
  CHECK(g.path == DensityPath::thm3);
  REQUIRE(g.density_k4);
  CHECK(*g.density_k4 == frac(1, 12));
  CHECK(g.c == 1);
  CHECK(g.kummer_degree_k4 == 2);
  auto m9 = density(q, 2, parse_element_list("-9", q));
  CHECK(m9.c == 0);
  auto p = density(k8, 2, parse_element_list("12,18*z", k8));
  CHECK(p.path == DensityPath::thm2);
  CHECK(p.tau == 4);
  CHECK(p.tau_i == std::vector<unsigned>{4, 4});
  CHECK_THROWS_AS(density(q, 3, parse_element_list("0", q)), DomainError);
}

TEST_CASE("density_thm2 on explicit parameters") {
  CyclotomicField k8(8);
  const auto p = extract_parameters(k8, 2, parse_element_list("3,5", k8));
  REQUIRE(p.d == std::vector<unsigned>{0, 0});
  REQUIRE(p.h == std::vector<unsigned>{0, 0});
  CHECK(density_thm2(p, tower_data(k8, 2)).value == frac(1, 112));
}

TEST_CASE("special-case examples") {
  CyclotomicField q(1), k4(4);
  auto s = special_case_density(extract_parameters(k4, 2, parse_element_list("2", k4)), tower_data(k4, 2));
  REQUIRE(s);
  CHECK(s->value == frac(1, 12));
  auto s1 = special_case_density(extract_parameters(q, 3, parse_element_list("2", q)), tower_data(q, 3));
  REQUIRE(s1);
  CHECK(s1->value == frac(5, 8));
  auto s2 = special_case_density(extract_parameters(k4, 2, parse_element_list("3", k4)), tower_data(k4, 2));
  REQUIRE(s2);
  CHECK(s2->value == frac(1, 6));
}

TEST_CASE("brackets") {
  CyclotomicField q(1), k8(8);
  auto b1 = density_bracket(q, 3, parse_element_list("12,18", q), 1);
  CHECK(b1.lower == frac(1, 2));
  CHECK(b1.upper == 1);
  auto b6 = density_bracket(q, 3, parse_element_list("12,18", q), 6);
  CHECK(b6.upper - b6.lower == frac(1, 486));
  CHECK(b6.lower <= frac(8, 13));
  CHECK(frac(8, 13) <= b6.upper);
  auto b8 = density_bracket(k8, 2, parse_element_list("12,18", k8), 8);
  CHECK(b8.lower <= frac(1, 56));
  CHECK(frac(1, 56) <= b8.upper);
  CHECK_THROWS_AS(density_bracket(q, 3, parse_element_list("2", q), 0), DomainError);
}

TEST_CASE("bracket containment and width on random groups") {
  std::mt19937_64 rng(5);
  for (std::uint64_t w : {1, 3, 4, 8}) {
    CyclotomicField k(w);
    for (unsigned ell : {2u, 3u}) {
      const auto tw = tower_data(k, ell);
      for (int trial = 0; trial < 3; ++trial) {
        const auto g = random_group(k, rng, 1 + trial % 2);
        const Rational d = density(k, ell, g).value;
        Rational prev_width = 2;
        for (unsigned n = 1; n <= 10; ++n) {
          const auto b = density_bracket(k, ell, g, n);
          CHECK(b.lower <= d);
          CHECK(d <= b.upper);
          const Rational width = b.upper - b.lower;
          CHECK(width == Rational(1) / Rational(cyclotomic_degree(k, ell, n)));
          if (n > tw.t) CHECK(width * 2 <= prev_width);
          prev_width = width;
        }
      }
    }
  }
}

TEST_CASE("special cases agree with the general formula") {
  std::mt19937_64 rng(6);
  int applicable = 0;
  for (std::uint64_t w : {1, 3, 4, 8, 9}) {
    CyclotomicField k(w);
    for (unsigned ell : {2u, 3u}) {
      const auto tw = tower_data(k, ell);
      if (!tw.cyclic()) continue;
      for (int trial = 0; trial < 8; ++trial) {
        const auto p = extract_parameters(k, ell, random_group(k, rng, 1 + trial % 2));
        const Rational general = density_thm2(p, tw).value;
        for (const auto& sc : special_case_densities(p, tw)) {
          CHECK_MESSAGE(sc.value == general, sc.name);
          ++applicable;
        }
      }
    }
  }
  CHECK(applicable > 20);
}

TEST_CASE("bounds, basis invariance and powering") {
  std::mt19937_64 rng(7);
  for (std::uint64_t w : {1, 4, 8}) {
    CyclotomicField k(w);
    for (unsigned ell : {2u, 3u}) {
      const auto tw = tower_data(k, ell);
      for (int trial = 0; trial < 4; ++trial) {
        const auto g = random_group(k, rng, 2);
        const auto res = density(k, ell, g);
        CHECK(res.value >= 0);
        CHECK(res.value <= 1);
        if (res.path == DensityPath::thm2) {
          CHECK(res.value > 1 - Rational(1) / Rational(tw.deg_ell));
          CHECK(res.value < 1);
          CHECK(res.tau >= tw.t);
        }
        const std::vector<CycElement> other{g[0] * g[1].pow(5L), g[0].pow(2L) * g[1].pow(11L)};
        CHECK(density(k, ell, other).value == res.value);
        const std::vector<CycElement> powered{g[0].pow(static_cast<long>(ell)), g[1].pow(static_cast<long>(ell))};
        CHECK(density(k, ell, powered).value >= res.value);
      }
    }
  }
}

TEST_CASE("valuation densities") {
  CyclotomicField q(1), k4(4);
  const auto two = parse_element_list("2", q);
  CHECK(density_valuation_exact(q, 3, two, 1) == frac(1, 4));
  CHECK(density_valuation_exact(q, 2, two, 1) == frac(7, 24));
  CHECK_THROWS_AS(density_valuation_exact(q, 3, two, 0), DomainError);
  Rational sum = density(q, 3, two).value;
  for (unsigned n = 1; n <= 6; ++n) sum += density_valuation_exact(q, 3, two, n);
  CHECK(sum <= 1);
  CHECK(1 - sum <= Rational(1) / Rational(cyclotomic_degree(q, 3, 7)));
  CHECK(sum == frac(1943, 1944));
  CHECK(density(q, 2, parse_element_list("-1,2", q)).value == 0);
  const auto m2 = parse_element_list("-2", q);
  Rational tot = density(q, 2, m2).value;
  CHECK(tot == frac(7, 24));
  for (unsigned n = 1; n <= 8; ++n) tot += density_valuation_exact(q, 2, m2, n);
  CHECK(tot <= 1);
  CHECK(1 - tot <= Rational(1) / Rational(cyclotomic_degree(q, 2, 9)));
}

TEST_CASE("multi-valuation densities") {
  CyclotomicField q(1), k8(8);
  const CycElement two(q, Rational(2)), five(q, Rational(5));
  CHECK(density_multi_valuation(q, 3, {{two, 1}}) == density_valuation_exact(q, 3, {two}, 1));
  CHECK(density_multi_valuation(q, 3, {{two, 0}, {five, 0}}) == density(q, 3, {two, five}).value);
  CHECK(density_multi_valuation(q, 3, {{two, 1}, {five, 1}}) == frac(2, 13));
  const auto g = parse_element_list("12,18", k8);
  CHECK(density_multi_valuation(k8, 2, {{g[0], 0}, {g[1], 0}}) == frac(1, 56));
  // Summing over the valuation of one generator recovers the other's marginal.
  Rational s = 0;
  for (unsigned n = 0; n <= 8; ++n) s += density_multi_valuation(q, 3, {{two, n}, {five, 1}});
  const Rational marginal = density_valuation_exact(q, 3, {five}, 1);
  CHECK(s <= marginal);
  CHECK(marginal - s <= Rational(1, 1000));
}

TEST_CASE("envelope") {
  CyclotomicField k27(27);
  CHECK_THROWS_AS(density(k27, 2, parse_element_list("2", k27)), UnsupportedError);
  CyclotomicField q(1);
  CHECK_THROWS_AS(density(q, 11, parse_element_list("2", q)), UnsupportedError);
  Config big;
  big.allow_large = true;
  CHECK(density(q, 11, parse_element_list("2", q), big).value > 0);
}
