#include <doctest.h>

#include "rdens/divisibility.hpp"
#include "rdens/errors.hpp"
#include "rdens/kummer.hpp"
#include "rdens/power_oracle.hpp"
#include "support.hpp"

using namespace rdens;

namespace {

std::vector<CycElement> gens(const char* text, const CyclotomicField& k) { return parse_element_list(text, k); }

}  // namespace

TEST_CASE("is_strongly_indivisible examples") {
  CyclotomicField q(1), k8(8);
  CHECK(is_strongly_indivisible(CycElement(q, Rational(12)), 3));
  CHECK(!is_strongly_indivisible(CycElement(q, Rational(-4)), 2));
  CHECK(is_strongly_indivisible(CycElement(k8, Rational(3)), 2));
  CHECK(is_strongly_indivisible(parse_element("3*(z^3 - z)", k8), 2));
  CHECK_THROWS_AS(is_strongly_indivisible(CycElement(q, Rational(-1)), 2), DomainError);
}

TEST_CASE("strong_independence_witness examples") {
  CyclotomicField q(1), k8(8);
  auto w = strong_independence_witness(gens("12,18", q), 3);
  REQUIRE(w);
  CHECK(*w == std::vector<unsigned>{1, 1});
  CHECK(!strong_independence_witness(gens("18,6", q), 3));
  CHECK(!strong_independence_witness(gens("3,z^3 - z", k8), 2));
  Config small;
  CHECK_THROWS_AS(strong_independence_witness(gens("2,3,5,7,11", CyclotomicField(1)), 7, small), ResourceError);
}

TEST_CASE("decompose examples") {
  CyclotomicField q(1), k8(8);
  auto d216 = decompose(CycElement(q, Rational(216)), 3);
  CHECK(d216.root == CycElement(q, Rational(6)));
  CHECK(d216.depth == 1);
  CHECK(d216.torsion.is_one());
  auto dm4 = decompose(CycElement(q, Rational(-4)), 2);
  CHECK(dm4.depth == 1);
  CHECK(dm4.torsion == CycElement(q, Rational(-1)));
  CHECK(abs(dm4.root.coeffs()[0]) == 2);
  auto d12 = decompose(CycElement(k8, Rational(12)), 2);
  CHECK(d12.depth == 0);
  CHECK(d12.root == CycElement(k8, Rational(12)));
  CHECK(d12.torsion.is_one());
}

TEST_CASE("decompose reassembles and is maximal") {
  std::mt19937_64 rng(10);
  for (std::uint64_t w : {1, 3, 4, 8}) {
    CyclotomicField k(w);
    for (unsigned ell : {2u, 3u}) {
      for (int trial = 0; trial < 6; ++trial) {
        const CycElement base = testing::random_element(k, rng, 3);
        const CycElement tw = torsion_info(k, ell).ell_generator.pow(static_cast<long>(trial));
        const CycElement a = base.pow(static_cast<long>(nt::checked_pow(ell, trial % 3))) * tw;
        const auto dec = decompose(a, ell);
        CHECK(dec.root.pow(nt::pow(Integer(ell), dec.depth)) * dec.torsion == a);
        CHECK(dec.depth >= static_cast<unsigned>(trial % 3));
        CHECK(is_strongly_indivisible(dec.root, ell));
      }
    }
  }
}

TEST_CASE("extract_parameters reproduces the worked examples") {
  CyclotomicField q(1), k8(8);
  struct Case {
    const CyclotomicField* k;
    unsigned ell;
    const char* g;
    std::vector<unsigned> d, h;
  };
  for (const auto& c : {Case{&q, 3, "12,18", {0, 1}, {0, 0}}, Case{&k8, 2, "12,18", {0, 1}, {0, 0}},
                        Case{&k8, 2, "12*z,18", {0, 1}, {0, 0}}, Case{&k8, 2, "12,18*z", {0, 1}, {0, 3}}}) {
    const auto basis = gens(c.g, *c.k);
    const auto p = extract_parameters(*c.k, c.ell, basis);
    CHECK(p.d == c.d);
    CHECK(p.h == c.h);
    CHECK(reconstructs_basis(p, basis));
    CHECK(!strong_independence_witness(p.B, c.ell));
    CHECK(p.independence_certified);
  }
  // The basis over Q regenerates <18, 6^3>.
  const auto p = extract_parameters(q, 3, gens("12,18", q));
  CHECK(p.B[0] == CycElement(q, Rational(18)));
  CHECK(p.B[1] == CycElement(q, Rational(6)));
}

TEST_CASE("dependent generators are reported") {
  CyclotomicField q(1);
  CHECK_THROWS_AS(extract_parameters(q, 2, gens("-4,2", q)), DependenceError);
  CHECK_THROWS_AS(extract_parameters(q, 3, gens("6,36", q)), DependenceError);
  CHECK_THROWS_AS(extract_parameters(q, 3, gens("-1,2", q)), DomainError);
  CHECK(!norms_independent(gens("2,4", q)));
  CHECK(norms_independent(gens("2,3", q)));
  // A unit has norm +-1 and is not certified, but extraction still works.
  CyclotomicField k8(8);
  const auto unit = gens("-z^3 - z^2 - z", k8);
  CHECK(!norms_independent(unit));
  CHECK(extract_parameters(k8, 2, unit).rank() == 1);
}

TEST_CASE("quotient_structure examples") {
  CyclotomicField q(1);
  const auto p = extract_parameters(q, 3, gens("12,18", q));
  auto s1 = quotient_structure(p, 0, 1);
  CHECK(s1.delta == std::vector<unsigned>{1, 0});
  CHECK(s1.vH == 0);
  CHECK(s1.total_valuation == 1);
  auto s0 = quotient_structure(p, 0, 0);
  CHECK(s0.total_valuation == 0);
  auto s2 = quotient_structure(p, 0, 2);
  CHECK(s2.delta == std::vector<unsigned>{2, 1});
  CHECK(s2.total_valuation == 3);
}

TEST_CASE("quotient_structure against brute-force index") {
  std::mt19937_64 rng(21);
  for (std::uint64_t w : {1, 3, 4, 8}) {
    CyclotomicField k(w);
    const unsigned z2 = torsion_info(k, 2).ell_valuation, z3 = torsion_info(k, 3).ell_valuation;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<CycElement> g{testing::random_element(k, rng, 3)};
      g.push_back(testing::random_element(k, rng, 3).pow(2L) * g[0]);
      if (!norms_independent(g)) continue;
      for (auto [ell, n] : {std::pair{2u, 1u}, {2u, 2u}, {3u, 1u}, {3u, 2u}}) {
        const auto p = extract_parameters(k, ell, g);
        const auto s = quotient_structure(p, ell == 2 ? z2 : z3, n);
        const Integer brute = nt::pow(Integer(ell), n * 2) / brute_power_count(g, ell, n);
        CHECK(brute == nt::pow(Integer(ell), s.total_valuation));
      }
    }
  }
}

TEST_CASE("power_transform examples") {
  CyclotomicField k8(8);
  const auto p = extract_parameters(k8, 2, gens("12,18*z", k8));
  const auto t = power_transform(p, 1);
  CHECK(t.d == std::vector<unsigned>{1, 2});
  CHECK(t.h == std::vector<unsigned>{0, 2});
  const auto id = power_transform(p, 0);
  CHECK(id.d == p.d);
  CHECK(id.h == p.h);
  const auto p2 = extract_parameters(k8, 2, gens("12,18", k8));
  const auto t2 = power_transform(p2, 2);
  CHECK(t2.d == std::vector<unsigned>{2, 3});
  CHECK(t2.h == std::vector<unsigned>{0, 0});
  // The transformed parameters describe the powered basis.
  std::vector<CycElement> powered;
  for (const auto& g : gens("12,18*z", k8)) powered.push_back(g.pow(2L));
  CHECK(reconstructs_basis(t, powered));
}

TEST_CASE("d-parameters do not depend on the basis") {
  CyclotomicField q(1);
  const auto a = extract_parameters(q, 3, gens("12,18", q));
  const auto b = extract_parameters(q, 3, gens("18,6^3*18^2", q));
  CHECK(a.d == b.d);
  std::mt19937_64 rng(8);
  for (std::uint64_t w : {1, 4, 8}) {
    CyclotomicField k(w);
    for (int trial = 0; trial < 4; ++trial) {
      const CycElement x = testing::random_element(k, rng, 3), y = testing::random_element(k, rng, 3);
      if (!norms_independent({x, y})) continue;
      const auto p1 = extract_parameters(k, 2, {x, y});
      const auto p2 = extract_parameters(k, 2, {x * y.pow(3L), x.pow(2L) * y.pow(7L)});
      CHECK(p1.d == p2.d);
    }
  }
}

TEST_CASE("determinant") {
  CHECK(determinant({{2, 1}, {1, 1}}) == 1);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
  CHECK(determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}) == 0);
  CHECK(determinant({{0, 2, 1}, {1, 3, 2}, {4, 1, 1}}) == 3);
}
