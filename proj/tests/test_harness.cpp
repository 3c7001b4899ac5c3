#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "rdens/errors.hpp"
#include "rdens/harness.hpp"
#include "support.hpp"

using namespace rdens;

namespace {

// Size of the subgroup generated by the images, by closure under
// multiplication.
std::uint64_t subgroup_size(const std::vector<fp::Poly>& images, const fp::ResidueField& rf) {
  std::set<fp::Poly> seen{fp::Poly{1}};
  std::vector<fp::Poly> frontier{fp::Poly{1}};
  while (!frontier.empty()) {
    std::vector<fp::Poly> next;
    for (const auto& x : frontier) {
      for (const auto& g : images) {
        fp::Poly y = rf.mul(x, g);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Multiplicative order of a mod p by trial factorization of p - 1.
std::uint64_t order_mod(std::uint64_t a, std::uint64_t p) {
  auto pw = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (b %= p; e; e >>= 1, b = b * b % p) {
      if (e & 1) r = r * b % p;
    }
    return r;
  };
  std::uint64_t ord = p - 1, m = p - 1;
  auto strip = [&](std::uint64_t q) {
    while (ord % q == 0 && pw(a, ord / q) == 1) ord /= q;
  };
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    strip(q);
  }
  if (m > 1) strip(m);
  return ord;
}

}  // namespace

TEST_CASE("prime ideals of Q(zeta_8) up to 50") {
  CyclotomicField k8(8);
  const auto census = prime_ideals_up_to(k8, 50);
  std::vector<std::uint64_t> norms;
  for (const auto& id : census.ideals) norms.push_back(id.norm);
  CHECK(norms == std::vector<std::uint64_t>{9, 9, 17, 17, 17, 17, 25, 25, 41, 41, 41, 41, 49, 49});
  CHECK(census.ramified == 1);
}

TEST_CASE("ideals above p factor the cyclotomic polynomial") {
  CyclotomicField k8(8);
  const auto above7 = prime_ideals_above(k8, 7);
  REQUIRE(above7.size() == 2);
  CHECK(above7[0].g == fp::Poly{1, 3, 1});
  CHECK(above7[1].g == fp::Poly{1, 4, 1});
  for (std::uint64_t w : {5, 7, 9, 12, 15}) {
    CyclotomicField k(w);
    std::vector<std::uint64_t> phi;
    for (const auto& c : cyclotomic_polynomial(w)) phi.push_back(Integer((c % 101) + 101).get_ui() % 101);
    if (w % 101 == 0) continue;
    const auto ids = prime_ideals_above(k, 101);
    fp::Poly prod{1};
    for (const auto& id : ids) {
      CHECK(id.g.size() == id.f + 1);
      CHECK(id.f == ids[0].f);
      prod = fp::mul(prod, id.g, 101);
    }
    CHECK(prod == phi);
  }
  CHECK_THROWS_AS(prime_ideals_above(k8, 2), DomainError);
}

TEST_CASE("prime counts") {
  CyclotomicField q(1);
  CHECK(prime_ideals_up_to(q, 1000).ideals.size() == 168);
  EstimateOptions opts;
  opts.bound = 1000000;
  const auto rep = estimate(q, 3, parse_element_list("2", q), opts);
  CHECK(rep.total == 78498);
  CHECK(rep.skipped.at("ramified") == 0);
  CHECK(rep.skipped.at("p_equals_ell") == 1);
  CHECK(rep.skipped.at("bad_reduction") == 1);
  opts.convention = Convention::good;
  CHECK(estimate(q, 3, parse_element_list("2", q), opts).total == 78496);
}

TEST_CASE("reduction statuses") {
  CyclotomicField k8(8);
  const auto id = prime_ideals_above(k8, 17)[0];
  CHECK(reduce_mod_prime(parse_element("1/17 + z", k8), id).status == ReductionStatus::not_integral);
  CHECK(reduce_mod_prime(CycElement(k8, Rational(34)), id).status == ReductionStatus::reduces_to_zero);
  const auto ok = reduce_mod_prime(parse_element("1/2 + z", k8), id);
  CHECK(ok.status == ReductionStatus::ok);
  CHECK(ok.value.size() == 1);
  // An element divisible by one ideal above 17 but not by the others.
  const auto ids = prime_ideals_above(k8, 17);
  const std::uint64_t root = (17 - ids[0].g[0]) % 17;
  const CycElement x = parse_element("z", k8) - CycElement(k8, Rational(static_cast<long>(root)));
  CHECK(reduce_mod_prime(x, ids[0]).status == ReductionStatus::reduces_to_zero);
  CHECK(reduce_mod_prime(x, ids[1]).status == ReductionStatus::ok);
}

TEST_CASE("coprime order test examples") {
  const fp::ResidueField f17(17, fp::Poly{0, 1});
  CHECK(!coprime_order_test({fp::Poly{2}}, f17, 2));
  CHECK(coprime_order_test({fp::Poly{1}}, f17, 2));
  const fp::ResidueField f7(7, fp::Poly{0, 1});
  CHECK(coprime_order_test({fp::Poly{2}}, f7, 2));
  CHECK(!coprime_order_test({fp::Poly{2}}, f7, 3));
  CHECK(coprime_order_test({fp::Poly{2}, fp::Poly{4}}, f7, 2));
  CHECK(!coprime_order_test({fp::Poly{2}, fp::Poly{6}}, f7, 2));
}

TEST_CASE("coprime order test against subgroup enumeration") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (std::uint64_t w : {1, 3, 4, 5, 8}) {
    CyclotomicField k(w);
    for (const auto& id : prime_ideals_up_to(k, 400).ideals) {
      const fp::ResidueField rf(id.p, id.g);
      std::uniform_int_distribution<std::uint64_t> coef(0, id.p - 1);
      for (int trial = 0; trial < 2; ++trial) {
        std::vector<fp::Poly> images;
        for (int j = 0; j < 2; ++j) {
          fp::Poly x(id.f);
          for (auto& c : x) c = coef(rng);
          while (!x.empty() && x.back() == 0) x.pop_back();
          if (x.empty()) x = {1};
          images.push_back(x);
        }
        const std::uint64_t size = subgroup_size(images, rf);
        for (unsigned ell : {2u, 3u, 5u}) {
          CHECK(coprime_order_test(images, rf, ell) == (size % ell != 0));
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("estimate agrees with direct enumeration over Q") {
  CyclotomicField q(1);
  const auto g = parse_element_list("12,18", q);
  EstimateOptions opts;
  opts.bound = 5000;
  const auto rep = estimate(q, 3, g, opts);
  std::uint64_t matched = 0, primes = 0;
  for (std::uint64_t p = 2; p <= opts.bound; ++p) {
    if (!naive_prime(p)) continue;
    ++primes;
    if (p == 2 || p == 3) continue;
    const fp::ResidueField rf(p, fp::Poly{0, 1});
    if (subgroup_size({fp::Poly{12 % p}, fp::Poly{18 % p}}, rf) % 3 != 0) ++matched;
  }
  CHECK(rep.matched == matched);
  CHECK(rep.total == primes);
  CHECK(rep.good + rep.skipped.at("p_equals_ell") + rep.skipped.at("bad_reduction") == primes);
}

TEST_CASE("estimate is deterministic across thread counts") {
  CyclotomicField k8(8);
  const auto g = parse_element_list("12,18*z", k8);
  EstimateOptions opts;
  opts.bound = 200000;
  std::ostringstream a, b;
  opts.jobs = 1;
  opts.records = &a;
  const auto r1 = estimate(k8, 2, g, opts);
  opts.jobs = 4;
  opts.records = &b;
  const auto r4 = estimate(k8, 2, g, opts);
  CHECK(r1.matched == r4.matched);
  CHECK(r1.total == r4.total);
  CHECK(r1.skipped == r4.skipped);
  CHECK(a.str() == b.str());
  CHECK(!a.str().empty());
}

TEST_CASE("estimate tracks the exact density") {
  CyclotomicField q(1), k4(4);
  EstimateOptions opts;
  opts.bound = 1000000;
  const auto r = estimate(q, 2, parse_element_list("3", q), opts);
  CHECK(r.exact == Rational(1, 3));
  CHECK(r.rel_error < 0.02);
  const auto ri = estimate(k4, 2, parse_element_list("-9", k4), opts);
  CHECK(ri.exact == Rational(1, 3));
  CHECK(ri.rel_error < 0.05);
  opts.bound = 3000000000ULL;
  CHECK_THROWS_AS(estimate(q, 2, parse_element_list("3", q), opts), ResourceError);
  CHECK(parse_convention("good") == Convention::good);
  CHECK_THROWS_AS(parse_convention("some"), Error);
}

TEST_CASE("rational generators over Q(zeta_8) against a count by primes") {
  // With rational generators the verdict depends only on p: split p = 1 mod 8
  // gives four ideals of norm p, every other odd p two ideals of norm p^2.
  CyclotomicField k8(8);
  EstimateOptions opts;
  opts.bound = 200000;
  const auto rep = estimate(k8, 2, parse_element_list("12,18", k8), opts);
  std::uint64_t matched = 0;
  for (std::uint64_t p = 5; p <= opts.bound; ++p) {
    if (!naive_prime(p) || (p % 8 != 1 && p * p > opts.bound)) continue;
    const bool odd = std::lcm(order_mod(12, p), order_mod(18, p)) % 2 == 1;
    if (odd) matched += p % 8 == 1 ? 4 : 2;
  }
  CHECK(rep.matched == matched);
}
