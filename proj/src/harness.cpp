#include "rdens/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "rdens/density.hpp"
#include "rdens/errors.hpp"

namespace rdens {

namespace {

constexpr std::uint64_t kBlockSize = 1 << 20;

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed ^ (salt * 0x9e3779b97f4a7c15ULL);
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 29;
  return x;
}

// p^f if it does not exceed the bound, else nullopt.
std::optional<std::uint64_t> bounded_power(std::uint64_t p, unsigned f, std::uint64_t bound) {
  unsigned __int128 n = 1;
  for (unsigned i = 0; i < f; ++i) {
    n *= p;
    if (n > bound) return std::nullopt;
  }
  return static_cast<std::uint64_t>(n);
}

std::vector<fp::Poly> factor_cyclotomic(const CyclotomicField& field, std::uint64_t p, unsigned f,
                                        std::uint64_t seed) {
  const fp::Poly phi = fp::from_integers(field.modulus(), p);
  if (static_cast<std::size_t>(f) == field.degree()) return {phi};
  std::mt19937_64 rng(mix(seed, p));
  return fp::equal_degree_factor(phi, f, p, rng);
}

std::string format_poly(const fp::Poly& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(g[i]);
  }
  return s;
}

struct Generator {
  std::vector<Integer> numerator;
  Integer denominator;
};

struct Tally {
  std::uint64_t good = 0;
  std::uint64_t matched = 0;
  std::map<std::string, std::uint64_t> skipped;
  std::string records;
};

class Sweep {
 public:
  Sweep(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
        const EstimateOptions& options, std::uint64_t seed)
      : field_(field), ell_(ell), options_(options), seed_(seed) {
    for (const auto& g : generators) {
      Generator gen;
      gen.denominator = g.denominator();
      gen.numerator = g.integral_numerator(gen.denominator);
      gens_.push_back(std::move(gen));
    }
    w_ = field.conductor();
  }

  void process(std::uint64_t p, Tally& tally) const {
    const bool want_records = options_.records != nullptr;
    if (w_ % p == 0) {
      std::uint64_t u = w_;
      while (u % p == 0) u /= p;
      const unsigned f = u == 1 ? 1 : static_cast<unsigned>(nt::multiplicative_order(p % u, u));
      if (!bounded_power(p, f, options_.bound)) return;
      const std::uint64_t count = nt::euler_phi(u) / f;
      tally.skipped["ramified"] += count;
      if (want_records)
        for (std::uint64_t i = 0; i < count; ++i) tally.records += std::to_string(p) + "," + std::to_string(f) + ",,ramified\n";
      return;
    }
    const unsigned f = w_ == 1 ? 1 : static_cast<unsigned>(nt::multiplicative_order(p % w_, w_));
    if (!bounded_power(p, f, options_.bound)) return;
    const std::uint64_t count = field_.degree() / f;
    if (p == ell_) {
      tally.skipped["p_equals_ell"] += count;
      if (want_records)
        for (std::uint64_t i = 0; i < count; ++i) tally.records += std::to_string(p) + "," + std::to_string(f) + ",,p_equals_ell\n";
      return;
    }
    // Exponent removing the ell-part of the multiplicative group.
    Integer order = nt::pow(Integer(static_cast<unsigned long>(p)), f) - 1;
    while (mpz_divisible_ui_p(order.get_mpz_t(), ell_)) order /= ell_;

    std::vector<std::uint64_t> qmod;
    bool denominators_ok = true;
    for (const auto& g : gens_) {
      qmod.push_back(mpz_fdiv_ui(g.denominator.get_mpz_t(), p));
      if (qmod.back() == 0) denominators_ok = false;
    }

    for (const auto& factor : factor_cyclotomic(field_, p, f, seed_)) {
      const char* verdict = nullptr;
      if (!denominators_ok) {
        verdict = "bad_reduction";
      } else if (f == 1) {
        // Linear factor x - r: reduction is evaluation at r.
        const std::uint64_t r = (p - factor[0]) % p;
        const std::uint64_t m = order.get_ui();
        bool coprime = true, zero = false;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
          std::uint64_t v = fp::eval(fp::from_integers(gens_[i].numerator, p), r, p);
          if (v == 0) {
            zero = true;
            break;
          }
          v = nt::mul_mod(v, nt::inv_mod(qmod[i], p), p);
          if (coprime && nt::pow_mod(v, m, p) != 1) coprime = false;
        }
        verdict = zero ? "bad_reduction" : (coprime ? "match" : "nomatch");
      } else {
        const fp::ResidueField rf(p, factor);
        std::vector<fp::Poly> images;
        bool zero = false;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
          fp::Poly v = rf.reduce(fp::from_integers(gens_[i].numerator, p));
          if (v.empty()) {
            zero = true;
            break;
          }
          images.push_back(fp::scale(v, nt::inv_mod(qmod[i], p), p));
        }
        if (zero) {
          verdict = "bad_reduction";
        } else {
          bool coprime = true;
          for (const auto& x : images)
            if (!fp::ResidueField::is_one(rf.pow(x, order))) coprime = false;
          verdict = coprime ? "match" : "nomatch";
        }
      }
      if (verdict[0] == 'b') {
        ++tally.skipped["bad_reduction"];
      } else {
        ++tally.good;
        if (verdict[0] == 'm') ++tally.matched;
      }
      if (want_records) {
        tally.records += std::to_string(p) + "," + std::to_string(f) + "," + format_poly(factor) + "," + verdict + "\n";
      }
    }
  }

 private:
  CyclotomicField field_;
  unsigned ell_;
  EstimateOptions options_;
  std::uint64_t seed_;
  std::uint64_t w_ = 1;
  std::vector<Generator> gens_;
};

void sieve_block(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& base,
                 std::vector<std::uint64_t>& out) {
  std::vector<char> composite(hi - lo, 0);
  for (std::uint64_t q : base) {
    if (q * q >= hi) break;
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t n = start; n < hi; n += q) composite[n - lo] = 1;
  }
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
    if (!composite[n - lo]) out.push_back(n);
}

}  // namespace

std::vector<PrimeIdeal> prime_ideals_above(const CyclotomicField& field, std::uint64_t p, std::uint64_t seed) {
  const std::uint64_t w = field.conductor();
  if (!nt::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (w % p == 0) throw DomainError(std::to_string(p) + " is ramified");
  const unsigned f = w == 1 ? 1 : static_cast<unsigned>(nt::multiplicative_order(p % w, w));
  std::vector<PrimeIdeal> out;
  for (auto& g : factor_cyclotomic(field, p, f, seed)) {
    out.push_back(PrimeIdeal{p, f, std::move(g), *bounded_power(p, f, UINT64_MAX)});
  }
  return out;
}

IdealCensus prime_ideals_up_to(const CyclotomicField& field, std::uint64_t bound, std::uint64_t seed) {
  if (bound < 2) throw DomainError("bound must be at least 2");
  if (bound > (1ULL << 32)) throw ResourceError("bound too large for an ideal listing");
  IdealCensus census;
  const std::uint64_t w = field.conductor();
  for (std::uint64_t p : nt::primes_up_to(static_cast<std::uint32_t>(bound))) {
    if (w % p == 0) {
      std::uint64_t u = w;
      while (u % p == 0) u /= p;
      const unsigned f = u == 1 ? 1 : static_cast<unsigned>(nt::multiplicative_order(p % u, u));
      if (bounded_power(p, f, bound)) census.ramified += nt::euler_phi(u) / f;
      continue;
    }
    const unsigned f = w == 1 ? 1 : static_cast<unsigned>(nt::multiplicative_order(p % w, w));
    if (!bounded_power(p, f, bound)) continue;
    for (auto& ideal : prime_ideals_above(field, p, seed)) census.ideals.push_back(std::move(ideal));
  }
  std::stable_sort(census.ideals.begin(), census.ideals.end(),
                   [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.norm < b.norm; });
  return census;
}

Reduction reduce_mod_prime(const CycElement& x, const PrimeIdeal& ideal) {
  const std::uint64_t p = ideal.p;
  const Integer q = x.denominator();
  const std::uint64_t qmod = mpz_fdiv_ui(q.get_mpz_t(), p);
  if (qmod == 0) return Reduction{ReductionStatus::not_integral, {}};
  fp::Poly v = fp::rem(fp::from_integers(x.integral_numerator(q), p), ideal.g, p);
  if (v.empty()) return Reduction{ReductionStatus::reduces_to_zero, {}};
  return Reduction{ReductionStatus::ok, fp::scale(v, nt::inv_mod(qmod, p), p)};
}

bool coprime_order_test(const std::vector<fp::Poly>& images, const fp::ResidueField& field, unsigned ell) {
  Integer m = field.group_order();
  while (mpz_divisible_ui_p(m.get_mpz_t(), ell)) m /= ell;
  for (const auto& x : images) {
    if (x.empty()) throw DomainError("coprime_order_test needs nonzero images");
    if (!fp::ResidueField::is_one(field.pow(x, m))) return false;
  }
  return true;
}

const char* to_string(Convention c) { return c == Convention::all ? "all" : "good"; }

Convention parse_convention(const std::string& text) {
  if (text == "all") return Convention::all;
  if (text == "good") return Convention::good;
  throw DomainError("unknown convention '" + text + "' (expected all or good)");
}

EmpiricalReport estimate_against(const CyclotomicField& field, unsigned ell,
                                 const std::vector<CycElement>& generators, const Rational& exact,
                                 const EstimateOptions& options, const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (options.bound < 2) throw DomainError("bound must be at least 2");
  if (options.bound > 2000000000ULL) throw ResourceError("bound exceeds the sieve limit of 2e9");
  for (const auto& g : generators)
    if (g.is_zero()) throw DomainError("zero generator");

  const Sweep sweep(field, ell, generators, options, cfg.seed);
  const std::uint64_t limit = options.bound + 1;
  const auto base = nt::primes_up_to(static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 2);
  const std::uint64_t blocks = (limit + kBlockSize - 1) / kBlockSize;
  std::vector<Tally> tallies(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) {
      primes.clear();
      const std::uint64_t lo = b * kBlockSize;
      sieve_block(lo, std::min(limit, lo + kBlockSize), base, primes);
      for (std::uint64_t p : primes) sweep.process(p, tallies[b]);
    }
  };
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, blocks));
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < jobs; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  EmpiricalReport report;
  report.bound = options.bound;
  report.convention = options.convention;
  report.skipped = {{"ramified", 0}, {"p_equals_ell", 0}, {"bad_reduction", 0}};
  for (auto& t : tallies) {
    report.good += t.good;
    report.matched += t.matched;
    for (const auto& [k, v] : t.skipped) report.skipped[k] += v;
    if (options.records) *options.records << t.records;
  }
  std::uint64_t skipped = 0;
  for (const auto& [k, v] : report.skipped) skipped += v;
  report.total = options.convention == Convention::all ? report.good + skipped : report.good;
  report.observed = report.total ? Rational(Integer(static_cast<unsigned long>(report.matched)),
                                            Integer(static_cast<unsigned long>(report.total)))
                                 : Rational(0);
  report.observed.canonicalize();
  report.exact = exact;
  report.abs_error = std::abs(report.observed.get_d() - exact.get_d());
  report.rel_error = exact != 0 ? report.abs_error / exact.get_d() : report.abs_error;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EmpiricalReport estimate(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
                         const EstimateOptions& options, const Config& cfg) {
  const Rational exact = density(field, ell, generators, cfg).value;
  return estimate_against(field, ell, generators, exact, options, cfg);
}

}  // namespace rdens
