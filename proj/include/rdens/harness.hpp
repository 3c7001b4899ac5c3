#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rdens/config.hpp"
#include "rdens/cyclotomic.hpp"
#include "rdens/fp_poly.hpp"

namespace rdens {

struct PrimeIdeal {
  std::uint64_t p = 0;
  unsigned f = 1;
  fp::Poly g;  // monic irreducible factor of Phi_w mod p, degree f
  std::uint64_t norm = 0;
};

// The prime ideals above an unramified p, sorted by defining factor.
std::vector<PrimeIdeal> prime_ideals_above(const CyclotomicField& field, std::uint64_t p, std::uint64_t seed = 0);

struct IdealCensus {
  std::vector<PrimeIdeal> ideals;  // unramified, norm-ordered
  std::uint64_t ramified = 0;      // ideals above p | w with norm <= X
};

// Every prime ideal of norm at most X. Only meant for small X.
IdealCensus prime_ideals_up_to(const CyclotomicField& field, std::uint64_t bound, std::uint64_t seed = 0);

enum class ReductionStatus { ok, not_integral, reduces_to_zero };

struct Reduction {
  ReductionStatus status = ReductionStatus::ok;
  fp::Poly value;
};

Reduction reduce_mod_prime(const CycElement& x, const PrimeIdeal& ideal);

// Whether the subgroup generated by the images has order prime to ell.
bool coprime_order_test(const std::vector<fp::Poly>& images, const fp::ResidueField& field, unsigned ell);

enum class Convention { all, good };

const char* to_string(Convention c);
Convention parse_convention(const std::string& text);

struct EmpiricalReport {
  std::uint64_t bound = 0;
  Convention convention = Convention::all;
  std::uint64_t good = 0;     // ideals where every generator reduces
  std::uint64_t matched = 0;
  std::map<std::string, std::uint64_t> skipped;
  std::uint64_t total = 0;    // denominator under the convention
  Rational observed;
  Rational exact;
  double abs_error = 0;
  double rel_error = 0;
  double elapsed_ms = 0;
};

struct EstimateOptions {
  std::uint64_t bound = 1000000;
  Convention convention = Convention::all;
  unsigned jobs = 0;  // 0: hardware concurrency
  std::ostream* records = nullptr;  // CSV of per-ideal verdicts
};

EmpiricalReport estimate(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
                         const EstimateOptions& options, const Config& cfg = {});

// As estimate, with the exact density supplied by the caller.
EmpiricalReport estimate_against(const CyclotomicField& field, unsigned ell,
                                 const std::vector<CycElement>& generators, const Rational& exact,
                                 const EstimateOptions& options, const Config& cfg = {});

}  // namespace rdens
