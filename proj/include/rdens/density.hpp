#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdens/config.hpp"
#include "rdens/cyclotomic.hpp"
#include "rdens/divisibility.hpp"
#include "rdens/kummer.hpp"

namespace rdens {

enum class DensityPath { thm2, thm3, torsion_zero, rank_zero };

const char* to_string(DensityPath path);

struct DensityResult {
  Rational value;
  DensityPath path = DensityPath::thm2;
  unsigned tau = 0;
  std::vector<unsigned> tau_i;
  TowerData tower;
  // Parameters over K, or over K_4 on the thm3 path.
  std::optional<DivisibilityParameters> params;
  // thm3 only: D over K_4, the constant c and [K_4(sqrt G) : K_4].
  std::optional<Rational> density_k4;
  unsigned c = 1;
  Integer kummer_degree_k4 = 1;
};

struct SpecialCase {
  std::string name;
  Rational value;
};

struct DensityBracket {
  Rational lower;
  Rational upper;
  unsigned terms = 0;
};

// Throws UnsupportedError when the input leaves the soft envelope.
void check_envelope(const CyclotomicField& field, unsigned ell, std::size_t rank, const Config& cfg);

DensityResult density(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
                      const Config& cfg = {});

// The general closed form; requires ell odd or zeta_4 in K.
DensityResult density_thm2(const DivisibilityParameters& params, const TowerData& tower);

// The first applicable closed form among the simplified ones.
std::optional<SpecialCase> special_case_density(const DivisibilityParameters& params, const TowerData& tower);
// Every applicable simplified closed form.
std::vector<SpecialCase> special_case_densities(const DivisibilityParameters& params, const TowerData& tower);

// ell = 2 with zeta_4 not in K; generators torsion-free.
DensityResult density_thm3(const CyclotomicField& field, const std::vector<CycElement>& generators,
                           const Config& cfg = {});

DensityBracket density_bracket(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
                               unsigned terms, const Config& cfg = {});

// Density of primes where #(G mod p) has ell-adic valuation exactly n >= 1.
Rational density_valuation_exact(const CyclotomicField& field, unsigned ell,
                                 const std::vector<CycElement>& generators, unsigned n, const Config& cfg = {});

// Density of primes where the order of g_i mod p has ell-adic valuation n_i
// for every i. Entries with n_i = 0 only ask for an order prime to ell.
Rational density_multi_valuation(const CyclotomicField& field, unsigned ell,
                                 const std::vector<std::pair<CycElement, unsigned>>& pairs, const Config& cfg = {});

}  // namespace rdens
