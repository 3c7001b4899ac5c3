#pragma once

#include <optional>
#include <vector>

#include "rdens/config.hpp"
#include "rdens/cyclotomic.hpp"

namespace rdens {

using IntMatrix = std::vector<std::vector<long long>>;

// a = root^(ell^depth) * torsion with root strongly ell-indivisible and
// torsion of order ell^torsion_exponent.
struct Decomposition {
  CycElement root;
  unsigned depth = 0;
  CycElement torsion;
  unsigned torsion_exponent = 0;
};

// Generators b_i = B_i^(ell^d_i) * zeta_i of the same group as the input
// basis, sorted by d. Row i of basis_change holds the exponents of the
// input basis that produce b_i.
struct DivisibilityParameters {
  CyclotomicField field;
  unsigned ell = 2;
  std::vector<unsigned> d;
  std::vector<unsigned> h;
  std::vector<CycElement> B;
  std::vector<CycElement> zeta;
  IntMatrix basis_change;
  // Norm valuations proved the input independent modulo torsion.
  bool independence_certified = false;
  unsigned rounds = 0;

  std::size_t rank() const { return d.size(); }
};

struct QuotientStructure {
  unsigned n = 0;
  std::vector<unsigned> delta;
  unsigned vH = 0;
  unsigned total_valuation = 0;
};

bool is_strongly_indivisible(const CycElement& a, unsigned ell, const Config& cfg = {});

// The lexicographically smallest exponent vector in {0..ell-1}^r (nonzero)
// whose product is not strongly ell-indivisible, or nullopt when the
// elements are strongly ell-independent.
std::optional<std::vector<unsigned>> strong_independence_witness(const std::vector<CycElement>& elements,
                                                                 unsigned ell, const Config& cfg = {});

Decomposition decompose(const CycElement& a, unsigned ell, const Config& cfg = {});

DivisibilityParameters extract_parameters(const CyclotomicField& field, unsigned ell,
                                          const std::vector<CycElement>& basis, const Config& cfg = {});

QuotientStructure quotient_structure(const DivisibilityParameters& params, unsigned z, unsigned n);

// Parameters of G^(ell^n) relative to the basis b_i^(ell^n).
DivisibilityParameters power_transform(const DivisibilityParameters& params, unsigned n);

// True when the norms of the elements have Q-linearly independent
// valuation vectors, which proves independence modulo torsion.
bool norms_independent(const std::vector<CycElement>& elements);

// Integer exponent vectors spanning the relations among the valuation
// vectors of the norms.
std::vector<std::vector<long long>> norm_relations(const std::vector<CycElement>& elements);

Integer determinant(const IntMatrix& m);

// Checks B_i^(ell^d_i) zeta_i = prod_j basis_j^(basis_change[i][j]) for all i
// and |det(basis_change)| = 1.
bool reconstructs_basis(const DivisibilityParameters& params, const std::vector<CycElement>& basis);

}  // namespace rdens
