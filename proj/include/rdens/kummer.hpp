#pragma once

#include <optional>
#include <vector>

#include "rdens/config.hpp"
#include "rdens/cyclotomic.hpp"
#include "rdens/divisibility.hpp"

namespace rdens {

struct TowerData {
  unsigned ell = 2;
  unsigned t = 1;            // largest t with K_ell = K_{ell^t}
  std::uint64_t deg_ell = 1; // [K_ell : K]
  unsigned z = 0;
  bool has_i = false;        // zeta_4 in K

  // The degrees [K_{ell^m} : K] follow ell^(m-t) [K_ell : K] for m >= t.
  bool cyclic() const { return ell != 2 || has_i; }
};

TowerData tower_data(const CyclotomicField& field, unsigned ell);

// [K_{ell^m} : K] for any m >= 0.
Integer cyclotomic_degree(const CyclotomicField& field, unsigned ell, unsigned m);

// v_ell [K_{ell^m}(G^(1/ell^n)) : K_{ell^m}] for the cyclic case with
// m >= max(n, t) and n >= 1.
unsigned kummer_valuation(const DivisibilityParameters& params, const TowerData& tower, unsigned m, unsigned n);

// [K_{ell^m}(G^(1/ell^n)) : K] under the same conditions.
Integer total_degree(const DivisibilityParameters& params, const TowerData& tower, unsigned m, unsigned n);

struct EFactor {
  unsigned e = 1;
  // A product s of generators with -s a square in K, when e = 2.
  std::optional<CycElement> witness;
};

// [K(sqrt G) : K] / [K_4(sqrt G) : K_4] for ell = 2 and zeta_4 not in K.
EFactor e_factor(const CyclotomicField& field, const std::vector<CycElement>& generators, const Config& cfg = {});

// Number of exponent vectors in {0..ell^n-1}^r whose product is an
// ell^n-th power in the field of the generators.
Integer brute_power_count(const std::vector<CycElement>& generators, unsigned ell, unsigned n,
                          const Config& cfg = {});

// The index [G : G cap (K'^x)^(ell^n)], which is the Kummer degree
// [K'(G^(1/ell^n)) : K'] when K' contains the ell^n-th roots of unity.
Integer brute_kummer_degree(const std::vector<CycElement>& generators, unsigned ell, unsigned n,
                            const Config& cfg = {});

// [K_{ell^m}(G^(1/ell^n)) : K] for all m >= n >= 0 in every regime,
// including ell = 2 without zeta_4 in K.
class TowerDegrees {
 public:
  TowerDegrees(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
               const Config& cfg = {});
  // Parameters supplied directly; only valid in the cyclic regime.
  TowerDegrees(const DivisibilityParameters& params);

  Integer degree(unsigned m, unsigned n) const;
  const TowerData& tower() const { return tower_; }

 private:
  CyclotomicField field_;
  TowerData tower_;
  std::optional<DivisibilityParameters> params_;     // over K, cyclic regime
  std::optional<DivisibilityParameters> params_k4_;  // over K_4 otherwise
  std::optional<TowerData> tower_k4_;
  unsigned e_ = 1;
};

}  // namespace rdens
