#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "rdens/arith.hpp"
#include "rdens/fp_poly.hpp"

namespace rdens::detail {

// A prime p, unramified in the field, together with the factorization of
// Phi_w mod p and the CRT idempotents of F_p[x]/(Phi_w).
struct AuxPrime {
  std::uint64_t p = 0;
  unsigned residue_degree = 0;
  fp::Poly modulus;
  std::vector<fp::Poly> factors;
  std::vector<fp::Poly> idempotents;
};

// A split prime p = 1 mod lcm(w, ell) with the images of all primitive
// w-th roots of unity.
struct SplitPrime {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> embeddings;
};

struct FieldData {
  std::uint64_t conductor = 1;
  std::size_t degree = 1;
  std::vector<Integer> modulus;
  std::uint64_t torsion_order = 2;

  // Lazily filled caches. Their content is a pure function of the
  // conductor, so sharing them never changes any result.
  mutable std::once_flag torsion_once;
  mutable std::vector<std::vector<Rational>> torsion_powers;

  mutable std::once_flag height_once;
  mutable Rational height_factor;

  mutable std::mutex aux_mutex;
  mutable std::vector<AuxPrime> aux_primes;
  mutable std::map<unsigned, std::vector<SplitPrime>> split_primes;
};

}  // namespace rdens::detail
