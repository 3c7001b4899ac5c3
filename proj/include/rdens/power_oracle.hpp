#pragma once

#include <optional>
#include <vector>

#include "rdens/config.hpp"
#include "rdens/cyclotomic.hpp"

namespace rdens {

// Some b in K with b^ell = a, or nullopt when a is not an ell-th power in K.
// The answer is certified: a returned root is verified exactly and a
// nullopt comes either from a residue-field non-residue or from an
// exhaustive reconstruction under a proven coefficient bound.
std::optional<CycElement> lth_root(const CycElement& a, unsigned ell, const Config& cfg = {});

// Every ell-th root of a in K (empty, one, or ell of them).
std::vector<CycElement> all_lth_roots(const CycElement& a, unsigned ell, const Config& cfg = {});

// Whether a is an ell^n-th power in K.
bool is_power(const CycElement& a, unsigned ell, unsigned n, const Config& cfg = {});

struct PowerDepth {
  unsigned depth;
  CycElement root;  // root^(ell^depth) = a, root is not an ell-th power
};

// Maximal d with a in (K^x)^(ell^d). a must not be a root of unity.
PowerDepth power_depth(const CycElement& a, unsigned ell, const Config& cfg = {});

// The quick rejection used before reconstruction: true when some sampled
// split prime shows that a is not an ell-th power. Exposed for testing.
bool residue_pretest_rejects(const CycElement& a, unsigned ell, const Config& cfg = {});

// Coefficient bound for integral ell-th roots of the integral element with
// the given power-basis coefficients.
Integer root_height_bound(const CyclotomicField& field, const std::vector<Integer>& integral, unsigned ell);

}  // namespace rdens
