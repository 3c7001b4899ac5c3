#pragma once

#include <vector>

#include "rdens/arith.hpp"

// Integer polynomials reduced modulo a monic integer polynomial; the ring
// Z[x]/(Phi_w) = Z[zeta_w] and its quotients by integers.
namespace rdens::detail {

using IntPoly = std::vector<Integer>;

IntPoly mul(const IntPoly& a, const IntPoly& b);
// Reduce modulo the monic polynomial; the result has exactly deg(modulus)
// coefficients.
void reduce(IntPoly& a, const std::vector<Integer>& modulus);
IntPoly mul_reduce(const IntPoly& a, const IntPoly& b, const std::vector<Integer>& modulus);
// Coefficients into [0, m).
void mod_coeffs(IntPoly& a, const Integer& m);
// Coefficients into (-m/2, m/2].
void symmetric_coeffs(IntPoly& a, const Integer& m);

}  // namespace rdens::detail
