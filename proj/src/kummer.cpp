#include "rdens/kummer.hpp"

#include <algorithm>
#include <numeric>

#include "rdens/errors.hpp"
#include "rdens/power_oracle.hpp"

namespace rdens {

TowerData tower_data(const CyclotomicField& field, unsigned ell) {
  if (ell < 2 || !nt::is_prime(ell)) throw DomainError("ell must be prime");
  const std::uint64_t w = field.conductor();
  TowerData td;
  td.ell = ell;
  td.z = torsion_info(field, ell).ell_valuation;
  td.has_i = w % 4 == 0;
  const unsigned v = nt::valuation(w, ell);
  if (ell == 2) {
    td.t = v >= 2 ? v : 1;
  } else {
    td.t = std::max(1u, v);
  }
  td.deg_ell = nt::euler_phi(std::lcm(w, static_cast<std::uint64_t>(ell))) / nt::euler_phi(w);
  return td;
}

Integer cyclotomic_degree(const CyclotomicField& field, unsigned ell, unsigned m) {
  const std::uint64_t w = field.conductor();
  const std::uint64_t lm = nt::checked_pow(ell, m);
  const std::uint64_t g = std::gcd(w, lm);
  // phi(lcm(w, ell^m)) / phi(w) = phi(ell^m) / phi(gcd) since the
  // ell-parts are the only overlap.
  return Integer(static_cast<unsigned long>(nt::euler_phi(lm) / nt::euler_phi(g)));
}

unsigned kummer_valuation(const DivisibilityParameters& params, const TowerData& tower, unsigned m, unsigned n) {
  if (!tower.cyclic()) throw DomainError("kummer_valuation requires ell odd or zeta_4 in K");
  if (n < 1) throw DomainError("kummer_valuation requires n >= 1");
  if (m < std::max(n, tower.t)) throw DomainError("kummer_valuation requires m >= max(n, t)");
  unsigned top = m;
  unsigned sum_n = 0;
  for (std::size_t i = 0; i < params.rank(); ++i) {
    const unsigned ni = std::min(n, params.d[i]);
    top = std::max(top, params.h[i] + ni);
    sum_n += ni;
  }
  return top - m + static_cast<unsigned>(params.rank()) * n - sum_n;
}

Integer total_degree(const DivisibilityParameters& params, const TowerData& tower, unsigned m, unsigned n) {
  const unsigned v = kummer_valuation(params, tower, m, n);
  return Integer(static_cast<unsigned long>(tower.deg_ell)) * nt::pow(Integer(tower.ell), m - tower.t + v);
}

EFactor e_factor(const CyclotomicField& field, const std::vector<CycElement>& generators, const Config& cfg) {
  if (field.contains_root_of_unity(4)) throw DomainError("e_factor requires zeta_4 not in K");
  const std::size_t r = generators.size();
  if (r > 20) throw ResourceError("too many generators for the subset scan");
  for (std::uint64_t mask = 0; mask < (1ULL << r); ++mask) {
    CycElement s(field, Rational(1));
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) s *= generators[i];
    if (lth_root(-s, 2, cfg)) return EFactor{2, s};
  }
  return EFactor{};
}

Integer brute_power_count(const std::vector<CycElement>& generators, unsigned ell, unsigned n, const Config& cfg) {
  const std::size_t r = generators.size();
  const std::uint64_t side = nt::checked_pow(ell, n);
  const Integer vectors = nt::pow(Integer(static_cast<unsigned long>(side)), r);
  if (!cfg.allow_large && vectors > envelope::max_exponent_vectors) {
    throw ResourceError("power index enumeration needs " + vectors.get_str() + " exponent vectors");
  }
  if (r == 0) return 1;
  std::vector<std::vector<CycElement>> powers(r);
  for (std::size_t i = 0; i < r; ++i) {
    CycElement x(generators[i].field(), Rational(1));
    for (std::uint64_t k = 0; k < side; ++k) {
      powers[i].push_back(x);
      x *= generators[i];
    }
  }
  Integer count = 0;
  std::vector<std::uint64_t> x(r, 0);
  for (;;) {
    CycElement p = powers[0][x[0]];
    for (std::size_t i = 1; i < r; ++i) p *= powers[i][x[i]];
    if (is_power(p, ell, n, cfg)) ++count;
    std::size_t k = 0;
    while (k < r && ++x[k] == side) x[k++] = 0;
    if (k == r) break;
  }
  return count;
}

Integer brute_kummer_degree(const std::vector<CycElement>& generators, unsigned ell, unsigned n, const Config& cfg) {
  const Integer count = brute_power_count(generators, ell, n, cfg);
  const Integer total = nt::pow(Integer(ell), n * generators.size());
  return total / count;
}

TowerDegrees::TowerDegrees(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
                           const Config& cfg)
    : field_(field), tower_(tower_data(field, ell)) {
  if (tower_.cyclic()) {
    params_ = extract_parameters(field, ell, generators, cfg);
    return;
  }
  const CyclotomicField k4(4 * field.conductor());
  std::vector<CycElement> lifted;
  for (const auto& g : generators) lifted.push_back(embed(g, k4));
  params_k4_ = extract_parameters(k4, 2, lifted, cfg);
  tower_k4_ = tower_data(k4, 2);
  e_ = e_factor(field, generators, cfg).e;
}

TowerDegrees::TowerDegrees(const DivisibilityParameters& params)
    : field_(params.field), tower_(tower_data(params.field, params.ell)), params_(params) {
  if (!tower_.cyclic()) throw DomainError("parameters alone do not determine degrees when zeta_4 is not in K");
}

Integer TowerDegrees::degree(unsigned m, unsigned n) const {
  if (m < n) throw DomainError("degree requires m >= n");
  if (n == 0) return cyclotomic_degree(field_, tower_.ell, m);
  if (params_) return total_degree(*params_, tower_, std::max(m, tower_.t), n);
  if (m == 1) return e_ * total_degree(*params_k4_, *tower_k4_, 2, 1);
  return 2 * total_degree(*params_k4_, *tower_k4_, m, n);
}

}  // namespace rdens
