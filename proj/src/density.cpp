#include "rdens/density.hpp"

#include <algorithm>

#include "rdens/errors.hpp"

namespace rdens {

namespace {

Rational lpow(unsigned ell, long e) { return nt::pow(Rational(ell), e); }

unsigned compute_tau(const DivisibilityParameters& params, const TowerData& tower) {
  unsigned tau = tower.t;
  for (std::size_t i = 0; i < params.rank(); ++i)
    if (params.h[i] > 0) tau = std::max(tau, params.h[i] + params.d[i]);
  return tau;
}

struct SplitGenerators {
  bool ell_torsion = false;
  std::vector<CycElement> free;
};

// Roots of unity of order prime to ell never change whether the order of
// the reduction is prime to ell, so they are dropped.
SplitGenerators split_torsion(const std::vector<CycElement>& generators, unsigned ell) {
  SplitGenerators out;
  for (const auto& g : generators) {
    if (g.is_zero()) throw DomainError("zero generator");
    if (auto order = as_root_of_unity(g)) {
      if (*order % ell == 0) out.ell_torsion = true;
      continue;
    }
    out.free.push_back(g);
  }
  return out;
}

// The density of G^(ell^k) for a fixed torsion-free G.
class GroupDensity {
 public:
  GroupDensity(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& free, const Config& cfg)
      : field_(field), ell_(ell), tower_(tower_data(field, ell)) {
    if (free.empty()) return;
    if (tower_.cyclic()) {
      params_ = extract_parameters(field, ell, free, cfg);
      return;
    }
    const CyclotomicField k4(4 * field.conductor());
    std::vector<CycElement> lifted;
    for (const auto& g : free) lifted.push_back(embed(g, k4));
    params_ = extract_parameters(k4, 2, lifted, cfg);
    tower_k4_ = tower_data(k4, 2);
    e_ = e_factor(field, free, cfg).e;
  }

  DensityResult power(unsigned k) const {
    if (!params_) {
      DensityResult r;
      r.value = 1;
      r.path = DensityPath::rank_zero;
      r.tower = tower_;
      r.tau = tower_.t;
      return r;
    }
    const DivisibilityParameters p = power_transform(*params_, k);
    if (!tower_k4_) return density_thm2(p, tower_);
    DensityResult inner = density_thm2(p, *tower_k4_);
    DensityResult r = inner;
    r.path = DensityPath::thm3;
    r.tower = tower_;
    r.density_k4 = inner.value;
    // -s with s in G^(2^k), k >= 1, is never a square since -1 is not.
    r.c = (k == 0 && e_ == 2) ? 0 : 1;
    r.kummer_degree_k4 = total_degree(p, *tower_k4_, 2, 1);
    r.value = inner.value / 2 + Rational(r.c) / (2 * r.kummer_degree_k4);
    return r;
  }

 private:
  CyclotomicField field_;
  unsigned ell_;
  TowerData tower_;
  std::optional<DivisibilityParameters> params_;
  std::optional<TowerData> tower_k4_;
  unsigned e_ = 1;
};

DensityResult torsion_zero(const CyclotomicField& field, unsigned ell) {
  DensityResult r;
  r.value = 0;
  r.path = DensityPath::torsion_zero;
  r.tower = tower_data(field, ell);
  r.tau = r.tower.t;
  return r;
}

std::vector<CycElement> powered(const std::vector<CycElement>& generators, unsigned ell, unsigned k) {
  std::vector<CycElement> out;
  const Integer e = nt::pow(Integer(ell), k);
  for (const auto& g : generators) out.push_back(g.pow(e));
  return out;
}

}  // namespace

const char* to_string(DensityPath path) {
  switch (path) {
    case DensityPath::thm2: return "thm2";
    case DensityPath::thm3: return "thm3";
    case DensityPath::torsion_zero: return "torsion-zero";
    case DensityPath::rank_zero: return "rank-zero";
  }
  return "unknown";
}

void check_envelope(const CyclotomicField& field, unsigned ell, std::size_t rank, const Config& cfg) {
  if (ell < 2 || !nt::is_prime(ell)) throw DomainError("ell must be prime, got " + std::to_string(ell));
  if (cfg.allow_large) return;
  if (field.degree() > envelope::max_degree) {
    throw UnsupportedError("field degree " + std::to_string(field.degree()) + " exceeds the envelope (max " +
                           std::to_string(envelope::max_degree) + "); pass --allow-large to override");
  }
  if (ell > envelope::max_ell) {
    throw UnsupportedError("ell = " + std::to_string(ell) + " exceeds the envelope (max " +
                           std::to_string(envelope::max_ell) + "); pass --allow-large to override");
  }
  if (rank > envelope::max_rank) {
    throw UnsupportedError("rank " + std::to_string(rank) + " exceeds the envelope (max " +
                           std::to_string(envelope::max_rank) + "); pass --allow-large to override");
  }
}

DensityResult density(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
                      const Config& cfg) {
  check_envelope(field, ell, generators.size(), cfg);
  for (const auto& g : generators)
    if (!(g.field() == field)) throw DomainError("generator lives in a different field");
  const SplitGenerators split = split_torsion(generators, ell);
  if (split.ell_torsion) return torsion_zero(field, ell);
  return GroupDensity(field, ell, split.free, cfg).power(0);
}

DensityResult density_thm2(const DivisibilityParameters& params, const TowerData& tower) {
  if (!tower.cyclic()) throw DomainError("density_thm2 requires ell odd or zeta_4 in K");
  const unsigned ell = tower.ell;
  const std::size_t r = params.rank();
  DensityResult res;
  res.path = DensityPath::thm2;
  res.tower = tower;
  res.params = params;
  res.tau = compute_tau(params, tower);
  const long tau = res.tau;

  Rational sum = lpow(ell, -tau) / (1 - lpow(ell, -1));
  long dsum = 0;
  for (std::size_t i = 1; i <= r; ++i) {
    const long di = params.d[i - 1];
    const long ti = std::max(tau, di);
    res.tau_i.push_back(static_cast<unsigned>(ti));
    dsum += di;
    const long ii = static_cast<long>(i);
    sum -= lpow(ell, dsum - ii * ti) *
           (lpow(ell, -di) / (1 - lpow(ell, -ii)) - lpow(ell, -ti) / (1 - lpow(ell, -ii - 1)));
  }
  const Rational deg(static_cast<unsigned long>(tower.deg_ell));
  res.value = 1 - 1 / deg + lpow(ell, tower.t - 1) * (ell - 1) / deg * sum;
  return res;
}

std::vector<SpecialCase> special_case_densities(const DivisibilityParameters& params, const TowerData& tower) {
  std::vector<SpecialCase> out;
  if (!tower.cyclic() || params.rank() == 0) return out;
  const unsigned ell = tower.ell;
  const long t = tower.t;
  const long r = static_cast<long>(params.rank());
  const Rational deg(static_cast<unsigned long>(tower.deg_ell));
  const long tau = compute_tau(params, tower);
  const bool all_zero = std::all_of(params.d.begin(), params.d.end(), [](unsigned x) { return x == 0; }) &&
                        std::all_of(params.h.begin(), params.h.end(), [](unsigned x) { return x == 0; });
  const bool h_zero = std::all_of(params.h.begin(), params.h.end(), [](unsigned x) { return x == 0; });

  if (all_zero) {
    const Rational v = 1 - 1 / deg +
                       Rational(ell - 1) / (deg * (nt::pow(Integer(ell), static_cast<unsigned long>(r + 1)) - 1) *
                                            nt::pow(Integer(ell), static_cast<unsigned long>(r * (t - 1))));
    out.push_back({"no_extra_divisibility", v});
  }
  if (r == 1) {
    const long d = params.d[0];
    if (params.h[0] > 0) {
      out.push_back({"rank1_h_positive", lpow(ell, t + d - 2 * tau + 1) / (ell + 1)});
    } else {
      const Rational v =
          1 - 1 / deg * (lpow(ell, std::min(0L, t - d)) - lpow(ell, 1 - std::abs(t - d)) / (ell + 1));
      out.push_back({"rank1_h_zero", v});
    }
  }
  if (h_zero && std::all_of(params.d.begin(), params.d.end(), [&](unsigned x) { return static_cast<long>(x) >= t; })) {
    Rational sum = 0;
    long prefix = 0;
    for (long i = 1; i <= r; ++i) {
      const long di = params.d[i - 1];
      sum += lpow(ell, prefix - i * di) * (1 / (1 - lpow(ell, -i)) - 1 / (1 - lpow(ell, -i - 1)));
      prefix += di;
    }
    out.push_back({"h_zero_d_at_least_t", 1 - lpow(ell, t - 1) * (ell - 1) / deg * sum});
  }
  if (tau == t) {
    Rational sum = 0;
    long prefix = 0;
    for (long i = 1; i <= r; ++i) {
      const long di = params.d[i - 1];
      const long ti = std::max(tau, di);
      prefix += di;
      sum += lpow(ell, prefix - i * ti) * (lpow(ell, -di) / (1 - lpow(ell, -i)) - lpow(ell, -ti) / (1 - lpow(ell, -i - 1)));
    }
    out.push_back({"tau_equals_t", 1 - lpow(ell, t - 1) * (ell - 1) / deg * sum});
  }
  return out;
}

std::optional<SpecialCase> special_case_density(const DivisibilityParameters& params, const TowerData& tower) {
  auto all = special_case_densities(params, tower);
  if (all.empty()) return std::nullopt;
  return all.front();
}

DensityResult density_thm3(const CyclotomicField& field, const std::vector<CycElement>& generators,
                           const Config& cfg) {
  if (field.contains_root_of_unity(4)) throw DomainError("density_thm3 requires zeta_4 not in K");
  if (generators.empty()) throw DomainError("density_thm3 requires rank >= 1");
  for (const auto& g : generators)
    if (as_root_of_unity(g)) throw DomainError("density_thm3 requires torsion-free generators");
  return GroupDensity(field, 2, generators, cfg).power(0);
}

DensityBracket density_bracket(const CyclotomicField& field, unsigned ell, const std::vector<CycElement>& generators,
                               unsigned terms, const Config& cfg) {
  if (terms < 1) throw DomainError("bracket needs at least one term");
  check_envelope(field, ell, generators.size(), cfg);
  const SplitGenerators split = split_torsion(generators, ell);
  if (split.ell_torsion) throw DomainError("bracket is not defined for groups with ell-torsion (density is 0)");
  const TowerDegrees degrees(field, ell, split.free, cfg);
  DensityBracket b;
  b.terms = terms;
  b.lower = 0;
  for (unsigned n = 0; n < terms; ++n) {
    b.lower += Rational(1) / degrees.degree(n, n) - Rational(1) / degrees.degree(n + 1, n);
  }
  b.upper = b.lower + Rational(1) / degrees.degree(terms, 0);
  return b;
}

Rational density_valuation_exact(const CyclotomicField& field, unsigned ell,
                                 const std::vector<CycElement>& generators, unsigned n, const Config& cfg) {
  if (n < 1) throw DomainError("valuation density needs n >= 1");
  check_envelope(field, ell, generators.size(), cfg);
  const SplitGenerators split = split_torsion(generators, ell);
  if (split.ell_torsion) {
    return density(field, ell, powered(generators, ell, n), cfg).value -
           density(field, ell, powered(generators, ell, n - 1), cfg).value;
  }
  const GroupDensity group(field, ell, split.free, cfg);
  return group.power(n).value - group.power(n - 1).value;
}

Rational density_multi_valuation(const CyclotomicField& field, unsigned ell,
                                 const std::vector<std::pair<CycElement, unsigned>>& pairs, const Config& cfg) {
  check_envelope(field, ell, pairs.size(), cfg);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].second >= 1) active.push_back(i);
  if (!cfg.allow_large && active.size() > envelope::max_inclusion_exclusion) {
    throw ResourceError("inclusion-exclusion over " + std::to_string(active.size()) + " generators exceeds the cap");
  }
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << active.size()); ++mask) {
    std::vector<CycElement> gens;
    for (const auto& [g, n] : pairs) gens.push_back(g.pow(nt::pow(Integer(ell), n)));
    int sign = 1;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (!(mask >> k & 1)) continue;
      const std::size_t i = active[k];
      gens[i] = pairs[i].first.pow(nt::pow(Integer(ell), pairs[i].second - 1));
      sign = -sign;
    }
    const Rational d = density(field, ell, gens, cfg).value;
    total += sign > 0 ? d : -d;
  }
  return total;
}

}  // namespace rdens
