#include "rdens/power_oracle.hpp"

#include <algorithm>
#include <numeric>

#include "rdens/detail/field_data.hpp"
#include "rdens/detail/intpoly.hpp"
#include "rdens/errors.hpp"
#include "rdens/fp_poly.hpp"

namespace rdens {

namespace {

using detail::IntPoly;

constexpr std::uint64_t kPrimeSearchStart = (1ULL << 20) + 7;
constexpr std::size_t kAuxPrimeCount = 12;
constexpr std::size_t kSplitPrimeCount = 16;

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed ^ (salt + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  return x;
}

void check_ell(unsigned ell) {
  if (ell < 2 || !nt::is_prime(ell)) throw DomainError("ell must be a prime number, got " + std::to_string(ell));
}

// Tr(zeta_w^m) is the Ramanujan sum c_w(m).
Integer ramanujan_sum(std::uint64_t w, std::int64_t m) {
  const auto mm = static_cast<std::uint64_t>(((m % static_cast<std::int64_t>(w)) + static_cast<std::int64_t>(w)) %
                                             static_cast<std::int64_t>(w));
  const std::uint64_t g = std::gcd(w, mm);
  const std::uint64_t n = w / g;
  return Integer(nt::moebius(n)) * Integer(static_cast<unsigned long>(nt::euler_phi(w) / nt::euler_phi(n)));
}

// Coefficients c of an integral y satisfy T c = (Tr(y zeta^-k))_k with T the
// trace Gram matrix, and |Tr(y zeta^-k)| <= phi * max |sigma(y)|.
const Rational& height_factor(const CyclotomicField& field) {
  const auto& data = field.data();
  std::call_once(data.height_once, [&] {
    const std::size_t n = field.degree();
    const std::uint64_t w = field.conductor();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        m[k][i] = ramanujan_sum(w, static_cast<std::int64_t>(i) - static_cast<std::int64_t>(k));
      }
      m[k][n + k] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (m[pivot][col] == 0) ++pivot;
      std::swap(m[pivot], m[col]);
      const Rational inv = 1 / m[col][col];
      for (auto& x : m[col]) x *= inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        const Rational f = m[r][col];
        for (std::size_t k = col; k < 2 * n; ++k) m[r][k] -= f * m[col][k];
      }
    }
    Rational best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational row = 0;
      for (std::size_t k = 0; k < n; ++k) row += abs(m[i][n + k]);
      best = std::max(best, row);
    }
    data.height_factor = best * Integer(static_cast<unsigned long>(n));
  });
  return data.height_factor;
}

detail::AuxPrime build_aux_prime(const CyclotomicField& field, std::uint64_t p, unsigned f) {
  detail::AuxPrime aux;
  aux.p = p;
  aux.residue_degree = f;
  aux.modulus = fp::from_integers(field.modulus(), p);
  std::mt19937_64 rng(mix(0x51ed, p));
  aux.factors = fp::equal_degree_factor(aux.modulus, f, p, rng);
  for (const auto& g : aux.factors) {
    const fp::Poly cof = fp::quo(aux.modulus, g, p);
    const auto inv = fp::inv_mod(cof, g, p);
    if (!inv) throw Error("CRT idempotent construction failed");
    aux.idempotents.push_back(fp::mul_mod(cof, *inv, aux.modulus, p));
  }
  return aux;
}

// Primes whose residue degree is the exponent of (Z/w)^x, so Phi_w splits
// into as few factors as possible.
const std::vector<detail::AuxPrime>& aux_primes(const CyclotomicField& field) {
  const auto& data = field.data();
  std::lock_guard lock(data.aux_mutex);
  if (data.aux_primes.empty()) {
    const std::uint64_t w = field.conductor();
    const std::uint64_t lambda = nt::carmichael(w);
    for (std::uint64_t p = kPrimeSearchStart; data.aux_primes.size() < kAuxPrimeCount; p += 2) {
      if (w % p == 0 || !nt::is_prime(p)) continue;
      if (nt::multiplicative_order(p % w, w) != lambda) continue;
      data.aux_primes.push_back(build_aux_prime(field, p, static_cast<unsigned>(lambda)));
    }
  }
  return data.aux_primes;
}

const std::vector<detail::SplitPrime>& split_primes(const CyclotomicField& field, unsigned ell) {
  const auto& data = field.data();
  std::lock_guard lock(data.aux_mutex);
  auto& list = data.split_primes[ell];
  if (list.empty()) {
    const std::uint64_t w = field.conductor();
    const std::uint64_t L = std::lcm(w, static_cast<std::uint64_t>(ell));
    const auto w_factors = nt::factor(w);
    for (std::uint64_t p = (kPrimeSearchStart / L + 1) * L + 1; list.size() < kSplitPrimeCount; p += L) {
      if (!nt::is_prime(p)) continue;
      std::uint64_t root = 1;
      for (std::uint64_t h = 2;; ++h) {
        root = nt::pow_mod(h, (p - 1) / w, p);
        bool primitive = true;
        for (auto [q, e] : w_factors)
          if (nt::pow_mod(root, w / q, p) == 1) primitive = false;
        if (primitive) break;
      }
      detail::SplitPrime sp;
      sp.p = p;
      for (std::uint64_t k = 1; k <= w; ++k) {
        if (std::gcd(k, w) == 1) sp.embeddings.push_back(nt::pow_mod(root, k, p));
      }
      list.push_back(std::move(sp));
    }
  }
  return list;
}

std::optional<CycElement> rational_root(const CycElement& a, unsigned ell) {
  const Rational& v = a.coeffs()[0];
  if (v < 0 && ell == 2) return std::nullopt;
  Integer num = abs(v.get_num());
  Integer den = v.get_den();
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), ell)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), ell)) return std::nullopt;
  Rational r(rn, rd);
  if (v < 0) r = -r;
  return CycElement(a.field(), r);
}

IntPoly to_int(const fp::Poly& a, std::size_t n) {
  IntPoly r(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

IntPoly mul_mod_ring(const IntPoly& a, const IntPoly& b, const std::vector<Integer>& phi, const Integer& m) {
  IntPoly r = detail::mul_reduce(a, b, phi);
  detail::mod_coeffs(r, m);
  return r;
}

IntPoly pow_ring(const IntPoly& a, unsigned e, const std::vector<Integer>& phi, const Integer& m) {
  IntPoly r(phi.size() - 1);
  r[0] = 1;
  for (unsigned i = 0; i < e; ++i) r = mul_mod_ring(r, a, phi, m);
  return r;
}

IntPoly scale_sub(const IntPoly& a, const IntPoly& b, const Integer& m) {
  IntPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  detail::mod_coeffs(r, m);
  return r;
}

// Newton iteration for y^ell = A in (Z/p^k)[x]/(Phi) from a simple root mod p.
IntPoly newton_lift(const fp::Poly& start, const IntPoly& A, unsigned ell, const detail::AuxPrime& aux,
                    const std::vector<Integer>& phi, const Integer& target, Integer& modulus) {
  const std::uint64_t p = aux.p;
  const std::size_t n = phi.size() - 1;
  const fp::Poly deriv = fp::scale(fp::pow_mod(start, Integer(ell - 1), aux.modulus, p), ell % p, p);
  const auto inv = fp::inv_mod(deriv, aux.modulus, p);
  if (!inv) throw Error("derivative is not a unit during Hensel lifting");
  IntPoly y = to_int(start, n);
  IntPoly z = to_int(*inv, n);
  modulus = p;
  while (modulus <= target) {
    const Integer m2 = modulus * modulus;
    IntPoly fy = scale_sub(pow_ring(y, ell, phi, m2), A, m2);
    y = scale_sub(y, mul_mod_ring(fy, z, phi, m2), m2);
    if (m2 <= target) {
      IntPoly u = pow_ring(y, ell - 1, phi, m2);
      for (auto& c : u) c *= ell;
      IntPoly uz = mul_mod_ring(u, z, phi, m2);
      IntPoly two_minus(n);
      two_minus[0] = 2;
      z = mul_mod_ring(z, scale_sub(two_minus, uz, m2), phi, m2);
    }
    modulus = m2;
  }
  return y;
}

bool exact_power_equals(const IntPoly& y, unsigned ell, const IntPoly& A, const std::vector<Integer>& phi) {
  IntPoly r = y;
  for (unsigned i = 1; i < ell; ++i) r = detail::mul_reduce(r, y, phi);
  return r == A;
}

// Integral y with y^ell = A, searched among all lifts of residue roots.
std::optional<IntPoly> integral_root(const CyclotomicField& field, const IntPoly& A, unsigned ell,
                                     const Config& cfg) {
  const auto& phi = field.modulus();
  const std::size_t n = field.degree();
  const Integer bound = root_height_bound(field, A, ell);
  const Integer target = 2 * bound;
  const bool roots_differ_by_torsion = field.contains_root_of_unity(ell);

  // Pick an auxiliary prime where A is a unit; prefer unique residue roots.
  const auto& candidates = aux_primes(field);
  const detail::AuxPrime* chosen = nullptr;
  std::vector<fp::Poly> residues;
  for (int pass = 0; pass < 2 && !chosen; ++pass) {
    for (const auto& aux : candidates) {
      if (aux.p == ell) continue;
      const Integer q1 = nt::pow(Integer(static_cast<unsigned long>(aux.p)), aux.residue_degree) - 1;
      const bool unique = !mpz_divisible_ui_p(q1.get_mpz_t(), ell);
      if (pass == 0 && !unique && !roots_differ_by_torsion) continue;
      const fp::Poly image = fp::from_integers(A, aux.p);
      std::vector<fp::Poly> parts;
      bool unit = true;
      for (const auto& g : aux.factors) {
        parts.push_back(fp::rem(image, g, aux.p));
        if (parts.back().empty()) unit = false;
      }
      if (!unit) continue;
      chosen = &aux;
      residues = std::move(parts);
      break;
    }
  }
  if (!chosen) {
    // The norm of A is divisible by every cached prime; extend the search.
    const std::uint64_t w = field.conductor();
    const std::uint64_t lambda = nt::carmichael(w);
    static thread_local std::vector<detail::AuxPrime> extra;
    std::uint64_t p = candidates.back().p + 2;
    for (;; p += 2) {
      if (w % p == 0 || p == ell || !nt::is_prime(p)) continue;
      if (nt::multiplicative_order(p % w, w) != lambda) continue;
      detail::AuxPrime aux = build_aux_prime(field, p, static_cast<unsigned>(lambda));
      const fp::Poly image = fp::from_integers(A, p);
      std::vector<fp::Poly> parts;
      bool unit = true;
      for (const auto& g : aux.factors) {
        parts.push_back(fp::rem(image, g, p));
        if (parts.back().empty()) unit = false;
      }
      if (!unit) continue;
      extra.assign(1, std::move(aux));
      chosen = &extra.front();
      residues = std::move(parts);
      break;
    }
  }

  const detail::AuxPrime& aux = *chosen;
  std::mt19937_64 rng(mix(cfg.seed, aux.p));
  std::vector<std::vector<fp::Poly>> choices;
  for (std::size_t j = 0; j < aux.factors.size(); ++j) {
    fp::ResidueField rf(aux.p, aux.factors[j]);
    auto roots = rf.ell_roots(residues[j], ell, rng);
    if (roots.empty()) return std::nullopt;
    choices.push_back(std::move(roots));
  }
  // Roots differ by ell-th roots of unity, which are distinct in every
  // residue field, so one choice in the first factor is enough.
  if (roots_differ_by_torsion) choices[0].resize(1);

  std::vector<std::size_t> index(choices.size(), 0);
  for (;;) {
    fp::Poly start;
    for (std::size_t j = 0; j < choices.size(); ++j) {
      start = fp::add(start, fp::mul_mod(aux.idempotents[j], choices[j][index[j]], aux.modulus, aux.p), aux.p);
    }
    Integer modulus;
    IntPoly y = newton_lift(start, A, ell, aux, phi, target, modulus);
    detail::symmetric_coeffs(y, modulus);
    bool small = true;
    for (const auto& c : y)
      if (abs(c) > bound) small = false;
    if (small && exact_power_equals(y, ell, A, phi)) return y;

    std::size_t j = 0;
    while (j < index.size() && ++index[j] == choices[j].size()) index[j++] = 0;
    if (j == index.size()) break;
  }
  (void)n;
  return std::nullopt;
}

}  // namespace

Integer root_height_bound(const CyclotomicField& field, const std::vector<Integer>& integral, unsigned ell) {
  Integer sum = 0;
  for (const auto& c : integral) sum += abs(c);
  const Integer m = nt::root_ceil(sum, ell);
  const Rational raw = height_factor(field) * m;
  Integer h;
  mpz_cdiv_q(h.get_mpz_t(), raw.get_num_mpz_t(), raw.get_den_mpz_t());
  return h;
}

bool residue_pretest_rejects(const CycElement& a, unsigned ell, const Config& cfg) {
  check_ell(ell);
  if (a.is_zero()) throw DomainError("ell-th root of zero requested");
  const auto& primes = split_primes(a.field(), ell);
  const Integer q = a.denominator();
  const auto num = a.integral_numerator(q);
  const std::size_t offset = mix(cfg.seed, ell) % primes.size();
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.pretest_primes, 0)), primes.size());
  for (std::size_t s = 0; s < count; ++s) {
    const auto& sp = primes[(offset + s) % primes.size()];
    const std::uint64_t p = sp.p;
    const std::uint64_t qmod = mpz_fdiv_ui(q.get_mpz_t(), p);
    if (qmod == 0) continue;
    const fp::Poly image = fp::from_integers(num, p);
    const std::uint64_t qinv = nt::inv_mod(qmod, p);
    for (std::uint64_t root : sp.embeddings) {
      const std::uint64_t v = nt::mul_mod(fp::eval(image, root, p), qinv, p);
      if (v == 0) continue;
      if (nt::pow_mod(v, (p - 1) / ell, p) != 1) return true;
    }
  }
  return false;
}

std::optional<CycElement> lth_root(const CycElement& a, unsigned ell, const Config& cfg) {
  check_ell(ell);
  if (a.is_zero()) throw DomainError("ell-th root of zero requested");
  const CyclotomicField& field = a.field();
  if (field.degree() == 1) return rational_root(a, ell);
  if (cfg.pretest_primes > 0 && residue_pretest_rejects(a, ell, cfg)) return std::nullopt;

  // With q the common denominator, (q b)^ell = a q^ell is integral, and so
  // is q b because Z[zeta_w] is integrally closed.
  const Integer q = a.denominator();
  IntPoly A = a.integral_numerator(q);
  const Integer scale = nt::pow(q, ell - 1);
  for (auto& c : A) c *= scale;
  auto y = integral_root(field, A, ell, cfg);
  if (!y) return std::nullopt;
  std::vector<Rational> coeffs(y->size());
  for (std::size_t i = 0; i < y->size(); ++i) {
    coeffs[i] = Rational((*y)[i], q);
    coeffs[i].canonicalize();
  }
  return CycElement(field, std::move(coeffs));
}

std::vector<CycElement> all_lth_roots(const CycElement& a, unsigned ell, const Config& cfg) {
  auto root = lth_root(a, ell, cfg);
  if (!root) return {};
  const CyclotomicField& field = a.field();
  if (!field.contains_root_of_unity(ell)) return {*root};
  const CycElement omega = torsion_generator(field).pow(static_cast<long>(field.torsion_order() / ell));
  std::vector<CycElement> out{*root};
  for (unsigned k = 1; k < ell; ++k) out.push_back(out.back() * omega);
  return out;
}

namespace {

// All ell-th roots of all elements of the level, without repetition.
std::vector<CycElement> next_level(const std::vector<CycElement>& level, unsigned ell, const Config& cfg) {
  std::vector<CycElement> out;
  for (const auto& x : level) {
    for (auto& r : all_lth_roots(x, ell, cfg)) {
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

bool is_power(const CycElement& a, unsigned ell, unsigned n, const Config& cfg) {
  check_ell(ell);
  std::vector<CycElement> level{a};
  for (unsigned k = 0; k < n; ++k) {
    level = next_level(level, ell, cfg);
    if (level.empty()) return false;
  }
  return true;
}

PowerDepth power_depth(const CycElement& a, unsigned ell, const Config& cfg) {
  check_ell(ell);
  if (a.is_zero()) throw DomainError("power depth of zero");
  if (as_root_of_unity(a)) throw DomainError("power depth of a root of unity is unbounded");
  std::vector<CycElement> level{a};
  for (unsigned depth = 0; depth < 4096; ++depth) {
    auto next = next_level(level, ell, cfg);
    if (next.empty()) return PowerDepth{depth, level.front()};
    level = std::move(next);
  }
  throw ResourceError("power depth exceeds 4096");
}

}  // namespace rdens
