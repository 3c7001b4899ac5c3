#include "rdens/fp_poly.hpp"

#include <algorithm>

#include "rdens/errors.hpp"

namespace rdens::fp {

using nt::mul_mod;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    std::uint64_t s = x + y;
    r[i] = s >= p ? s - p : s;
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = x >= y ? x - y : x + (p - y);
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  // Accumulate in 128 bits, folding before the sum could overflow.
  const unsigned __int128 limit = ~static_cast<unsigned __int128>(0) >> 2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
      if (acc[i + j] > limit) acc[i + j] %= p;
    }
  }
  Poly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % p);
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::uint64_t c, std::uint64_t p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_mod(a[i], c, p);
  trim(r);
  return r;
}

namespace {

// Long division; returns quotient, leaves the remainder in a.
Poly divide(Poly& a, const Poly& b, std::uint64_t p) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {};
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = nt::inv_mod(b.back(), p);
  Poly q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    std::uint64_t coef = mul_mod(a[k], lead_inv, p);
    q[k - db] = coef;
    if (coef == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t t = mul_mod(coef, b[i], p);
      std::uint64_t& slot = a[k - db + i];
      slot = slot >= t ? slot - t : slot + (p - t);
    }
  }
  a.resize(db);
  trim(a);
  trim(q);
  return q;
}

}  // namespace

Poly rem(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r = a;
  divide(r, b, p);
  return r;
}

Poly quo(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r = a;
  return divide(r, b, p);
}

Poly monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, nt::inv_mod(a.back(), p), p);
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  return rem(mul(a, b, p), m, p);
}

Poly pow_mod(const Poly& a, const Integer& e, const Poly& m, std::uint64_t p) {
  if (e < 0) throw DomainError("negative exponent in pow_mod");
  Poly result = rem(Poly{1}, m, p);
  Poly base = rem(a, m, p);
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul_mod(result, result, m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul_mod(result, base, m, p);
  }
  return result;
}

std::optional<Poly> inv_mod(const Poly& a, const Poly& m, std::uint64_t p) {
  Poly r0 = m, r1 = rem(a, m, p);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    Poly r = r0;
    Poly q = divide(r, r1, p);
    Poly s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) return std::nullopt;
  return rem(scale(s0, nt::inv_mod(r0[0], p), p), m, p);
}

std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = mul_mod(acc, x, p) + a[i];
    if (acc >= p) acc -= p;
  }
  return acc;
}

Poly from_integers(const std::vector<Integer>& coeffs, std::uint64_t p) {
  Poly r(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    r[i] = mpz_fdiv_ui(coeffs[i].get_mpz_t(), p);
  }
  trim(r);
  return r;
}

std::vector<Poly> equal_degree_factor(const Poly& f, unsigned factor_degree, std::uint64_t p,
                                      std::mt19937_64& rng) {
  std::vector<Poly> done;
  if (f.size() <= 1) return done;
  if (factor_degree == 0 || (f.size() - 1) % factor_degree != 0) {
    throw DomainError("polynomial degree is not a multiple of the factor degree");
  }
  const Integer half_power = (nt::pow(Integer(p), factor_degree) - 1) / 2;
  std::vector<Poly> pending{monic(f, p)};
  std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
  while (!pending.empty()) {
    Poly g = std::move(pending.back());
    pending.pop_back();
    if (g.size() - 1 == factor_degree) {
      done.push_back(std::move(g));
      continue;
    }
    for (;;) {
      Poly a(g.size() - 1);
      for (auto& c : a) c = coeff(rng);
      trim(a);
      if (a.size() <= 1) continue;
      Poly b;
      if (p == 2) {
        Poly term = a;
        b = a;
        for (unsigned i = 1; i < factor_degree; ++i) {
          term = mul_mod(term, term, g, p);
          b = add(b, term, p);
        }
      } else {
        b = sub(pow_mod(a, half_power, g, p), Poly{1}, p);
      }
      Poly h = gcd(b, g, p);
      if (h.size() > 1 && h.size() < g.size()) {
        pending.push_back(quo(g, h, p));
        pending.push_back(std::move(h));
        break;
      }
    }
  }
  std::sort(done.begin(), done.end(), [](const Poly& x, const Poly& y) {
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  });
  return done;
}

ResidueField::ResidueField(std::uint64_t p, Poly modulus) : p_(p), modulus_(monic(modulus, p)) {
  if (modulus_.size() < 2) throw DomainError("residue field modulus must have positive degree");
  group_order_ = nt::pow(Integer(p), degree()) - 1;
}

Poly ResidueField::pow(const Poly& a, const Integer& e) const {
  if (e >= 0) return pow_mod(a, e, modulus_, p_);
  Integer ne = -e;
  return pow_mod(inv(a), ne, modulus_, p_);
}

Poly ResidueField::inv(const Poly& a) const {
  auto r = inv_mod(a, modulus_, p_);
  if (!r) throw DomainError("inverting zero in a residue field");
  return *r;
}

std::vector<Poly> ResidueField::ell_roots(const Poly& c, unsigned ell, std::mt19937_64& rng) const {
  const Integer& q1 = group_order_;
  if (c.empty()) throw DomainError("ell-th root of zero requested");
  if (mpz_divisible_ui_p(q1.get_mpz_t(), ell) == 0) {
    Integer e;
    Integer ell_z(ell);
    mpz_invert(e.get_mpz_t(), ell_z.get_mpz_t(), q1.get_mpz_t());
    return {pow(c, e)};
  }
  const Integer cofactor = q1 / ell;
  if (!is_one(pow(c, cofactor))) return {};

  unsigned s = 0;
  Integer t = q1;
  while (mpz_divisible_ui_p(t.get_mpz_t(), ell)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), ell);
    ++s;
  }
  // A non-residue gives a generator of the ell-Sylow subgroup.
  std::uniform_int_distribution<std::uint64_t> coeff(0, p_ - 1);
  Poly gen;
  for (;;) {
    Poly r(degree());
    for (auto& x : r) x = coeff(rng);
    trim(r);
    if (r.empty()) continue;
    if (!is_one(pow(r, cofactor))) {
      gen = pow(r, t);
      break;
    }
  }
  const Integer ell_s1 = nt::pow(Integer(ell), s - 1);
  const Poly gamma = pow(gen, ell_s1);
  std::vector<Poly> gamma_powers{Poly{1}};
  for (unsigned d = 1; d < ell; ++d) gamma_powers.push_back(mul(gamma_powers.back(), gamma));

  const Poly ct = pow(c, t);
  const Poly gen_inv = inv(gen);
  Integer log = 0;
  Integer ell_k = 1;
  for (unsigned k = 0; k < s; ++k) {
    Poly h = mul(pow(gen_inv, log), ct);
    h = pow(h, nt::pow(Integer(ell), s - 1 - k));
    auto it = std::find(gamma_powers.begin(), gamma_powers.end(), h);
    if (it == gamma_powers.end()) throw Error("discrete logarithm failed in residue field");
    log += Integer(static_cast<unsigned long>(it - gamma_powers.begin())) * ell_k;
    ell_k *= ell;
  }
  const Poly x0 = pow(gen, Integer(log / ell));
  Integer g, alpha, beta;
  Integer ell_z(ell);
  mpz_gcdext(g.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t(), t.get_mpz_t(), ell_z.get_mpz_t());
  const Poly root = mul(pow(x0, alpha), pow(c, beta));

  std::vector<Poly> roots;
  for (const Poly& w : gamma_powers) roots.push_back(mul(root, w));
  return roots;
}

}  // namespace rdens::fp
