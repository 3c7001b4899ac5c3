#include "rdens/divisibility.hpp"

#include <algorithm>
#include <numeric>

#include "rdens/errors.hpp"
#include "rdens/power_oracle.hpp"

namespace rdens {

namespace {

constexpr std::size_t kMaxCoefficientBits = 1 << 16;

void require_non_torsion(const CycElement& a) {
  if (a.is_zero()) throw DomainError("zero is not allowed as a group element");
  if (as_root_of_unity(a)) throw DomainError("root of unity " + format_element(a) + " is not allowed here");
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("basis change exponent overflow");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("basis change exponent overflow");
  return r;
}

long long ipow(long long base, unsigned e) {
  long long r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

long long inverse_mod(long long a, long long m) {
  a %= m;
  for (long long x = 1; x < m; ++x)
    if ((a * x) % m == 1) return x;
  throw DomainError("not invertible");
}

CycElement product(const std::vector<CycElement>& elements, const std::vector<long long>& exponents) {
  CycElement r(elements.front().field(), Rational(1));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (exponents[i] != 0) r *= elements[i].pow(static_cast<long>(exponents[i]));
  }
  return r;
}

// Pairwise coprime integers > 1 whose products give every input exactly.
std::vector<Integer> coprime_base(const std::vector<Integer>& numbers) {
  std::vector<Integer> base;
  for (const auto& n : numbers) {
    std::vector<Integer> stack{n};
    while (!stack.empty()) {
      Integer x = stack.back();
      stack.pop_back();
      if (x <= 1) continue;
      bool split = false;
      for (std::size_t k = 0; k < base.size(); ++k) {
        Integer g = gcd(x, base[k]);
        if (g == 1) continue;
        Integer e = base[k];
        base.erase(base.begin() + static_cast<long>(k));
        stack.push_back(g);
        stack.push_back(e / g);
        stack.push_back(x / g);
        split = true;
        break;
      }
      if (!split) base.push_back(x);
    }
  }
  return base;
}

long valuation_at(Integer n, const Integer& c) {
  long v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), c.get_mpz_t())) {
    n /= c;
    ++v;
  }
  return v;
}

}  // namespace

bool is_strongly_indivisible(const CycElement& a, unsigned ell, const Config& cfg) {
  require_non_torsion(a);
  const TorsionInfo tors = torsion_info(a.field(), ell);
  // Twists by ell-th powers of roots of unity do not change the answer.
  const unsigned twists = tors.ell_valuation == 0 ? 1 : ell;
  CycElement x = a;
  for (unsigned k = 0; k < twists; ++k) {
    if (lth_root(x, ell, cfg)) return false;
    x *= tors.ell_generator;
  }
  return true;
}

std::optional<std::vector<unsigned>> strong_independence_witness(const std::vector<CycElement>& elements,
                                                                 unsigned ell, const Config& cfg) {
  const std::size_t r = elements.size();
  if (r == 0) return std::nullopt;
  for (const auto& e : elements) require_non_torsion(e);
  Integer vectors = nt::pow(Integer(ell), r);
  if (!cfg.allow_large && vectors > envelope::max_exponent_vectors) {
    throw ResourceError("independence scan needs " + vectors.get_str() + " exponent vectors");
  }
  // Only vectors whose first nonzero entry is 1: scaling by a unit mod ell
  // preserves the property, and the lexicographically smallest witness
  // always has this form.
  std::vector<unsigned> x(r, 0);
  for (;;) {
    std::size_t k = r;
    while (k > 0) {
      --k;
      if (++x[k] < ell) break;
      x[k] = 0;
      if (k == 0) return std::nullopt;
    }
    const auto first = std::find_if(x.begin(), x.end(), [](unsigned v) { return v != 0; });
    if (first == x.end() || *first != 1) continue;
    std::vector<long long> e(x.begin(), x.end());
    const CycElement p = product(elements, e);
    if (as_root_of_unity(p) || !is_strongly_indivisible(p, ell, cfg)) return x;
  }
}

Decomposition decompose(const CycElement& a, unsigned ell, const Config& cfg) {
  require_non_torsion(a);
  const TorsionInfo tors = torsion_info(a.field(), ell);
  const std::uint64_t count = nt::checked_pow(ell, tors.ell_valuation);
  // Maximize the depth over all twists; ties keep the earliest twist.
  std::optional<PowerDepth> best;
  std::uint64_t best_k = 0;
  CycElement twist(a.field(), Rational(1));
  for (std::uint64_t k = 0; k < count; ++k) {
    PowerDepth pd = power_depth(a * twist, ell, cfg);
    if (!best || pd.depth > best->depth) {
      best = pd;
      best_k = k;
    }
    twist *= tors.ell_generator;
  }
  Decomposition out{best->root, best->depth, tors.ell_generator.pow(-static_cast<long>(best_k)), 0};
  const std::uint64_t order = *as_root_of_unity(out.torsion);
  out.torsion_exponent = nt::valuation(order, ell);
  return out;
}

DivisibilityParameters extract_parameters(const CyclotomicField& field, unsigned ell,
                                          const std::vector<CycElement>& basis, const Config& cfg) {
  const std::size_t r = basis.size();
  for (const auto& b : basis) {
    if (!(b.field() == field)) throw DomainError("generator lives in a different field");
    require_non_torsion(b);
  }
  DivisibilityParameters out{field, ell, {}, {}, {}, {}, {}, false, 0};
  if (r == 0) return out;
  const auto relations = norm_relations(basis);
  out.independence_certified = relations.empty();
  // A relation among the norms is a unit; when that unit is a root of unity
  // the input is certainly dependent. Non-torsion units prove nothing.
  for (const auto& y : relations) {
    if (as_root_of_unity(product(basis, y))) throw DependenceError("generators are multiplicatively dependent");
  }

  std::vector<CycElement> b = basis;
  IntMatrix rows(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i) rows[i][i] = 1;
  std::vector<Decomposition> dec;
  for (const auto& x : b) dec.push_back(decompose(x, ell, cfg));

  unsigned max_depth = 0;
  for (const auto& e : dec) max_depth = std::max(max_depth, e.depth);
  const unsigned z = torsion_info(field, ell).ell_valuation;
  const std::size_t cap = r * (64 + z + max_depth);

  for (std::size_t round = 0;; ++round) {
    std::vector<CycElement> roots;
    for (const auto& e : dec) roots.push_back(e.root);
    const auto witness = strong_independence_witness(roots, ell, cfg);
    if (!witness) break;
    if (round >= cap) throw DependenceError("generators appear multiplicatively dependent");
    ++out.rounds;

    std::size_t j = r;
    for (std::size_t i = 0; i < r; ++i) {
      if ((*witness)[i] != 0 && (j == r || dec[i].depth > dec[j].depth)) j = i;
    }
    const long long inv = inverse_mod((*witness)[j], ell);
    std::vector<long long> x(r, 0);
    for (std::size_t i = 0; i < r; ++i) x[i] = ((*witness)[i] * inv) % ell;
    x[j] = 1;

    std::vector<long long> exps(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      if (x[i] != 0) exps[i] = checked_mul(x[i], ipow(ell, dec[j].depth - dec[i].depth));
    }
    std::vector<long long> row(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) row[k] = checked_add(row[k], checked_mul(exps[i], rows[i][k]));
    }
    b[j] = product(b, exps);
    for (const auto& c : b[j].coeffs()) {
      if (mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2) > kMaxCoefficientBits) {
        throw DependenceError("generators appear multiplicatively dependent (coefficient growth)");
      }
    }
    rows[j] = row;
    require_non_torsion(b[j]);
    dec[j] = decompose(b[j], ell, cfg);
  }

  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return dec[p].depth < dec[q].depth; });
  for (std::size_t i : order) {
    out.d.push_back(dec[i].depth);
    out.h.push_back(dec[i].depth == 0 ? 0 : dec[i].torsion_exponent);
    out.B.push_back(dec[i].depth == 0 ? b[i] : dec[i].root);
    out.zeta.push_back(dec[i].depth == 0 ? CycElement(field, Rational(1)) : dec[i].torsion);
    out.basis_change.push_back(rows[i]);
  }
  return out;
}

QuotientStructure quotient_structure(const DivisibilityParameters& params, unsigned z, unsigned n) {
  QuotientStructure q;
  q.n = n;
  int top = std::max(static_cast<int>(z) - static_cast<int>(n), 0);
  unsigned sum = 0;
  for (std::size_t i = 0; i < params.rank(); ++i) {
    const unsigned delta = n > params.d[i] ? n - params.d[i] : 0;
    q.delta.push_back(delta);
    sum += delta;
    top = std::max(top, static_cast<int>(params.h[i]) - static_cast<int>(delta));
  }
  q.vH = static_cast<unsigned>(top + std::min(static_cast<int>(n) - static_cast<int>(z), 0));
  q.total_valuation = q.vH + sum;
  return q;
}

DivisibilityParameters power_transform(const DivisibilityParameters& params, unsigned n) {
  DivisibilityParameters out = params;
  const long step = static_cast<long>(nt::checked_pow(params.ell, n));
  for (std::size_t i = 0; i < out.rank(); ++i) {
    out.d[i] += n;
    out.h[i] = out.h[i] > n ? out.h[i] - n : 0;
    out.zeta[i] = out.zeta[i].pow(step);
  }
  return out;
}

std::vector<std::vector<long long>> norm_relations(const std::vector<CycElement>& elements) {
  const std::size_t r = elements.size();
  if (r == 0) return {};
  std::vector<Rational> norms;
  std::vector<Integer> numbers;
  for (const auto& e : elements) {
    norms.push_back(norm(e));
    numbers.push_back(abs(norms.back().get_num()));
    numbers.push_back(norms.back().get_den());
  }
  const auto base = coprime_base(numbers);
  // Rows indexed by base elements, columns by generators; the kernel gives
  // the exponent vectors whose product has norm +-1.
  const std::size_t rows = base.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(r));
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      m[k][i] = valuation_at(abs(norms[i].get_num()), base[k]) - valuation_at(norms[i].get_den(), base[k]);
    }
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < r && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const Rational inv = 1 / m[rank][col];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == rank || m[k][col] == 0) continue;
      const Rational f = m[k][col];
      for (std::size_t i = 0; i < r; ++i) m[k][i] -= f * m[rank][i];
    }
    pivots.push_back(col);
    ++rank;
  }
  std::vector<std::vector<long long>> kernel;
  for (std::size_t free = 0; free < r; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> y(r, Rational(0));
    y[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) y[pivots[k]] = -m[k][free];
    Integer den = 1;
    for (const auto& v : y) den = lcm(den, Integer(v.get_den()));
    std::vector<long long> row;
    for (const auto& v : y) {
      const Integer x = v.get_num() * (den / v.get_den());
      if (!x.fits_slong_p()) throw ResourceError("norm relation exponent overflow");
      row.push_back(x.get_si());
    }
    kernel.push_back(std::move(row));
  }
  return kernel;
}

bool norms_independent(const std::vector<CycElement>& elements) { return norm_relations(elements).empty(); }

Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  // Fraction-free Bareiss elimination.
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool reconstructs_basis(const DivisibilityParameters& params, const std::vector<CycElement>& basis) {
  if (abs(determinant(params.basis_change)) != 1) return false;
  for (std::size_t i = 0; i < params.rank(); ++i) {
    const CycElement lhs = params.B[i].pow(nt::pow(Integer(params.ell), params.d[i])) * params.zeta[i];
    if (!(lhs == product(basis, params.basis_change[i]))) return false;
    const auto order = as_root_of_unity(params.zeta[i]);
    if (!order || *order != nt::checked_pow(params.ell, params.h[i])) return false;
  }
  return true;
}

}  // namespace rdens
