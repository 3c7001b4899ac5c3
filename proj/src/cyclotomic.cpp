#include "rdens/cyclotomic.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "rdens/detail/field_data.hpp"
#include "rdens/detail/intpoly.hpp"
#include "rdens/errors.hpp"

namespace rdens {

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t normalize_conductor(std::uint64_t w) {
  if (w == 0) throw DomainError("conductor must be positive");
  return w % 4 == 2 ? w / 2 : w;
}

std::shared_ptr<const detail::FieldData> field_data(std::uint64_t w) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const detail::FieldData>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[w];
  if (!slot) {
    auto data = std::make_shared<detail::FieldData>();
    data->conductor = w;
    data->modulus = cyclotomic_polynomial(w);
    data->degree = data->modulus.size() - 1;
    data->torsion_order = w % 2 == 0 ? w : 2 * w;
    slot = std::move(data);
  }
  return slot;
}

// Reduce a rational polynomial modulo the monic Phi_w, padding to phi entries.
void reduce_rational(RatPoly& a, const std::vector<Integer>& modulus) {
  const std::size_t n = modulus.size() - 1;
  for (std::size_t k = a.size(); k-- > n;) {
    if (a[k] == 0) continue;
    const Rational c = a[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (modulus[i] != 0) a[k - n + i] -= c * modulus[i];
    }
  }
  a.resize(n);
}

std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  RatPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  const Rational lead_inv = 1 / b.back();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    Rational c = a[k] * lead_inv;
    q[k - b.size() + 1] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) a[k - b.size() + 1 + i] -= c * b[i];
  }
  a.resize(b.size() - 1);
  trim(a);
  return {q, a};
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(std::uint64_t n) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::vector<Integer>> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  if (n == 0) throw DomainError("cyclotomic polynomial of order zero");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  detail::IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d) continue;
    const auto phi_d = cyclotomic_polynomial(d);
    // Exact division by a monic polynomial.
    const std::size_t db = phi_d.size() - 1;
    detail::IntPoly q(p.size() - db, 0);
    for (std::size_t k = p.size(); k-- > db;) {
      const Integer c = p[k];
      q[k - db] = c;
      if (c == 0) continue;
      for (std::size_t i = 0; i <= db; ++i) p[k - db + i] -= c * phi_d[i];
    }
    p = std::move(q);
  }
  std::lock_guard lock(mutex);
  memo.emplace(n, p);
  return p;
}

CyclotomicField::CyclotomicField(std::uint64_t w) : data_(field_data(normalize_conductor(w))) {}

std::uint64_t CyclotomicField::conductor() const { return data_->conductor; }
std::size_t CyclotomicField::degree() const { return data_->degree; }
const std::vector<Integer>& CyclotomicField::modulus() const { return data_->modulus; }
std::uint64_t CyclotomicField::torsion_order() const { return data_->torsion_order; }

CyclotomicField make_field(std::uint64_t w) { return CyclotomicField(w); }

CycElement::CycElement(CyclotomicField field)
    : field_(std::move(field)), coeffs_(field_.degree(), Rational(0)) {}

CycElement::CycElement(CyclotomicField field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < field_.degree()) coeffs_.resize(field_.degree(), Rational(0));
  reduce_rational(coeffs_, field_.modulus());
}

CycElement::CycElement(CyclotomicField field, const Rational& value) : CycElement(std::move(field)) {
  coeffs_[0] = value;
}

CycElement CycElement::root_of_unity(const CyclotomicField& field, long k) {
  const auto w = static_cast<long>(field.conductor());
  long e = ((k % w) + w) % w;
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
  c[static_cast<std::size_t>(e)] = 1;
  return CycElement(field, std::move(c));
}

bool CycElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycElement::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycElement::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

CycElement CycElement::operator-() const {
  CycElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycElement& CycElement::operator+=(const CycElement& o) {
  if (!(field_ == o.field_)) throw DomainError("elements of different fields");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycElement& CycElement::operator-=(const CycElement& o) {
  if (!(field_ == o.field_)) throw DomainError("elements of different fields");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycElement& CycElement::operator*=(const CycElement& o) {
  if (!(field_ == o.field_)) throw DomainError("elements of different fields");
  // Multiply integral numerators, divide once.
  const Integer qa = denominator(), qb = o.denominator();
  detail::IntPoly prod = detail::mul_reduce(integral_numerator(qa), o.integral_numerator(qb), field_.modulus());
  const Integer q = qa * qb;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] = Rational(prod[i], q);
    coeffs_[i].canonicalize();
  }
  return *this;
}

CycElement& CycElement::operator/=(const CycElement& o) { return *this *= o.inverse(); }

CycElement CycElement::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  // s * a + t * Phi = g with g a nonzero constant.
  RatPoly phi(field_.modulus().begin(), field_.modulus().end());
  RatPoly r0 = phi, r1 = coeffs_;
  trim(r1);
  RatPoly s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw Error("inverse failed: element shares a factor with the modulus");
  const Rational scale = 1 / r0[0];
  for (auto& c : s0) c *= scale;
  return CycElement(field_, std::move(s0));
}

CycElement CycElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycElement result(field_, Rational(1));
  CycElement base = *this;
  auto k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

CycElement CycElement::pow(const Integer& e) const {
  if (e.fits_slong_p()) return pow(e.get_si());
  throw ResourceError("exponent too large for element powering");
}

Integer CycElement::denominator() const {
  Integer q = 1;
  for (const auto& c : coeffs_) {
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
  }
  return q;
}

std::vector<Integer> CycElement::integral_numerator(const Integer& q) const {
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = coeffs_[i].get_num() * (q / coeffs_[i].get_den());
  }
  return out;
}

CycElement embed(const CycElement& x, const CyclotomicField& target) {
  const std::uint64_t w = x.field().conductor();
  const std::uint64_t wt = target.conductor();
  if (wt % w != 0) {
    throw DomainError("cannot embed Q(zeta_" + std::to_string(w) + ") into Q(zeta_" + std::to_string(wt) + ")");
  }
  const std::uint64_t step = wt / w;
  std::vector<Rational> c((x.coeffs().size() - 1) * step + 1, Rational(0));
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) c[i * step] = x.coeffs()[i];
  return CycElement(target, std::move(c));
}

Rational norm(const CycElement& x) {
  // Determinant of multiplication by x on the power basis.
  const std::size_t n = x.field().degree();
  std::vector<std::vector<Rational>> m(n);
  CycElement basis = CycElement(x.field(), Rational(1));
  const CycElement zeta = CycElement::root_of_unity(x.field(), 1);
  for (std::size_t j = 0; j < n; ++j) {
    m[j] = (x * basis).coeffs();
    basis *= zeta;
  }
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

CycElement torsion_generator(const CyclotomicField& field) {
  const std::uint64_t w = field.conductor();
  if (w % 2 == 0) return CycElement::root_of_unity(field, 1);
  return -CycElement::root_of_unity(field, static_cast<long>((w + 1) / 2));
}

TorsionInfo torsion_info(const CyclotomicField& field, unsigned ell) {
  if (ell < 2 || !nt::is_prime(ell)) throw DomainError("ell must be prime");
  const std::uint64_t W = field.torsion_order();
  const unsigned z = nt::valuation(W, ell);
  const std::uint64_t ell_z = nt::checked_pow(ell, z);
  return TorsionInfo{W, z, torsion_generator(field).pow(static_cast<long>(W / ell_z))};
}

std::optional<std::uint64_t> as_root_of_unity(const CycElement& x) {
  if (x.is_zero()) throw DomainError("zero is not a unit");
  const auto& data = x.field().data();
  std::call_once(data.torsion_once, [&] {
    const CycElement g = torsion_generator(x.field());
    CycElement power(x.field(), Rational(1));
    for (std::uint64_t j = 0; j < data.torsion_order; ++j) {
      data.torsion_powers.push_back(power.coeffs());
      power *= g;
    }
  });
  // Roots of unity are integral.
  for (const auto& c : x.coeffs())
    if (c.get_den() != 1) return std::nullopt;
  const std::uint64_t W = data.torsion_order;
  for (std::uint64_t j = 0; j < W; ++j) {
    if (data.torsion_powers[j] == x.coeffs()) return W / std::gcd(j, W);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const CyclotomicField& field) : text_(text), field_(field) {}

  CycElement parse_all() {
    CycElement e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  CycElement expr() {
    CycElement acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  CycElement term() {
    CycElement acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  CycElement factor() {
    if (accept('-')) return -factor();
    CycElement base = atom();
    while (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      bool negative = accept('-');
      skip_ws();
      Integer e = digits();
      if (negative) e = -e;
      if (!e.fits_slong_p()) {
        pos_ = at;
        fail("exponent out of range");
      }
      if (e < 0 && base.is_zero()) {
        pos_ = at;
        fail("zero raised to a negative power");
      }
      base = base.pow(e.get_si());
    }
    return base;
  }

  Integer digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  CycElement atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      CycElement inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'z') {
      ++pos_;
      return CycElement::root_of_unity(field_, 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits();
      if (accept('/')) {
        const std::size_t at = pos_;
        Integer den = digits();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        Rational r(num, den);
        r.canonicalize();
        return CycElement(field_, r);
      }
      return CycElement(field_, Rational(num));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const CyclotomicField& field_;
  std::size_t pos_ = 0;
};

}  // namespace

CycElement parse_element(std::string_view text, const CyclotomicField& field) {
  return Parser(text, field).parse_all();
}

std::vector<CycElement> parse_element_list(std::string_view text, const CyclotomicField& field) {
  std::vector<CycElement> out;
  bool blank = true;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  if (blank) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      out.push_back(parse_element(piece, field));
    } catch (const ParseError& e) {
      throw ParseError(std::string("in generator ") + std::to_string(out.size() + 1) + ": " +
                           std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                       start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_element(const CycElement& x) {
  std::ostringstream out;
  bool first = true;
  const auto& c = x.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Rational mag = abs(c[i]);
    const bool negative = c[i] < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::string power = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
    if (i == 0) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << power;
    } else {
      out << mag.get_str() << '*' << power;
    }
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace rdens
