#include "apcong/ffield.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "apcong/numtheory.hpp"

namespace apcong {

namespace {

using Poly = std::vector<std::uint32_t>;  // low-to-high coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m.
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = std::uint64_t{lead} * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits_of(std::uint32_t code, std::uint32_t p, int r) {
  Poly out(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i) {
    out[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return out;
}

std::uint32_t code_of(const Poly& digits, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) code = code * p + digits[i];
  return code;
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, const Poly& modulus, std::uint32_t p, int r) {
  const Poly da = digits_of(a, p, r);
  const Poly db = digits_of(b, p, r);
  Poly prod(static_cast<std::size_t>(2 * r), 0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const std::uint64_t t = std::uint64_t{da[static_cast<std::size_t>(i)]} * db[static_cast<std::size_t>(j)];
      auto& slot = prod[static_cast<std::size_t>(i + j)];
      slot = static_cast<std::uint32_t>((slot + t) % p);
    }
  }
  Poly rem = poly_rem(prod, modulus, p);
  rem.resize(static_cast<std::size_t>(r), 0);
  return code_of(rem, p);
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e, const Poly& modulus, std::uint32_t p, int r) {
  std::uint32_t result = 1;
  while (e > 0) {
    if (e & 1U) result = slow_mul(result, a, modulus, p, r);
    a = slow_mul(a, a, modulus, p, r);
    e >>= 1U;
  }
  return result;
}

Poly default_modulus(std::uint32_t p, int r) {
  std::uint64_t count = 1;
  for (int i = 0; i < r; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly cand = digits_of(static_cast<std::uint32_t>(idx), p, r);
    cand.push_back(1);
    if (is_irreducible(p, cand)) return cand;
  }
  throw FieldError("no irreducible polynomial found");  // unreachable for prime p
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g = digits_of(static_cast<std::uint32_t>(idx), p, d);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::make(std::int64_t p, int r, std::optional<std::vector<std::int64_t>> modulus) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  }
  if (r < 1) throw FieldError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (int i = 0; i < r; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxOrder) throw FieldError("field order exceeds 2^20");
  }
  const auto up = static_cast<std::uint32_t>(p);

  auto data = std::make_shared<detail::FieldData>();
  data->p = up;
  data->r = r;
  data->q = static_cast<std::uint32_t>(q);

  if (modulus) {
    if (modulus->size() != static_cast<std::size_t>(r) + 1) {
      throw FieldError("modulus must have length r + 1");
    }
    Poly m;
    for (std::int64_t c : *modulus) m.push_back(static_cast<std::uint32_t>(mod_floor(c, p)));
    if (m.back() != 1) throw FieldError("modulus must be monic");
    if (!is_irreducible(up, m)) throw FieldError("modulus is reducible over F_" + std::to_string(p));
    data->modulus = std::move(m);
  } else {
    data->modulus = default_modulus(up, r);
  }

  const std::uint32_t qq = data->q;
  const Poly& m = data->modulus;

  // Least primitive element: g^((q-1)/l) != 1 for every prime l | q - 1.
  const auto order_factors = qq > 2 ? prime_divisors(qq - 1) : std::vector<std::int64_t>{};
  std::uint32_t gen = 1;
  if (qq > 2) {
    for (std::uint32_t g = 2; g < qq; ++g) {
      bool primitive = true;
      for (std::int64_t l : order_factors) {
        if (slow_pow(g, (qq - 1) / static_cast<std::uint64_t>(l), m, up, r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = g;
        break;
      }
    }
  }
  data->generator = gen;

  data->exp.assign(2 * static_cast<std::size_t>(qq - 1), 0);
  data->log.assign(qq, 0);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < qq - 1; ++k) {
    data->exp[k] = x;
    data->exp[k + qq - 1] = x;
    data->log[x] = k;
    x = r == 1 ? static_cast<std::uint32_t>(std::uint64_t{x} * gen % up) : slow_mul(x, gen, m, up, r);
  }

  data->neg.assign(qq, 0);
  for (std::uint32_t a = 0; a < qq; ++a) {
    Poly da = digits_of(a, up, r);
    for (auto& c : da) c = (up - c) % up;
    data->neg[a] = code_of(da, up);
  }

  if (r > 1 && qq <= 1024) {
    data->add.assign(static_cast<std::size_t>(qq) * qq, 0);
    for (std::uint32_t a = 0; a < qq; ++a) {
      const Poly da = digits_of(a, up, r);
      for (std::uint32_t b = 0; b < qq; ++b) {
        Poly db = digits_of(b, up, r);
        for (int i = 0; i < r; ++i) {
          db[static_cast<std::size_t>(i)] = (db[static_cast<std::size_t>(i)] + da[static_cast<std::size_t>(i)]) % up;
        }
        data->add[static_cast<std::size_t>(a) * qq + b] = code_of(db, up);
      }
    }
  }

  return FieldSpec(std::move(data));
}

bool FieldSpec::operator==(const FieldSpec& other) const {
  if (d_ == other.d_) return true;
  return d_->p == other.d_->p && d_->r == other.d_->r && d_->modulus == other.d_->modulus;
}

Elt FieldSpec::from_int(std::int64_t v) const {
  return Elt{static_cast<std::uint32_t>(mod_floor(v, d_->p))};
}

Elt FieldSpec::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(d_->r)) {
    throw FieldError("too many coefficients for a degree-" + std::to_string(d_->r) + " field");
  }
  Poly digits(static_cast<std::size_t>(d_->r), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    digits[i] = static_cast<std::uint32_t>(mod_floor(coeffs[i], d_->p));
  }
  return Elt{code_of(digits, d_->p)};
}

std::vector<std::uint32_t> FieldSpec::coeffs(Elt a) const { return digits_of(a.code, d_->p, d_->r); }

Elt FieldSpec::add_digitwise(Elt a, Elt b) const {
  const std::uint32_t p = d_->p;
  std::uint32_t x = a.code;
  std::uint32_t y = b.code;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (int i = 0; i < d_->r; ++i) {
    out += ((x % p + y % p) % p) * place;
    x /= p;
    y /= p;
    place *= p;
  }
  return Elt{out};
}

Elt FieldSpec::inv(Elt a) const {
  if (a.code == 0) throw FieldError("division by zero");
  const std::uint32_t qm1 = d_->q - 1;
  return Elt{d_->exp[(qm1 - d_->log[a.code]) % qm1]};
}

Elt FieldSpec::pow(Elt a, std::int64_t e) const {
  if (a.code == 0) {
    if (e < 0) throw FieldError("division by zero");
    return e == 0 ? one() : zero();
  }
  const auto qm1 = static_cast<std::int64_t>(d_->q - 1);
  const std::int64_t k = mod_floor(mod_floor(e, qm1) * static_cast<std::int64_t>(d_->log[a.code]), qm1);
  return Elt{d_->exp[static_cast<std::size_t>(k)]};
}

std::uint32_t FieldSpec::log(Elt a) const {
  if (a.code == 0) throw FieldError("logarithm of zero");
  return d_->log[a.code];
}

std::uint64_t FieldSpec::mult_order(Elt a) const {
  if (a.code == 0) throw FieldError("zero has no multiplicative order");
  const std::uint64_t qm1 = d_->q - 1;
  return qm1 / std::gcd(qm1, std::uint64_t{d_->log[a.code]});
}

bool FieldSpec::is_square(Elt a) const {
  if (a.code == 0 || d_->p == 2) return true;
  return d_->log[a.code] % 2 == 0;
}

std::optional<Elt> FieldSpec::sqrt(Elt a) const {
  if (a.code == 0) return zero();
  if (d_->p == 2) {
    // Frobenius is bijective: the unique root is a^(q/2).
    return pow(a, d_->q / 2);
  }
  const std::uint32_t k = d_->log[a.code];
  if (k % 2 != 0) return std::nullopt;
  const Elt root = exp(k / 2);
  const Elt other = neg(root);
  return std::min(root, other);
}

std::vector<Elt> FieldSpec::subfield(int d) const {
  if (d < 1 || d_->r % d != 0) throw FieldError("subfield degree must divide the extension degree");
  std::uint64_t sub_order = 1;
  for (int i = 0; i < d; ++i) sub_order *= d_->p;
  const std::uint64_t step = (d_->q - 1) / (sub_order - 1);
  std::vector<Elt> out{zero()};
  for (std::uint64_t k = 0; k < sub_order - 1; ++k) out.push_back(exp(k * step));
  std::sort(out.begin(), out.end());
  return out;
}

int FieldSpec::degree_over_prime_field(Elt a) const {
  for (int d = 1; d <= d_->r; ++d) {
    if (d_->r % d != 0) continue;
    std::uint64_t pd = 1;
    for (int i = 0; i < d; ++i) pd *= d_->p;
    if (pow(a, static_cast<std::int64_t>(pd)) == a) return d;
  }
  return d_->r;
}

std::string FieldSpec::format(Elt a) const {
  if (d_->r == 1) return std::to_string(a.code);
  const Poly c = coeffs(a);
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << c[i];
      continue;
    }
    if (c[i] != 1) out << c[i];
    out << 't';
    if (i > 1) out << '^' << i;
  }
  if (first) out << '0';
  return out.str();
}

FieldElement::FieldElement(FieldSpec spec, Elt value) : spec_(std::move(spec)), value_(value) {
  if (!spec_.contains(value_)) throw FieldError("element code out of range");
}

void FieldElement::require_same(const FieldElement& o) const {
  if (!(spec_ == o.spec_)) throw FieldError("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  return {spec_, spec_.add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  return {spec_, spec_.sub(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return {spec_, spec_.mul(value_, o.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same(o);
  return {spec_, spec_.div(value_, o.value_)};
}

FieldElement FieldElement::operator-() const { return {spec_, spec_.neg(value_)}; }

FieldElement FieldElement::pow(std::int64_t e) const { return {spec_, spec_.pow(value_, e)}; }

FieldElement FieldElement::inverse() const { return {spec_, spec_.inv(value_)}; }

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      return a / b;
    case ArithOp::pow:
      if (!(a.spec() == b.spec())) throw FieldError("operands belong to different fields");
      if (!b.spec().in_prime_field(b.value())) throw FieldError("exponent must lie in the prime field");
      return a.pow(b.value().code);
  }
  throw FieldError("unknown operation");
}

std::uint64_t mult_order(const FieldElement& a) { return a.spec().mult_order(a.value()); }

std::optional<FieldElement> sqrt_in_field(const FieldElement& a) {
  auto root = a.spec().sqrt(a.value());
  if (!root) return std::nullopt;
  return FieldElement(a.spec(), *root);
}

FieldEmbedding quadratic_extension(const FieldSpec& k) {
  const auto p = static_cast<std::int64_t>(k.characteristic());
  FieldSpec big = FieldSpec::make(p, 2 * k.degree());
  const auto& m = k.modulus();

  // Least root of k's defining polynomial inside K.
  std::optional<Elt> theta;
  for (std::uint32_t c = 0; c < big.order() && !theta; ++c) {
    Elt acc = big.zero();
    for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, Elt{c}), big.from_int(m[i]));
    if (acc.code == 0) theta = Elt{c};
  }
  if (!theta) throw FieldError("defining polynomial has no root in the quadratic extension");

  std::vector<Elt> image(k.order());
  for (std::uint32_t a = 0; a < k.order(); ++a) {
    const auto c = k.coeffs(Elt{a});
    Elt acc = big.zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = big.add(big.mul(acc, *theta), big.from_int(c[i]));
    image[a] = acc;
  }
  return FieldEmbedding{k, std::move(big), std::move(image)};
}

}  // namespace apcong
