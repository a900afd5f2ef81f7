#include "apcong/eigendata.hpp"

#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "apcong/numtheory.hpp"

namespace apcong {

namespace {

constexpr u128 kSignBit = u128{1} << 127U;

BigInt from_u128(u128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64U);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

u128 minus_one(std::uint64_t m) { return m == 0 ? ~u128{0} : u128{m - 1} % m; }

std::int64_t mod_big(const BigInt& v, std::int64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::int64_t>();
}

void require_prime_field(const FieldSpec& field) {
  if (field.degree() != 1) {
    throw std::invalid_argument("a_p data needs a residue field of degree 1, got F_" + std::to_string(field.order()));
  }
}

}  // namespace

QSeries::QSeries(std::uint64_t modulus, std::vector<u128> coeffs, std::int64_t offset24)
    : m_(modulus), c_(std::move(coeffs)), offset24_(offset24) {
  if (c_.empty()) throw std::invalid_argument("q-series needs at least the constant coefficient");
  if (m_ > 0) {
    for (u128& c : c_) c %= m_;
  }
}

BigInt QSeries::value(std::size_t n) const {
  const u128 c = c_.at(n);
  if (m_ > 0 || c < kSignBit) return from_u128(c);
  return -from_u128(~c + 1);
}

std::uint64_t QSeries::reduced(std::size_t n, std::uint64_t mod) const {
  if (mod == 0) throw std::invalid_argument("reduction modulus must be positive");
  const u128 c = c_.at(n);
  if (m_ > 0) {
    if (m_ % mod != 0) throw std::invalid_argument("series modulus is not a multiple of the requested one");
    return static_cast<std::uint64_t>(c % mod);
  }
  if (c < kSignBit) return static_cast<std::uint64_t>(c % mod);
  const auto r = static_cast<std::uint64_t>((~c + 1) % mod);
  return r == 0 ? 0 : mod - r;
}

BigInt QSeries::coeff_at(std::int64_t e) const {
  if (offset24_ % 24 != 0) throw std::invalid_argument("series has a fractional leading exponent");
  const std::int64_t idx = e - offset24_ / 24;
  if (idx < 0) return 0;
  if (static_cast<std::uint64_t>(idx) > truncation()) {
    throw std::out_of_range("exponent " + std::to_string(e) + " lies past the truncation");
  }
  return value(static_cast<std::size_t>(idx));
}

QSeries multiply(const QSeries& a, const QSeries& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("q-series moduli differ");
  const std::uint64_t m = a.modulus();
  const std::size_t T = std::min(a.truncation(), b.truncation());
  const auto& x = a.raw();
  const auto& y = b.raw();
  std::vector<u128> out(T + 1, 0);

  if (m == 0) {
    for (std::size_t i = 0; i <= T; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; i + j <= T; ++j) out[i + j] += x[i] * y[j];
    }
  } else if (m <= std::numeric_limits<std::uint32_t>::max()) {
    // Products fit in 64 bits and at most T + 1 of them land in each slot,
    // so a 128-bit accumulator needs only one reduction per coefficient.
    for (std::size_t i = 0; i <= T; ++i) {
      if (x[i] == 0) continue;
      const auto xi = static_cast<std::uint64_t>(x[i]);
      for (std::size_t j = 0; i + j <= T; ++j) out[i + j] += xi * static_cast<std::uint64_t>(y[j]);
    }
    for (u128& c : out) c %= m;
  } else {
    for (std::size_t i = 0; i <= T; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; i + j <= T; ++j) out[i + j] = (out[i + j] + x[i] * y[j] % m) % m;
    }
  }
  return QSeries(m, std::move(out), a.offset24() + b.offset24());
}

QSeries dilate(const QSeries& a, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("dilation factor must be positive");
  const std::size_t T = a.truncation();
  std::vector<u128> out(T + 1, 0);
  for (std::size_t i = 0; i * k <= T; ++i) out[i * k] = a.raw()[i];
  return QSeries(a.modulus(), std::move(out), a.offset24() * static_cast<std::int64_t>(k));
}

QSeries eta_qexp(std::size_t T, std::uint64_t m) {
  std::vector<u128> c(T + 1, 0);
  const u128 one = m == 0 ? u128{1} : u128{1} % m;
  const u128 neg = minus_one(m);
  c[0] = one;
  // Generalized pentagonal numbers k(3k - 1)/2 and k(3k + 1)/2, sign (-1)^k.
  for (std::size_t k = 1;; ++k) {
    const std::size_t g1 = k * (3 * k - 1) / 2;
    if (g1 > T) break;
    const u128 s = k % 2 == 0 ? one : neg;
    c[g1] = s;
    const std::size_t g2 = k * (3 * k + 1) / 2;
    if (g2 <= T) c[g2] = s;
  }
  return QSeries(m, std::move(c), 1);
}

QSeries delta_coeffs(std::size_t T, std::uint64_t m) {
  if (T < 1) throw std::invalid_argument("Delta needs T >= 1");
  const QSeries e1 = eta_qexp(T - 1, m);
  const QSeries e2 = multiply(e1, e1);
  const QSeries e4 = multiply(e2, e2);
  const QSeries e8 = multiply(e4, e4);
  const QSeries e16 = multiply(e8, e8);
  return multiply(e16, e8);
}

QSeries eta_eta23(std::size_t T, std::uint64_t m) {
  if (T < 1) throw std::invalid_argument("eta product needs T >= 1");
  const QSeries e = eta_qexp(T - 1, m);
  return multiply(e, dilate(e, 23));
}

BigInt EllipticCurve::b2() const { return BigInt(a[0]) * a[0] + 4 * BigInt(a[1]); }

BigInt EllipticCurve::b4() const { return 2 * BigInt(a[3]) + BigInt(a[0]) * a[2]; }

BigInt EllipticCurve::b6() const { return BigInt(a[2]) * a[2] + 4 * BigInt(a[4]); }

BigInt EllipticCurve::b8() const {
  const BigInt a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}

BigInt EllipticCurve::discriminant() const {
  const BigInt B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

BigInt EllipticCurve::c4() const {
  const BigInt B2 = b2();
  return B2 * B2 - 24 * b4();
}

std::int64_t EllipticCurve::label_level() const {
  std::int64_t n = 0;
  std::size_t i = 0;
  while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i])) && i < 18) {
    n = n * 10 + (label[i] - '0');
    ++i;
  }
  return n;
}

bool EllipticCurve::conductor_consistent() const {
  if (conductor < 1) return false;
  BigInt D = discriminant();
  if (D == 0) return false;
  const BigInt C4 = c4();
  for (const auto& [p, e] : factorize(conductor)) {
    if (D % p != 0) return false;
    while (D % p == 0) D /= p;
    if (p >= 5 && e != (C4 % p == 0 ? 2 : 1)) return false;
  }
  if (D != 1 && D != -1) return false;
  return label_level() == conductor;
}

std::int64_t ap_point_count(const EllipticCurve& E, std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("point counting needs a prime");
  if (p > kMaxPointCountPrime) throw std::invalid_argument("prime exceeds the point-counting guard of 10^6");
  if (E.conductor % p == 0) throw std::invalid_argument("p = " + std::to_string(p) + " divides the conductor");
  if (mod_big(E.discriminant(), p) == 0) throw std::invalid_argument("model has bad reduction at p");

  std::int64_t ap = 0;
  if (p <= 3) {
    std::array<std::int64_t, 5> c{};
    for (int i = 0; i < 5; ++i) c[i] = mod_floor(E.a[i], p);
    std::int64_t affine = 0;
    for (std::int64_t x = 0; x < p; ++x) {
      for (std::int64_t y = 0; y < p; ++y) {
        const std::int64_t lhs = y * y + c[0] * x * y + c[2] * y;
        const std::int64_t rhs = x * x * x + c[1] * x * x + c[3] * x + c[4];
        if (mod_floor(lhs - rhs, p) == 0) ++affine;
      }
    }
    ap = p - affine;
  } else {
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (std::int64_t x = 1; x <= p / 2; ++x) chi[static_cast<std::size_t>(x * x % p)] = 1;
    const std::int64_t B2 = mod_big(E.b2(), p);
    const std::int64_t B4 = mod_big(2 * E.b4(), p);
    const std::int64_t B6 = mod_big(E.b6(), p);
    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < p; ++x) {
      const std::int64_t f = (((4 * x + B2) % p * x + B4) % p * x + B6) % p;
      sum += chi[static_cast<std::size_t>(f)];
    }
    ap = -sum;
  }
  if (ap * ap > 4 * p) throw std::logic_error("a_p violates the Hasse bound");
  return ap;
}

bool quadform_represents(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c) {
  const std::int64_t Dp = 4 * a * c - b * b;
  if (a <= 0 || Dp <= 0) throw std::invalid_argument("quadratic form must be positive definite");
  if (p < 0) return false;
  // 4a(ax^2 + bxy + cy^2) = (2ax + by)^2 + D' y^2, so D' y^2 <= 4ap, and
  // symmetrically D' x^2 <= 4cp.
  const std::int64_t xmax = isqrt(4 * c * p / Dp);
  const std::int64_t ymax = isqrt(4 * a * p / Dp);
  for (std::int64_t y = 0; y <= ymax; ++y) {
    for (std::int64_t x = -xmax; x <= xmax; ++x) {
      if (a * x * x + b * x * y + c * y * y == p) return true;
    }
  }
  return false;
}

std::vector<std::int64_t> good_primes(std::int64_t level, std::int64_t ell, std::int64_t p_max) {
  std::vector<std::int64_t> out;
  if (p_max < 2) return out;
  for (std::int64_t p : primes_up_to(p_max)) {
    if (level % p != 0 && ell % p != 0) out.push_back(p);
  }
  return out;
}

ApDataset build_dataset(const EllipticCurve& E, const FieldSpec& field, std::int64_t p_max) {
  require_prime_field(field);
  ApDataset ds{E.label, E.conductor, field, {}};
  const std::int64_t ell = ds.ell();
  for (std::int64_t p : good_primes(E.conductor, ell, p_max)) {
    ds.samples.push_back({p, static_cast<std::uint32_t>(mod_floor(ap_point_count(E, p), ell))});
  }
  return ds;
}

ApDataset build_dataset(const QSeries& series, const std::string& label, std::int64_t level, const FieldSpec& field,
                        std::int64_t p_max) {
  require_prime_field(field);
  const auto ell = static_cast<std::uint64_t>(field.characteristic());
  if (series.modulus() > 0 && series.modulus() % ell != 0) {
    throw std::invalid_argument("series modulus " + std::to_string(series.modulus()) + " is not divisible by ell");
  }
  if (series.offset24() % 24 != 0) throw std::invalid_argument("series has a fractional leading exponent");
  const std::int64_t offset = series.offset24() / 24;
  ApDataset ds{label, level, field, {}};
  for (std::int64_t p : good_primes(level, static_cast<std::int64_t>(ell), p_max)) {
    const std::int64_t idx = p - offset;
    if (idx < 0 || static_cast<std::uint64_t>(idx) > series.truncation()) {
      throw std::invalid_argument("series truncation too short for p = " + std::to_string(p));
    }
    ds.samples.push_back({p, static_cast<std::uint32_t>(series.reduced(static_cast<std::size_t>(idx), ell))});
  }
  return ds;
}

ApDataset build_dataset(const ModularForm& form, const FieldSpec& field, std::int64_t p_max) {
  require_prime_field(field);
  ApDataset ds{form.label, form.level, field, {}};
  const std::int64_t ell = ds.ell();
  for (std::int64_t p : good_primes(form.level, ell, p_max)) {
    if (static_cast<std::size_t>(p) > form.coeffs.size()) {
      throw std::invalid_argument("form " + form.label + " has no coefficient a_" + std::to_string(p));
    }
    const std::int64_t ap = form.coeffs[static_cast<std::size_t>(p - 1)];
    ds.samples.push_back({p, static_cast<std::uint32_t>(mod_floor(ap, ell))});
  }
  return ds;
}

void write_dataset_csv(const ApDataset& ds, std::ostream& out) {
  out << "p,ap_mod\n";
  for (const ApSample& s : ds.samples) out << s.p << ',' << s.ap << '\n';
}

std::vector<ApSample> read_dataset_csv(std::istream& in) {
  std::vector<ApSample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (lineno == 1 && line.rfind("p,", 0) == 0 && !std::isdigit(static_cast<unsigned char>(line[2])))) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected p,ap_mod");
    try {
      const std::int64_t p = std::stoll(line.substr(0, comma));
      const std::int64_t ap = std::stoll(line.substr(comma + 1));
      if (ap < 0) throw std::invalid_argument("negative residue");
      if (!out.empty() && p <= out.back().p) throw std::invalid_argument("primes not increasing");
      out.push_back({p, static_cast<std::uint32_t>(ap)});
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace apcong
