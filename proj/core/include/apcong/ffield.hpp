#pragma once

// Exact arithmetic in small finite fields F_{p^r}.
//
// An element is stored as a packed code: the polynomial-basis coefficients
// c_0 + c_1 t + ... + c_{r-1} t^{r-1} become sum c_i p^i. Codes are therefore
// integers in [0, q), the prime field sits at codes [0, p), and numeric order
// of codes is the lexicographic order of coefficient vectors read from the
// top coefficient down. Multiplication goes through log/exp tables built once
// per field; a FieldSpec is an immutable shared handle to those tables.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace apcong {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Elt {
  std::uint32_t code = 0;
  friend constexpr auto operator<=>(Elt, Elt) = default;
};

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  int r = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // monic, low-to-high, length r + 1
  std::vector<std::uint32_t> exp;      // length 2(q - 1)
  std::vector<std::uint32_t> log;      // length q, log[0] unused
  std::vector<std::uint32_t> add;      // q*q table for small extension fields
  std::vector<std::uint32_t> neg;      // length q
  std::uint32_t generator = 1;
};

}  // namespace detail

class FieldSpec {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  /// Builds F_{p^r}. Without a modulus, the least monic irreducible of degree
  /// r is used (coefficients compared from the top degree down). The modulus,
  /// when given, is low-to-high, monic and of length r + 1.
  static FieldSpec make(std::int64_t p, int r = 1,
                        std::optional<std::vector<std::int64_t>> modulus = std::nullopt);

  std::uint32_t characteristic() const { return d_->p; }
  int degree() const { return d_->r; }
  std::uint32_t order() const { return d_->q; }
  const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }

  bool operator==(const FieldSpec& other) const;

  Elt zero() const { return Elt{0}; }
  Elt one() const { return Elt{1}; }
  Elt from_int(std::int64_t v) const;
  Elt from_coeffs(std::span<const std::int64_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elt a) const;
  bool in_prime_field(Elt a) const { return a.code < d_->p; }
  bool contains(Elt a) const { return a.code < d_->q; }

  Elt add(Elt a, Elt b) const {
    const auto& d = *d_;
    if (d.r == 1) {
      const std::uint32_t s = a.code + b.code;
      return Elt{s >= d.p ? s - d.p : s};
    }
    if (!d.add.empty()) return Elt{d.add[static_cast<std::size_t>(a.code) * d.q + b.code]};
    return add_digitwise(a, b);
  }
  Elt neg(Elt a) const { return Elt{d_->neg[a.code]}; }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    const auto& d = *d_;
    if (a.code == 0 || b.code == 0) return Elt{0};
    if (d.r == 1) return Elt{static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % d.p)};
    return Elt{d.exp[d.log[a.code] + d.log[b.code]]};
  }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::int64_t e) const;

  /// Least-code primitive element.
  Elt generator() const { return Elt{d_->generator}; }
  /// Discrete logarithm to the base generator(); a must be nonzero.
  std::uint32_t log(Elt a) const;
  Elt exp(std::uint64_t k) const { return Elt{d_->exp[k % (d_->q - 1)]}; }

  std::uint64_t mult_order(Elt a) const;
  bool is_square(Elt a) const;
  /// Least-code square root, if one exists.
  std::optional<Elt> sqrt(Elt a) const;

  /// Elements of the subfield of order p^d (d must divide r), ascending.
  std::vector<Elt> subfield(int d) const;
  /// Smallest subfield degree containing a.
  int degree_over_prime_field(Elt a) const;

  std::string format(Elt a) const;

 private:
  explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  Elt add_digitwise(Elt a, Elt b) const;

  std::shared_ptr<const detail::FieldData> d_;
};

/// A field value bundled with its field, for scalar-level computations.
class FieldElement {
 public:
  FieldElement(FieldSpec spec, Elt value);
  static FieldElement from_int(const FieldSpec& spec, std::int64_t v) {
    return FieldElement(spec, spec.from_int(v));
  }

  const FieldSpec& spec() const { return spec_; }
  Elt value() const { return value_; }
  std::vector<std::uint32_t> coeffs() const { return spec_.coeffs(value_); }
  bool is_zero() const { return value_.code == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement pow(std::int64_t e) const;
  FieldElement inverse() const;

  bool operator==(const FieldElement& o) const { return spec_ == o.spec_ && value_ == o.value_; }

  std::string to_string() const { return spec_.format(value_); }

 private:
  void require_same(const FieldElement& o) const;

  FieldSpec spec_;
  Elt value_;
};

enum class ArithOp { add, sub, mul, div, pow };

/// Binary field operation; for pow the exponent is b read as an integer of
/// the prime field.
FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

std::uint64_t mult_order(const FieldElement& a);

std::optional<FieldElement> sqrt_in_field(const FieldElement& a);

/// Embedding of k into its quadratic extension K = F_{q^2}.
struct FieldEmbedding {
  FieldSpec small;
  FieldSpec large;
  std::vector<Elt> image;

  Elt operator()(Elt a) const { return image[a.code]; }
};

FieldEmbedding quadratic_extension(const FieldSpec& k);

/// True iff the monic polynomial (low-to-high coefficients mod p) has no
/// factor of degree between 1 and deg/2.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

}  // namespace apcong
