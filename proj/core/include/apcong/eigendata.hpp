#pragma once

// Sources of a_p data: truncated q-series (eta products, Delta), elliptic
// curves by point counting, and coefficient lists read from files.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "apcong/ffield.hpp"

namespace apcong {

__extension__ using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

/// Power series c_0 + c_1 q + ... + c_T q^T times q^(offset24 / 24).
///
/// With modulus m > 0 coefficients live in [0, m). With m = 0 they are
/// integers kept modulo 2^128; since that is a ring, products are exact as
/// long as the true coefficients fit in a signed 128-bit integer.
class QSeries {
 public:
  QSeries(std::uint64_t modulus, std::vector<u128> coeffs, std::int64_t offset24);

  std::uint64_t modulus() const { return m_; }
  std::size_t truncation() const { return c_.size() - 1; }
  std::int64_t offset24() const { return offset24_; }
  const std::vector<u128>& raw() const { return c_; }

  /// Coefficient of q^(offset + n) as an integer: the signed value when
  /// m = 0, the residue in [0, m) otherwise.
  BigInt value(std::size_t n) const;
  /// Coefficient of q^(offset + n) reduced into [0, mod).
  std::uint64_t reduced(std::size_t n, std::uint64_t mod) const;

  /// Coefficient of q^e where e is a whole exponent; needs an integral
  /// offset. Zero below the offset; throws past the truncation.
  BigInt coeff_at(std::int64_t e) const;

 private:
  std::uint64_t m_;
  std::vector<u128> c_;
  std::int64_t offset24_;
};

/// Truncates both factors to the shorter length; offsets add.
QSeries multiply(const QSeries& a, const QSeries& b);
/// q -> q^k, keeping the truncation.
QSeries dilate(const QSeries& a, std::uint64_t k);

/// eta(q) = q^(1/24) prod (1 - q^n) up to q^T, by the pentagonal number theorem.
QSeries eta_qexp(std::size_t T, std::uint64_t m);
/// Delta = eta^24 with tau(1), ..., tau(T); coeff_at(n) = tau(n).
QSeries delta_coeffs(std::size_t T, std::uint64_t m);
/// eta(q) eta(q^23), carrying the coefficients of q^1 ... q^T.
QSeries eta_eta23(std::size_t T, std::uint64_t m);

struct EllipticCurve {
  std::string label;
  std::array<std::int64_t, 5> a{};  // a1, a2, a3, a4, a6
  std::int64_t conductor = 0;

  BigInt b2() const;
  BigInt b4() const;
  BigInt b6() const;
  BigInt b8() const;
  BigInt discriminant() const;
  BigInt c4() const;

  /// Leading digits of a Cremona-style label, or 0.
  std::int64_t label_level() const;
  /// Primes of the conductor are exactly the primes of the discriminant, at
  /// p >= 5 the exponent is 1 or 2 according to whether p divides c4, and
  /// the label's level equals the conductor.
  bool conductor_consistent() const;
};

inline constexpr std::int64_t kMaxPointCountPrime = 1'000'000;

/// a_p = p + 1 - #E(F_p) for a prime of good reduction p <= 10^6.
std::int64_t ap_point_count(const EllipticCurve& E, std::int64_t p);

/// Whether a x^2 + b x y + c y^2 = p has an integer solution; the form must
/// be positive definite. Solutions with x = 0 or y = 0 count.
bool quadform_represents(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c);

struct ModularForm {
  std::string label;
  int weight = 2;
  std::int64_t level = 1;
  std::vector<std::int64_t> coeffs;  // a_1, a_2, ...
};

struct ApSample {
  std::int64_t p = 0;
  std::uint32_t ap = 0;  // a_p mod ell, in [0, ell)
  friend bool operator==(const ApSample&, const ApSample&) = default;
};

struct ApDataset {
  std::string source;
  std::int64_t level = 1;
  FieldSpec field;
  std::vector<ApSample> samples;  // strictly increasing p, all coprime to level * ell

  std::int64_t ell() const { return field.characteristic(); }
};

/// All primes p <= p_max with p not dividing level * ell.
std::vector<std::int64_t> good_primes(std::int64_t level, std::int64_t ell, std::int64_t p_max);

/// The residue field must be F_ell (degree 1); anything else is rejected.
ApDataset build_dataset(const EllipticCurve& E, const FieldSpec& field, std::int64_t p_max);
/// From a q-series whose coeff_at(p) is a_p. A series reduced modulo m > 0
/// needs ell | m.
ApDataset build_dataset(const QSeries& series, const std::string& label, std::int64_t level, const FieldSpec& field,
                        std::int64_t p_max);
ApDataset build_dataset(const ModularForm& form, const FieldSpec& field, std::int64_t p_max);

/// "p,ap_mod" with a header line.
void write_dataset_csv(const ApDataset& ds, std::ostream& out);
std::vector<ApSample> read_dataset_csv(std::istream& in);

}  // namespace apcong
