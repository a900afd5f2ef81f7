#pragma once

// 2x2 matrices over a FieldSpec and finite matrix groups stored as explicit,
// sorted element sets.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "apcong/ffield.hpp"

namespace apcong {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row-major [[a, b], [c, d]]. Ordering is lexicographic on (a, b, c, d),
/// which is the numeric order of the base-q encoding a q^3 + b q^2 + c q + d.
struct Mat2 {
  Elt a, b, c, d;
  friend constexpr auto operator<=>(const Mat2&, const Mat2&) = default;
};

struct Mat2Hash {
  std::size_t operator()(const Mat2& m) const noexcept {
    std::uint64_t h = m.a.code;
    h = h * 0x9E3779B97F4A7C15ULL + m.b.code;
    h = h * 0x9E3779B97F4A7C15ULL + m.c.code;
    h = h * 0x9E3779B97F4A7C15ULL + m.d.code;
    return static_cast<std::size_t>(h ^ (h >> 29U));
  }
};

Mat2 identity(const FieldSpec& F);
Mat2 scalar_matrix(const FieldSpec& F, Elt alpha);
Mat2 make_mat(const FieldSpec& F, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
Mat2 mul(const FieldSpec& F, const Mat2& x, const Mat2& y);
Elt det(const FieldSpec& F, const Mat2& m);
Elt trace(const FieldSpec& F, const Mat2& m);
Mat2 inverse(const FieldSpec& F, const Mat2& m);
Mat2 mat_pow(const FieldSpec& F, Mat2 m, std::uint64_t e);
Mat2 scale(const FieldSpec& F, Elt alpha, const Mat2& m);
/// alpha if m = alpha * id. The zero matrix reports 0.
std::optional<Elt> is_scalar(const FieldSpec& F, const Mat2& m);
/// Least n >= 1 with m^n = id; m must be invertible.
std::uint64_t element_order(const FieldSpec& F, const Mat2& m);
/// Scale so the first nonzero entry in the order a, b, c, d is 1.
Mat2 projective_canonical(const FieldSpec& F, const Mat2& m);
/// Least n >= 1 with m^n scalar.
std::uint64_t projective_order(const FieldSpec& F, const Mat2& m);

/// |GL_2(F_q)| = (q^2 - 1)(q^2 - q).
std::uint64_t gl2_order(std::uint64_t q);

class MatGroup {
 public:
  static constexpr std::size_t kMaxOrder = 1'000'000;

  const FieldSpec& spec() const { return d_->spec; }
  const std::vector<Mat2>& elements() const { return d_->elements; }
  const std::vector<Mat2>& generators() const { return d_->generators; }
  std::size_t order() const { return d_->elements.size(); }

  bool contains(const Mat2& m) const;
  /// Position of m in elements(), if present.
  std::optional<std::size_t> index_of(const Mat2& m) const;
  bool is_subgroup_of(const MatGroup& other) const;
  bool same_elements(const MatGroup& other) const { return elements() == other.elements(); }

 private:
  struct Data {
    FieldSpec spec;
    std::vector<Mat2> elements;
    std::vector<Mat2> generators;
  };
  explicit MatGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  friend MatGroup close_group(const FieldSpec&, const std::vector<Mat2>&, std::size_t);

  std::shared_ptr<const Data> d_;
};

/// Subgroup generated by the given invertible matrices. Throws GroupError on a
/// singular generator or when the closure exceeds the guard.
MatGroup close_group(const FieldSpec& F, const std::vector<Mat2>& generators,
                     std::size_t guard = MatGroup::kMaxOrder);

/// Derived subgroup, as the normal closure of the commutators of generators.
MatGroup commutator_subgroup(const MatGroup& G);

struct Coset {
  Mat2 representative;         // least member
  std::vector<Mat2> members;   // sorted
};

/// Left cosets gH, ordered by representative. Throws GroupError unless H <= G.
std::vector<Coset> cosets(const MatGroup& G, const MatGroup& H);

using TraceMultiset = std::map<Elt, std::size_t>;

TraceMultiset trace_multiset(const FieldSpec& F, const std::vector<Mat2>& members);
inline TraceMultiset trace_multiset(const MatGroup& G) { return trace_multiset(G.spec(), G.elements()); }
inline TraceMultiset trace_multiset(const FieldSpec& F, const Coset& c) { return trace_multiset(F, c.members); }

/// lcm of element orders.
std::uint64_t group_exponent(const MatGroup& G);

/// Distinct determinants, ascending.
std::vector<Elt> determinant_image(const MatGroup& G);

/// Image of a matrix group in PGL_2, as sorted canonical representatives.
class ProjGroup {
 public:
  explicit ProjGroup(MatGroup base);

  const MatGroup& base() const { return base_; }
  const FieldSpec& spec() const { return base_.spec(); }
  const std::vector<Mat2>& classes() const { return classes_; }
  std::size_t order() const { return classes_.size(); }
  std::size_t scalar_kernel_size() const { return kernel_; }
  /// Canonical generators (images of the base generators, non-identity).
  const std::vector<Mat2>& generators() const { return gens_; }

  Mat2 canonical(const Mat2& m) const { return projective_canonical(spec(), m); }
  Mat2 mul(const Mat2& x, const Mat2& y) const;
  Mat2 inverse(const Mat2& x) const;
  std::uint64_t element_order(const Mat2& x) const { return projective_order(spec(), x); }
  std::size_t class_index(const Mat2& m) const;

  /// [P, P] computed inside PGL_2 by normal closure of canonical commutators.
  std::vector<Mat2> commutator_classes() const;

 private:
  MatGroup base_;
  std::vector<Mat2> classes_;
  std::vector<Mat2> gens_;
  std::size_t kernel_ = 0;
};

inline ProjGroup projectivize(const MatGroup& G) { return ProjGroup(G); }

namespace detail {

/// Closure of gens under a binary operation, starting from identity. Result
/// is sorted.
std::vector<Mat2> closure(const std::vector<Mat2>& gens, const Mat2& id,
                          const std::function<Mat2(const Mat2&, const Mat2&)>& op, std::size_t guard);

}  // namespace detail

}  // namespace apcong
