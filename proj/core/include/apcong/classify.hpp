#pragma once

// Dickson-type classification of the projective image of a finite subgroup
// of GL_2(k), plus Borel-conjugability over the quadratic extension and the
// trace sets attained on derived subgroups.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apcong/ffield.hpp"
#include "apcong/matgrp.hpp"

namespace apcong {

/// Raised when two independent computations of the same mathematical fact
/// disagree. Indicates a bug, never bad input.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Whether a matrix over k has an eigenbasis over the quadratic extension.
bool diagonalisable_over_extension(const FieldSpec& F, const Mat2& m);

struct BorelWitness {
  FieldEmbedding embedding;  // k -> K
  Mat2 basis;                // over K; basis^-1 g basis is upper triangular
};

struct BorelResult {
  bool conjugable = false;
  std::optional<BorelWitness> witness;
};

/// Decided from the derived subgroup (only the identity may be
/// diagonalisable) and confirmed by a common-eigenvector search over P^1(K).
/// Throws TheoremViolation if the two disagree.
BorelResult is_borel_conjugable(const MatGroup& G);

enum class DicksonKind { BorelConjugable, Cyclic, Dihedral, PSL2, PGL2, A4, S4, A5 };

struct DicksonLabel {
  DicksonKind kind;
  std::uint64_t param = 0;  // n for Cyclic/Dihedral, subfield order for PSL2/PGL2

  std::string to_string() const;
  friend bool operator==(const DicksonLabel&, const DicksonLabel&) = default;
};

struct DicksonClass {
  DicksonLabel label;
  std::vector<DicksonLabel> all_applicable;
  std::uint64_t projective_order = 0;
  std::uint32_t characteristic = 0;
  std::optional<BorelWitness> borel;
  std::optional<Mat2> rotation;  // generator of the index-2 cyclic part (dihedral)

  bool is(DicksonKind k) const { return label.kind == k; }
  bool applicable(DicksonKind k) const;
  /// Dihedral parameter, when the group is dihedral with n >= 2.
  std::optional<std::uint64_t> dihedral_n() const;
  /// True for a dihedral label whose n is prime to the characteristic.
  bool coprime_dihedral() const;
};

DicksonClass classify_projective(const ProjGroup& P);
inline DicksonClass classify(const MatGroup& G) { return classify_projective(ProjGroup(G)); }

/// Number of projective classes with trace zero.
std::size_t traceless_count(const ProjGroup& P);

/// Traces attained on [G, G], ascending. When the classification is
/// exceptional or a subfield PSL2/PGL2, the set is compared with the
/// predicted one and a mismatch throws TheoremViolation.
std::vector<Elt> commutator_trace_set(const MatGroup& G, const DicksonClass& cls);
std::vector<Elt> commutator_trace_set(const MatGroup& G);

/// Predicted traces on [G, G] for the given label, if the label carries a
/// prediction.
std::optional<std::vector<Elt>> predicted_commutator_traces(const FieldSpec& F, const DicksonClass& cls);

/// Golden ratio (1 + sqrt 5)/2 in F, if sqrt 5 exists (3 in characteristic 5).
std::optional<Elt> golden_ratio(const FieldSpec& F);

/// |PSL_2(F_q)| and |PGL_2(F_q)|.
std::uint64_t psl2_order(std::uint64_t q);
std::uint64_t pgl2_order(std::uint64_t q);

}  // namespace apcong
