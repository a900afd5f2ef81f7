#pragma once

// Residue-class verdicts for a finite G <= GL_2(k), read off from the cosets
// of [G, G] and their traces, together with the structural predictions they
// are checked against and the modulus bounds for the matching congruences.
//
// Terminology, for a class x attained as a trace on G ("proper"):
//   weak(x)    some coset of [G, G] has constant trace x
//   semi(x)    some coset of [G, G] avoids trace x
//   abelian(x) every coset of [G, G] is either all-x or x-free
//   totally    every coset of [G, G] has constant trace

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "apcong/classify.hpp"
#include "apcong/matgrp.hpp"
#include "apcong/numtheory.hpp"

namespace apcong {

using Rational = boost::rational<std::int64_t>;

/// Traces attained on G, ascending.
std::vector<Elt> proper_classes(const MatGroup& G);

struct CosetVerdict {
  bool holds = false;
  std::optional<Coset> witness;
};

/// Throw std::invalid_argument when x is not a proper class.
CosetVerdict is_weakly_abelian(const MatGroup& G, Elt x);
CosetVerdict is_semi_abelian(const MatGroup& G, Elt x);
bool is_abelian_for(const MatGroup& G, Elt x);

/// Constant trace on every coset, cross-checked against Borel-conjugability.
/// A disagreement throws TheoremViolation.
bool is_totally_abelian(const MatGroup& G);

/// Traceless fraction of G, asserted against the value the Dickson label
/// predicts (TheoremViolation on mismatch).
Rational density_c(const MatGroup& G);
Rational density_c(const MatGroup& G, const DicksonClass& cls);

/// Whether c is an admissible density for the label. For Borel images this
/// is 0 or 1/d with d | q - 1 or d | q + 1 (d even for odd q).
bool density_admissible(const Rational& c, const DicksonClass& cls, const FieldSpec& F);

struct ClassVerdict {
  Elt x;
  bool weak = false;
  bool semi = false;
  bool abelian = false;
  std::optional<std::size_t> weak_witness;  // index into AbelianReport::cosets
  std::optional<std::size_t> semi_witness;
};

struct Check {
  std::string name;
  std::optional<Elt> x;
  bool predicted = false;
  bool observed = false;

  bool agrees() const { return predicted == observed; }
};

struct CrosscheckReport {
  std::vector<Check> checks;

  std::size_t disagreements() const;
  bool consistent() const { return disagreements() == 0; }
};

struct AbelianReport {
  MatGroup group;
  MatGroup commutator;
  std::vector<Coset> cosets;
  std::vector<std::vector<Elt>> coset_traces;  // distinct traces per coset, ascending
  std::vector<Elt> proper;
  std::vector<ClassVerdict> per_class;  // parallel to proper
  bool totally = false;
  Rational density{0};
  DicksonClass dickson;
  std::vector<Elt> determinants;
  CrosscheckReport crosscheck;

  bool consistent() const { return crosscheck.consistent(); }
  const ClassVerdict& verdict(Elt x) const;
};

AbelianReport analyze(const MatGroup& G);

/// Predicted semi(x) for the label of the report, where one is made.
std::optional<bool> predicted_semi(const AbelianReport& r, Elt x);

/// Recomputes every theorem-level prediction for the report's group and
/// compares it with the coset-trace verdicts.
CrosscheckReport theorem_crosscheck(const AbelianReport& r);
inline CrosscheckReport theorem_crosscheck(const MatGroup& G) { return analyze(G).crosscheck; }

enum class BoundCase { Borel, DihedralWeak, D2 };

std::string to_string(BoundCase c);

struct ModulusBound {
  std::int64_t N = 0;
  std::int64_t ell = 0;
  BoundCase kind = BoundCase::Borel;
  std::int64_t radical = 0;  // rad(N ell)
  std::int64_t factor = 0;   // second factor of the bound, per case
  std::int64_t bound = 0;
  std::vector<PrimePower> decomposition;
};

/// rad(N ell) times gcd(2 exp, primes of N ell) for Borel images, times
/// gcd(2, N ell)^2 for the dihedral weak case and gcd(2, N)^2 for D_2.
/// exponent is the exponent of the semisimplified image (Borel case only).
ModulusBound modulus_bound(std::int64_t N, std::int64_t ell, BoundCase kind, std::uint64_t exponent = 0);

/// Exponent of the diagonal part of G after conjugating into the Borel
/// subgroup. Throws std::invalid_argument if G is not Borel-conjugable.
std::uint64_t semisimple_exponent(const MatGroup& G);

/// Bound for the image G itself. The case must match the classification:
/// Borel needs a Borel-conjugable image, DihedralWeak a dihedral one with
/// n > 1 prime to ell, and D2 the Klein four group with ell odd.
ModulusBound modulus_bound(const MatGroup& G, std::int64_t N, BoundCase kind);

/// The case the classification calls for, if any.
std::optional<BoundCase> natural_bound_case(const DicksonClass& cls);

}  // namespace apcong
