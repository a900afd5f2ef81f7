#pragma once

// Empirical congruence discovery over an ApDataset. Everything here is a
// statement about the finite sample, never a proof.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apcong/eigendata.hpp"

namespace apcong {

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimum samples per residue class before an iff may be reported.
inline constexpr std::size_t kMinSamplesForIff = 5;

/// implied_by: p mod M in S_sup forces a_p = x (weak shape).
/// implies:    a_p = x forces p mod M in S_nec, a proper subset (semi shape).
/// both:       both shapes, but S_sup != S_nec or too few samples for iff.
enum class Direction { none, implies, implied_by, both, iff };

std::string to_string(Direction d);

struct ClassDiscovery {
  std::uint32_t x = 0;
  std::vector<std::int64_t> sup;  // residues whose samples all have a_p = x
  std::vector<std::int64_t> nec;  // residues with at least one sample a_p = x
  Direction direction = Direction::none;
  std::size_t violations = 0;     // samples a_p != x at residues in nec \ sup
  std::size_t occurrences = 0;    // samples with a_p = x
};

struct CongruenceReport {
  std::string source;
  std::int64_t ell = 0;
  std::int64_t modulus = 1;
  std::size_t samples = 0;          // samples coprime to the modulus
  std::size_t min_class_samples = 0;
  std::vector<std::int64_t> residues;  // (Z/M)^x, ascending
  std::vector<ClassDiscovery> classes;
};

/// Residues mod M coprime to M, ascending; {0} for M = 1.
std::vector<std::int64_t> unit_residues(std::int64_t M);

/// Throws InsufficientData if some unit residue mod M has no sample.
ClassDiscovery discover(const ApDataset& ds, std::uint32_t x, std::int64_t M);
/// Every class that occurs in the data.
CongruenceReport discover_all(const ApDataset& ds, std::int64_t M);

/// Least divisor M of bound at which class x is iff; divisors with
/// insufficient data are skipped.
std::optional<std::int64_t> discover_modulus(const ApDataset& ds, std::uint32_t x, std::int64_t bound);

struct LegendreFit {
  std::int64_t D = 0;
  std::size_t support = 0;      // samples with (D/p) = -1
  std::size_t one_way = 0;      // (D/p) = -1 but a_p != x
  std::size_t converse = 0;     // a_p = x but (D/p) != -1
  bool fits() const { return support > 0 && one_way == 0; }
  bool iff() const { return fits() && converse == 0; }
};

/// +-d for each divisor d of bound, except +1.
std::vector<std::int64_t> legendre_candidates(std::int64_t bound);

LegendreFit legendre_test(const ApDataset& ds, std::uint32_t x, std::int64_t D);
/// Candidates for which (D/p) = -1 => a_p = x holds on the sample.
std::vector<LegendreFit> legendre_fit(const ApDataset& ds, std::uint32_t x, const std::vector<std::int64_t>& candidates);

struct GoodmodResult {
  std::size_t zero_but_square = 0;      // a_p = 0 while (p/ell) != -1
  std::size_t nonsquare_but_nonzero = 0;  // (p/ell) = -1 while a_p != 0
  std::size_t samples = 0;
  bool holds() const { return zero_but_square == 0 && nonsquare_but_nonzero == 0; }
};

/// a_p = 0 mod ell iff (p/ell) = -1, counted in both directions.
GoodmodResult goodmod_check(const ApDataset& ds);

/// A printed congruence statement to check against data.
struct Claim {
  enum class Kind {
    class_to_residues,  // a_p in classes => p mod M in residues (or iff)
    residue_to_traces,  // p mod M = r => a_p in traces[r]
    legendre,           // (D_1/p) = -1 or ... => a_p = x (or iff)
    excludes            // a_p in classes => p mod M not in residues
  };

  std::string id;
  std::string curve;
  std::int64_t ell = 0;
  Kind kind = Kind::class_to_residues;
  std::int64_t modulus = 1;
  std::vector<std::uint32_t> classes;
  std::vector<std::int64_t> residues;
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> rows;  // residue_to_traces
  std::vector<std::int64_t> discriminants;
  bool iff = false;
  bool require_converse_failure = false;
  std::int64_t min_p = 0;
};

std::string to_string(Claim::Kind k);

struct ClaimResult {
  std::string id;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t converse_failures = 0;   // only tracked for one-way claims
  std::optional<std::int64_t> first_converse_failure;
  bool passed = false;
  std::string detail;
};

ClaimResult verify_claim(const Claim& claim, const ApDataset& ds);

}  // namespace apcong
