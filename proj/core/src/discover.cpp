#include "apcong/discover.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "apcong/numtheory.hpp"

namespace apcong {

namespace {

bool contains(const std::vector<std::int64_t>& v, std::int64_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool contains(const std::vector<std::uint32_t>& v, std::uint32_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

struct ResidueTally {
  std::vector<std::int64_t> residues;
  std::map<std::int64_t, std::size_t> total;
  std::map<std::int64_t, std::size_t> hits;
  std::size_t samples = 0;
};

ResidueTally tally(const ApDataset& ds, std::uint32_t x, std::int64_t M) {
  if (M < 1) throw std::invalid_argument("modulus must be positive");
  ResidueTally t{unit_residues(M), {}, {}, 0};
  for (const ApSample& s : ds.samples) {
    if (gcd64(s.p, M) != 1) continue;
    const std::int64_t r = s.p % M;
    ++t.total[r];
    if (s.ap == x) ++t.hits[r];
    ++t.samples;
  }
  for (std::int64_t r : t.residues) {
    if (t.total[r] == 0) {
      throw InsufficientData("no sample with p = " + std::to_string(r) + " mod " + std::to_string(M));
    }
  }
  return t;
}

}  // namespace

std::string to_string(Direction d) {
  switch (d) {
    case Direction::none:
      return "none";
    case Direction::implies:
      return "implies";
    case Direction::implied_by:
      return "implied_by";
    case Direction::both:
      return "both";
    case Direction::iff:
      return "iff";
  }
  return "?";
}

std::vector<std::int64_t> unit_residues(std::int64_t M) {
  if (M < 1) throw std::invalid_argument("modulus must be positive");
  if (M == 1) return {0};
  std::vector<std::int64_t> out;
  for (std::int64_t r = 1; r < M; ++r) {
    if (gcd64(r, M) == 1) out.push_back(r);
  }
  return out;
}

ClassDiscovery discover(const ApDataset& ds, std::uint32_t x, std::int64_t M) {
  const ResidueTally t = tally(ds, x, M);
  ClassDiscovery out;
  out.x = x;
  std::size_t fewest = SIZE_MAX;
  for (std::int64_t r : t.residues) {
    const std::size_t total = t.total.at(r);
    const auto it = t.hits.find(r);
    const std::size_t hits = it == t.hits.end() ? 0 : it->second;
    fewest = std::min(fewest, total);
    out.occurrences += hits;
    if (hits == total) out.sup.push_back(r);
    if (hits > 0) out.nec.push_back(r);
    if (hits > 0 && hits < total) out.violations += total - hits;
  }
  if (out.occurrences == 0) return out;
  const bool weak = !out.sup.empty();
  const bool semi = out.nec.size() < t.residues.size();
  if (out.sup == out.nec && fewest >= kMinSamplesForIff) {
    out.direction = Direction::iff;
  } else if (weak && semi) {
    out.direction = Direction::both;
  } else if (weak) {
    out.direction = Direction::implied_by;
  } else if (semi) {
    out.direction = Direction::implies;
  }
  return out;
}

CongruenceReport discover_all(const ApDataset& ds, std::int64_t M) {
  CongruenceReport rep;
  rep.source = ds.source;
  rep.ell = ds.ell();
  rep.modulus = M;
  rep.residues = unit_residues(M);
  std::set<std::uint32_t> seen;
  for (const ApSample& s : ds.samples) seen.insert(s.ap);
  for (std::uint32_t x : seen) rep.classes.push_back(discover(ds, x, M));
  const ResidueTally t = tally(ds, 0, M);
  rep.samples = t.samples;
  rep.min_class_samples = SIZE_MAX;
  for (const auto& [r, n] : t.total) rep.min_class_samples = std::min(rep.min_class_samples, n);
  if (rep.residues.empty()) rep.min_class_samples = 0;
  return rep;
}

std::optional<std::int64_t> discover_modulus(const ApDataset& ds, std::uint32_t x, std::int64_t bound) {
  for (std::int64_t M : divisors(bound)) {
    try {
      if (discover(ds, x, M).direction == Direction::iff) return M;
    } catch (const InsufficientData&) {
      continue;
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> legendre_candidates(std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t d : divisors(bound)) {
    if (d != 1) out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

LegendreFit legendre_test(const ApDataset& ds, std::uint32_t x, std::int64_t D) {
  if (D == 0) throw std::invalid_argument("discriminant must be nonzero");
  LegendreFit f;
  f.D = D;
  for (const ApSample& s : ds.samples) {
    const bool nonsquare = kronecker(D, s.p) == -1;
    if (nonsquare) {
      ++f.support;
      if (s.ap != x) ++f.one_way;
    } else if (s.ap == x) {
      ++f.converse;
    }
  }
  return f;
}

std::vector<LegendreFit> legendre_fit(const ApDataset& ds, std::uint32_t x, const std::vector<std::int64_t>& candidates) {
  std::vector<LegendreFit> out;
  for (std::int64_t D : candidates) {
    LegendreFit f = legendre_test(ds, x, D);
    if (f.fits()) out.push_back(f);
  }
  return out;
}

GoodmodResult goodmod_check(const ApDataset& ds) {
  const std::int64_t ell = ds.ell();
  if (ell == 2) throw std::invalid_argument("the quadratic-residue criterion needs odd ell");
  GoodmodResult g;
  for (const ApSample& s : ds.samples) {
    ++g.samples;
    const bool nonsquare = legendre(s.p, ell) == -1;
    if (s.ap == 0 && !nonsquare) ++g.zero_but_square;
    if (s.ap != 0 && nonsquare) ++g.nonsquare_but_nonzero;
  }
  return g;
}

std::string to_string(Claim::Kind k) {
  switch (k) {
    case Claim::Kind::class_to_residues:
      return "class_to_residues";
    case Claim::Kind::residue_to_traces:
      return "residue_to_traces";
    case Claim::Kind::legendre:
      return "legendre";
    case Claim::Kind::excludes:
      return "excludes";
  }
  return "?";
}

ClaimResult verify_claim(const Claim& claim, const ApDataset& ds) {
  if (claim.ell != ds.ell()) {
    throw std::invalid_argument("claim " + claim.id + " is about ell = " + std::to_string(claim.ell) +
                                " but the data is mod " + std::to_string(ds.ell()));
  }
  if (claim.modulus < 1) throw std::invalid_argument("claim " + claim.id + " has a non-positive modulus");
  ClaimResult res;
  res.id = claim.id;
  auto note_converse = [&](std::int64_t p) {
    ++res.converse_failures;
    if (!res.first_converse_failure) res.first_converse_failure = p;
  };
  auto violation = [&](std::int64_t p, const std::string& why) {
    if (res.violations++ == 0) res.detail = "first violation at p = " + std::to_string(p) + ": " + why;
  };

  for (const ApSample& s : ds.samples) {
    if (s.p < claim.min_p) continue;
    if (claim.kind != Claim::Kind::legendre && gcd64(s.p, claim.modulus) != 1) continue;
    ++res.checked;
    const std::int64_t r = s.p % claim.modulus;
    const bool in_class = contains(claim.classes, s.ap);
    switch (claim.kind) {
      case Claim::Kind::class_to_residues: {
        const bool in_residues = contains(claim.residues, r);
        if (in_class && !in_residues) violation(s.p, "class occurs outside the residues");
        if (in_residues && !in_class) {
          if (claim.iff) {
            violation(s.p, "residue without the class");
          } else {
            note_converse(s.p);
          }
        }
        break;
      }
      case Claim::Kind::residue_to_traces: {
        const auto row = std::find_if(claim.rows.begin(), claim.rows.end(), [r](const auto& rw) { return rw.first == r; });
        if (row == claim.rows.end()) {
          violation(s.p, "no row for residue " + std::to_string(r));
          break;
        }
        const bool allowed = std::any_of(row->second.begin(), row->second.end(),
                                         [&](std::int64_t t) { return mod_floor(t, claim.ell) == s.ap; });
        if (!allowed) violation(s.p, "a_p = " + std::to_string(s.ap) + " not in the row");
        break;
      }
      case Claim::Kind::legendre: {
        const bool nonsquare = std::any_of(claim.discriminants.begin(), claim.discriminants.end(),
                                           [&](std::int64_t D) { return kronecker(D, s.p) == -1; });
        if (nonsquare && !in_class) violation(s.p, "symbol is -1 but the class is missed");
        if (in_class && !nonsquare) {
          if (claim.iff) {
            violation(s.p, "class occurs with every symbol != -1");
          } else {
            note_converse(s.p);
          }
        }
        break;
      }
      case Claim::Kind::excludes:
        if (in_class && contains(claim.residues, r)) violation(s.p, "class occurs at an excluded residue");
        break;
    }
  }
  res.passed = res.violations == 0 && res.checked > 0 && (!claim.require_converse_failure || res.converse_failures > 0);
  if (res.passed) {
    res.detail = "0 violations";
  } else if (res.violations == 0 && res.checked == 0) {
    res.detail = "no samples";
  } else if (res.violations == 0) {
    res.detail = "converse never fails";
  }
  return res;
}

}  // namespace apcong
