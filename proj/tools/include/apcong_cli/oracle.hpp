#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "apcong/ffield.hpp"
#include "apcong/matgrp.hpp"

namespace apcong::cli {

/// All elements of GL_2(F), ascending.
std::vector<Mat2> gl2_elements(const FieldSpec& F);

struct SubgroupCensus {
  std::vector<MatGroup> subgroups;  // ordered by order, then elements
  std::size_t closures = 0;
  /// Subgroups reached by closures of at most two generators.
  std::size_t two_generated = 0;
  /// Every subgroup is built from the trivial one by joining one element at
  /// a time, so a list closed under such joins is complete.
  bool complete = false;

  bool all_two_generated() const { return complete && two_generated == subgroups.size(); }
};

/// Closures of at most two generators (one per cyclic subgroup), then joins
/// with single elements until nothing new appears. Rejects fields with
/// |GL_2(F)| above max_gl2.
SubgroupCensus enumerate_subgroups(const FieldSpec& F, std::size_t max_gl2 = 2000);

struct OracleSummary {
  std::size_t subgroups = 0;
  bool complete = false;
  std::size_t checks = 0;
  std::size_t disagreements = 0;
  std::map<std::string, std::size_t> labels;
  std::vector<std::string> failures;  // one line per disagreement

  bool consistent() const { return complete && disagreements == 0; }
};

/// Runs the coset-trace verdicts against every theorem-level prediction for
/// each subgroup in the census.
OracleSummary run_oracle(const SubgroupCensus& census);

}  // namespace apcong::cli
