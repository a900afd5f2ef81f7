#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "apcong/matgrp.hpp"
#include "apcong/numtheory.hpp"
#include "apcong_cli/oracle.hpp"
#include "support/groups.hpp"
#include "support/oracles.hpp"

using namespace apcong;

namespace {

FieldSpec field(std::uint32_t q) {
  const auto f = factorize(q);
  return FieldSpec::make(f[0].first, f[0].second);
}

// Every subgroup of GL_2(F_3) plus a few random ones over F_5.
std::vector<MatGroup> sample_groups() {
  std::vector<MatGroup> out = cli::enumerate_subgroups(FieldSpec::make(3)).subgroups;
  const FieldSpec F5 = FieldSpec::make(5);
  const auto all = cli::gl2_elements(F5);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int i = 0; i < 12; ++i) out.push_back(close_group(F5, {all[pick(rng)], all[pick(rng)]}));
  return out;
}

}  // namespace

TEST(MatGrp, GL2OrdersMatchTheCountingFormula) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const std::uint64_t want = (std::uint64_t{q} * q - 1) * (std::uint64_t{q} * q - q);
    EXPECT_EQ(gl2_order(q), want);
    EXPECT_EQ(testgroups::gl2(field(q)).order(), want) << q;
    EXPECT_EQ(cli::gl2_elements(field(q)).size(), want);
  }
}

TEST(MatGrp, ClosureIsSortedClosedAndHasInverses) {
  for (const MatGroup& G : sample_groups()) {
    const FieldSpec& F = G.spec();
    ASSERT_TRUE(std::is_sorted(G.elements().begin(), G.elements().end()));
    const std::set<Mat2> s(G.elements().begin(), G.elements().end());
    ASSERT_EQ(s.size(), G.order());
    ASSERT_TRUE(G.contains(identity(F)));
    for (const Mat2& x : G.elements()) {
      ASSERT_TRUE(G.contains(inverse(F, x)));
      ASSERT_EQ(mul(F, x, inverse(F, x)), identity(F));
      ASSERT_EQ(G.index_of(x).has_value(), true);
    }
    for (const Mat2& g : G.generators())
      for (const Mat2& x : G.elements()) ASSERT_TRUE(G.contains(mul(F, g, x)));
  }
}

TEST(MatGrp, CommutatorSubgroupMatchesAllCommutatorsOracle) {
  for (const MatGroup& G : sample_groups()) {
    const auto want = oracle::derived_subgroup(G.spec(), G.elements());
    const MatGroup H = commutator_subgroup(G);
    ASSERT_EQ(std::vector<Mat2>(want.begin(), want.end()), H.elements());
    ASSERT_TRUE(H.is_subgroup_of(G));
  }
}

TEST(MatGrp, CosetsPartitionTheGroup) {
  for (const MatGroup& G : sample_groups()) {
    const FieldSpec& F = G.spec();
    const MatGroup H = commutator_subgroup(G);
    const auto cs = cosets(G, H);
    ASSERT_EQ(cs.size() * H.order(), G.order());
    std::set<Mat2> seen;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Coset& c = cs[i];
      ASSERT_EQ(c.members.size(), H.order());
      ASSERT_EQ(c.representative, c.members.front());
      if (i > 0) ASSERT_LT(cs[i - 1].representative, c.representative);
      for (const Mat2& h : H.elements()) ASSERT_TRUE(std::binary_search(c.members.begin(), c.members.end(), mul(F, c.representative, h)));
      for (const Mat2& m : c.members) ASSERT_TRUE(seen.insert(m).second);
    }
    ASSERT_EQ(seen.size(), G.order());
  }
  const MatGroup G = testgroups::gl2(FieldSpec::make(3));
  const MatGroup other = testgroups::gl2(FieldSpec::make(2));
  EXPECT_THROW(cosets(other, G), GroupError);
}

TEST(MatGrp, GuardAndSingularGenerators) {
  const FieldSpec F = FieldSpec::make(7);
  EXPECT_THROW(close_group(F, testgroups::gl2(F).generators(), 100), GroupError);
  EXPECT_THROW(close_group(F, {make_mat(F, 1, 2, 2, 4)}), GroupError);
  EXPECT_EQ(close_group(F, {}).order(), 1u);
}

TEST(MatGrp, ElementOrdersAndExponent) {
  for (const MatGroup& G : sample_groups()) {
    const FieldSpec& F = G.spec();
    std::uint64_t lcm = 1;
    for (const Mat2& m : G.elements()) {
      const std::uint64_t n = element_order(F, m);
      ASSERT_EQ(mat_pow(F, m, n), identity(F));
      for (std::uint64_t k = 1; k < n; ++k) ASSERT_NE(mat_pow(F, m, k), identity(F));
      lcm = std::lcm(lcm, n);
    }
    ASSERT_EQ(group_exponent(G), lcm);
  }
}

TEST(MatGrp, ProjectiveCanonicalForm) {
  const FieldSpec F = FieldSpec::make(3, 2);
  const MatGroup G = testgroups::gl2(F);
  for (std::size_t i = 0; i < G.order(); i += 37) {
    const Mat2 m = G.elements()[i];
    const Mat2 c = projective_canonical(F, m);
    const Elt first = c.a.code != 0 ? c.a : c.b;
    ASSERT_EQ(first, F.one());
    for (std::uint32_t s = 1; s < F.order(); ++s) ASSERT_EQ(projective_canonical(F, scale(F, Elt{s}, m)), c);
  }
}

TEST(MatGrp, ProjectiveGroupOrders) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 9u}) {
    const MatGroup G = testgroups::gl2(field(q));
    const ProjGroup P(G);
    EXPECT_EQ(P.order(), std::uint64_t{q} * (std::uint64_t{q} * q - 1));
    EXPECT_EQ(P.scalar_kernel_size(), q - 1);
    EXPECT_EQ(P.order() * P.scalar_kernel_size(), G.order());
  }
}

TEST(MatGrp, DeterminantsAndTraces) {
  const FieldSpec F = FieldSpec::make(5);
  const MatGroup G = testgroups::gl2(F);
  EXPECT_EQ(determinant_image(G).size(), 4u);
  const MatGroup S = testgroups::sl2(F);
  EXPECT_EQ(determinant_image(S), std::vector<Elt>{F.one()});
  std::size_t total = 0;
  for (const auto& [x, n] : trace_multiset(G)) total += n;
  EXPECT_EQ(total, G.order());
  EXPECT_EQ(trace_multiset(G).at(F.zero()), 5u * 5 * 4);  // q^2 (q - 1) invertible traceless matrices
}
