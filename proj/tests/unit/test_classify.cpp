#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "apcong/classify.hpp"
#include "apcong_cli/oracle.hpp"
#include "support/groups.hpp"
#include "support/oracles.hpp"

using namespace apcong;

namespace {

bool has_label(const DicksonClass& c, DicksonLabel l) {
  return std::find(c.all_applicable.begin(), c.all_applicable.end(), l) != c.all_applicable.end();
}

// Brute force: some M in GL_2(K) with M^-1 g M upper triangular for every
// generator g.
bool brute_borel(const MatGroup& G) {
  const FieldEmbedding e = quadratic_extension(G.spec());
  const FieldSpec& K = e.large;
  std::vector<Mat2> gens;
  for (const Mat2& g : G.generators()) gens.push_back(Mat2{e(g.a), e(g.b), e(g.c), e(g.d)});
  for (const Mat2& M : testgroups::matrices_where(K, [](const Mat2&) { return true; })) {
    const Mat2 Mi = inverse(K, M);
    bool ok = true;
    for (const Mat2& g : gens) ok = ok && mul(K, mul(K, Mi, g), M).c.code == 0;
    if (ok) return true;
  }
  return false;
}

std::map<std::uint64_t, std::size_t> projective_order_stats(const ProjGroup& P) {
  std::map<std::uint64_t, std::size_t> out;
  for (const Mat2& m : P.classes()) ++out[P.element_order(m)];
  return out;
}

}  // namespace

TEST(Classify, FullLinearGroups) {
  const auto c2 = classify(testgroups::gl2(FieldSpec::make(2)));
  EXPECT_EQ(c2.label, (DicksonLabel{DicksonKind::Dihedral, 3}));
  EXPECT_TRUE(has_label(c2, {DicksonKind::PGL2, 2}));
  const auto c3 = classify(testgroups::gl2(FieldSpec::make(3)));
  EXPECT_EQ(c3.label.kind, DicksonKind::S4);
  EXPECT_TRUE(has_label(c3, {DicksonKind::PGL2, 3}));
  EXPECT_EQ(classify(testgroups::gl2(FieldSpec::make(5))).label, (DicksonLabel{DicksonKind::PGL2, 5}));
  EXPECT_EQ(classify(testgroups::gl2(FieldSpec::make(7))).label, (DicksonLabel{DicksonKind::PGL2, 7}));
  EXPECT_EQ(classify(testgroups::gl2(FieldSpec::make(2, 2))).label, (DicksonLabel{DicksonKind::PGL2, 4}));
  EXPECT_EQ(classify(testgroups::gl2(FieldSpec::make(3, 2))).label, (DicksonLabel{DicksonKind::PGL2, 9}));
}

TEST(Classify, SpecialLinearGroups) {
  const auto s3 = classify(testgroups::sl2(FieldSpec::make(3)));
  EXPECT_EQ(s3.label.kind, DicksonKind::A4);
  EXPECT_TRUE(has_label(s3, {DicksonKind::PSL2, 3}));
  const auto s5 = classify(testgroups::sl2(FieldSpec::make(5)));
  EXPECT_EQ(s5.label, (DicksonLabel{DicksonKind::PSL2, 5}));
  EXPECT_TRUE(has_label(s5, {DicksonKind::A5, 0}));
  EXPECT_EQ(classify(testgroups::sl2(FieldSpec::make(7))).label, (DicksonLabel{DicksonKind::PSL2, 7}));
  EXPECT_EQ(classify(testgroups::sl2(FieldSpec::make(3, 2))).label, (DicksonLabel{DicksonKind::PSL2, 9}));
}

TEST(Classify, SubfieldImages) {
  const FieldSpec F25 = FieldSpec::make(5, 2);
  const FieldSpec F5 = FieldSpec::make(5);
  // prime-field codes embed as is
  const auto c = classify(close_group(F25, testgroups::gl2(F5).generators()));
  EXPECT_EQ(c.label, (DicksonLabel{DicksonKind::PGL2, 5}));
  EXPECT_EQ(classify(close_group(F25, testgroups::sl2(F5).generators())).label, (DicksonLabel{DicksonKind::PSL2, 5}));
}

TEST(Classify, BorelRoutesAgreeWithBruteForce) {
  for (std::int64_t q : {2, 3}) {
    for (const MatGroup& G : cli::enumerate_subgroups(FieldSpec::make(q)).subgroups) {
      const BorelResult r = is_borel_conjugable(G);
      ASSERT_EQ(r.conjugable, brute_borel(G));
      if (!r.conjugable) continue;
      ASSERT_TRUE(r.witness.has_value());
      const FieldEmbedding& e = r.witness->embedding;
      const Mat2 B = r.witness->basis, Bi = inverse(e.large, B);
      for (const Mat2& g : G.generators()) {
        const Mat2 h = mul(e.large, mul(e.large, Bi, Mat2{e(g.a), e(g.b), e(g.c), e(g.d)}), B);
        ASSERT_EQ(h.c.code, 0u);
      }
      ASSERT_EQ(classify(G).label.kind, DicksonKind::BorelConjugable);
    }
  }
}

TEST(Classify, CyclicImagesAreBorelFirst) {
  const FieldSpec F = FieldSpec::make(7);
  // a + b sqrt(3) with 3 a non-square mod 7: a nonsplit Cartan generator
  const MatGroup G = close_group(F, {make_mat(F, 1, 3, 1, 1)});
  const auto c = classify(G);
  EXPECT_EQ(c.label.kind, DicksonKind::BorelConjugable);
  EXPECT_TRUE(std::any_of(c.all_applicable.begin(), c.all_applicable.end(),
                          [](const DicksonLabel& l) { return l.kind == DicksonKind::Cyclic; }));
}

TEST(Classify, DihedralFromCartanNormalisers) {
  for (std::int64_t q : {5, 7}) {
    const FieldSpec F = FieldSpec::make(q);
    const auto split = classify(testgroups::split_cartan_normaliser(F));
    EXPECT_EQ(split.label, (DicksonLabel{DicksonKind::Dihedral, static_cast<std::uint64_t>(q - 1)}));
    EXPECT_TRUE(split.rotation.has_value());
    const auto nonsplit = classify(testgroups::nonsplit_cartan_normaliser(F));
    EXPECT_EQ(nonsplit.label, (DicksonLabel{DicksonKind::Dihedral, static_cast<std::uint64_t>(q + 1)}));
    EXPECT_EQ(nonsplit.dihedral_n(), std::optional<std::uint64_t>(q + 1));
    EXPECT_TRUE(nonsplit.coprime_dihedral());
  }
}

TEST(Classify, ExceptionalElementOrderStatistics) {
  using Stats = std::map<std::uint64_t, std::size_t>;
  const auto a4 = testgroups::find_sl2_subgroup(FieldSpec::make(7), 24, DicksonKind::A4);
  ASSERT_TRUE(a4);
  EXPECT_EQ(projective_order_stats(ProjGroup(*a4)), (Stats{{1, 1}, {2, 3}, {3, 8}}));
  EXPECT_EQ(projective_order_stats(ProjGroup(testgroups::gl2(FieldSpec::make(3)))),
            (Stats{{1, 1}, {2, 9}, {3, 8}, {4, 6}}));
  const auto a5 = testgroups::find_sl2_subgroup(FieldSpec::make(11), 120, DicksonKind::A5);
  ASSERT_TRUE(a5);
  EXPECT_EQ(projective_order_stats(ProjGroup(*a5)), (Stats{{1, 1}, {2, 15}, {3, 20}, {5, 24}}));
}

TEST(Classify, TracelessCountMatchesBruteCount) {
  for (std::int64_t q : {3, 5, 7}) {
    const ProjGroup P(testgroups::gl2(FieldSpec::make(q)));
    std::size_t brute = 0;
    for (const Mat2& m : P.classes()) brute += trace(P.spec(), m).code == 0;
    EXPECT_EQ(traceless_count(P), brute);
    EXPECT_EQ(brute, static_cast<std::size_t>(q * q));
  }
}

TEST(Classify, GoldenRatioAndGroupOrders) {
  for (std::int64_t p : {3, 7, 11, 19, 29}) {
    const FieldSpec F = FieldSpec::make(p);
    const auto phi = golden_ratio(F);
    if (!phi) continue;  // sqrt(5) may need F_{p^2}
    EXPECT_EQ(F.mul(*phi, *phi), F.add(*phi, F.one()));
  }
  EXPECT_FALSE(golden_ratio(FieldSpec::make(2)).has_value());
  EXPECT_EQ(golden_ratio(FieldSpec::make(5)), Elt{3});
  const auto phi9 = golden_ratio(FieldSpec::make(3, 2));
  ASSERT_TRUE(phi9);
  const FieldSpec F9 = FieldSpec::make(3, 2);
  EXPECT_EQ(F9.mul(*phi9, *phi9), F9.add(*phi9, F9.one()));
  EXPECT_EQ(psl2_order(5), 60u);
  EXPECT_EQ(psl2_order(8), 504u);
  EXPECT_EQ(pgl2_order(7), 336u);
}

TEST(Classify, CommutatorTraceSetsMatchBruteForce) {
  for (const MatGroup& G : cli::enumerate_subgroups(FieldSpec::make(3)).subgroups) {
    const auto got = commutator_trace_set(G);
    std::set<Elt> brute;
    for (const Mat2& m : oracle::derived_subgroup(G.spec(), G.elements())) brute.insert(trace(G.spec(), m));
    ASSERT_EQ(std::set<Elt>(got.begin(), got.end()), brute);
  }
}

TEST(Classify, LabelFormatting) {
  EXPECT_EQ((DicksonLabel{DicksonKind::PSL2, 9}).to_string(), "PSL2(F_9)");
  EXPECT_EQ((DicksonLabel{DicksonKind::Dihedral, 4}).to_string(), "Dihedral(4)");
  EXPECT_EQ((DicksonLabel{DicksonKind::A5, 0}).to_string(), "A5");
}
