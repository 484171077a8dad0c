#include <gtest/gtest.h>

#include "idealis/ideals.hpp"
#include "support.hpp"

namespace idealis {
namespace {

const GroundSet kPlane{GroundKind::OmegaSquared};
const GroundSet kDelta{GroundKind::Delta};
const GroundSet kOmega{GroundKind::Omega};
const GroundSet kQ{GroundKind::QStrings};

SymbolicSet triangle_in_plane() { return SymbolicSet::below_graph(kPlane, FunctionSpec::identity()); }

TEST(IntervalSet, BooleanAlgebra) {
  auto a = IntervalSet::range(2, 10), b = IntervalSet::points({4, 5, 12});
  EXPECT_EQ(IntervalSet::combine(a, b, BoolOp::Difference).size(), 6u);
  EXPECT_EQ(IntervalSet::combine(a, b, BoolOp::Union).size(), 9u);
  EXPECT_EQ(IntervalSet::combine(a, b, BoolOp::Intersection), IntervalSet::range(4, 6));
  EXPECT_EQ(IntervalSet::all().size(), kInfinity);
  EXPECT_EQ(*IntervalSet::combine(IntervalSet::all(), a, BoolOp::Difference).max(), kInfinity);
  EXPECT_EQ(IntervalSet::combine(a, b, BoolOp::Union).nth(3), 5u);
}

TEST(Sections, AffineTails) {
  auto s = SymbolicSet::below_graph(kPlane, FunctionSpec::affine(1, 3)) -
           SymbolicSet::below_graph(kPlane, FunctionSpec::constant(4));
  auto v = SectionView::planar(s);
  auto tails = v.size_tails();
  ASSERT_EQ(tails.size(), 1u);
  EXPECT_EQ(tails[0].slope, 1u);
  for (Natural n = v.threshold(); n < v.threshold() + 20; ++n) EXPECT_EQ(v.section(n).size(), tails[0].at(n));
}

TEST(Sections, ResidueClassesFromColumnSets) {
  auto s = SymbolicSet::column_set(kPlane, GeneratorName("1", "01")) |
           SymbolicSet::graph(kPlane, FunctionSpec::identity());
  auto v = SectionView::planar(s);
  EXPECT_EQ(v.modulus(), 2u);
  int infinite = 0;
  for (const auto& t : v.size_tails()) infinite += t.infinite ? 1 : 0;
  EXPECT_EQ(infinite, 1);
}

TEST(Decide, ColumnPlusGraphIsEDMember) {
  auto s = SymbolicSet::column(kPlane, 3) | SymbolicSet::graph(kPlane, FunctionSpec::identity());
  auto v = decide(IdealId::ed(), s);
  ASSERT_TRUE(v.member());
  EXPECT_EQ(v.cover->columns, std::vector<Natural>{3});
  EXPECT_EQ(v.cover->graphs, 1u);
  const Natural k = v.cover->size(IdealKind::ED);
  EXPECT_EQ(k, 2u);
  EXPECT_TRUE(brute_cover_oracle(IdealId::ed(), s, 1 << 10, k));
  EXPECT_TRUE(replay_cover(IdealId::ed(), s, *v.cover, 1 << 10));
}

TEST(Decide, TriangleIsEDPositive) {
  auto s = triangle_in_plane();
  auto v = decide(IdealId::ed(), s);
  ASSERT_TRUE(v.positive());
  EXPECT_EQ(v.witness->tail.slope, 1u);
  for (Natural k = 0; k <= 8; ++k) EXPECT_FALSE(brute_cover_oracle(IdealId::ed(), s, 1 << 10, k));
}

TEST(Decide, TwoPerBlockIsEDPMemberWithTwoSelectors) {
  const auto P = IntervalPartition::triangular();
  auto s = SymbolicSet::in_blocks(P, SymbolicSet::below_graph(kPlane, FunctionSpec::constant(1)));
  auto v = decide(IdealId::edp(P), s);
  ASSERT_TRUE(v.member());
  EXPECT_EQ(v.cover->selectors, 2u);
  EXPECT_TRUE(brute_cover_oracle(IdealId::edp(P), s, 1 << 10, 2));
  EXPECT_FALSE(brute_cover_oracle(IdealId::edp(P), s, 1 << 10, 1));
}

TEST(Decide, EDPRejectsNonIncreasingPartition) {
  EXPECT_THROW(IdealId::edp(IntervalPartition(FunctionSpec::constant(2), false)), Error);
  EXPECT_THROW(IntervalPartition(FunctionSpec::constant(2), true), Error);
}

TEST(Decide, FinXFin) {
  auto below = SymbolicSet::below_graph(kPlane, FunctionSpec::affine(1, 2));
  auto v = decide(IdealId::finxfin(), below | SymbolicSet::column(kPlane, 1));
  ASSERT_TRUE(v.member());
  EXPECT_EQ(v.cover->columns, std::vector<Natural>{1});
  ASSERT_TRUE(v.cover->below);
  for (Natural n = 0; n < 100; ++n) {
    if (n != 1) {
      EXPECT_GE((*v.cover->below)(n), n + 2);
    }
  }
  EXPECT_TRUE(decide(IdealId::finxfin(), SymbolicSet::column_set(kPlane, GeneratorName("", "01"))).positive());
  // ED-positive but Fin×Fin member
  EXPECT_TRUE(decide(IdealId::finxfin(), triangle_in_plane()).member());
}

TEST(Decide, Fin) {
  EXPECT_TRUE(decide(IdealId::fin(), SymbolicSet::finite(kOmega, {1, 5, 9})).member());
  EXPECT_TRUE(decide(IdealId::fin(), SymbolicSet::periodic(GeneratorName("01", "0"))).member());
  EXPECT_TRUE(decide(IdealId::fin(), SymbolicSet::periodic(GeneratorName("", "001"))).positive());
  auto pl = SymbolicSet::graph(kPlane, FunctionSpec::identity()) & SymbolicSet::below_graph(kPlane, FunctionSpec{{2, 2, 2}, 0, 0, 3});
  auto v = decide(IdealId::fin(), pl);
  ASSERT_TRUE(v.member());
  EXPECT_EQ(v.cover->finite, truncate(pl, 1 << 12));
  EXPECT_TRUE(decide(IdealId::fin(), SymbolicSet::column(kPlane, 2)).positive());
  DFA zeros{2, 0, {true, false}, {{0, 1}, {1, 1}}};
  EXPECT_TRUE(decide(IdealId::fin(), SymbolicSet::regular(zeros)).positive());
  auto fq = SymbolicSet::finite(kQ, {3, 7});
  EXPECT_EQ(decide(IdealId::fin(), fq).cover->finite, (std::vector<Natural>{3, 7}));
}

TEST(Decide, NwdDelegatesToRegularDecider) {
  DFA zeros{2, 0, {true, false}, {{0, 1}, {1, 1}}};
  EXPECT_TRUE(decide(IdealId::nwd(), SymbolicSet::regular(zeros)).member());
  auto v = decide(IdealId::nwd(), SymbolicSet::whole(kQ));
  ASSERT_TRUE(v.positive());
  EXPECT_EQ(*v.witness->dense_cone, "");
  EXPECT_THROW(brute_cover_oracle(IdealId::nwd(), SymbolicSet::whole(kQ), 16, 1), Error);
}

TEST(Decide, OutOfClassIsAnError) {
  const auto P = IntervalPartition::triangular();
  auto mixed = SymbolicSet::periodic(GeneratorName("", "01")) |
               SymbolicSet::in_blocks(P, SymbolicSet::column(kPlane, 0));
  try {
    decide(IdealId::edp(P), mixed);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedPresentation);
  }
  auto other = SymbolicSet::in_blocks(IntervalPartition(FunctionSpec::affine(2, 2), true), SymbolicSet::column(kPlane, 0));
  EXPECT_THROW(decide(IdealId::edp(P), other), Error);
  EXPECT_THROW(decide(IdealId::ed(), SymbolicSet::whole(kDelta)), Error);
}

TEST(Oracle, Examples) {
  auto s = SymbolicSet::below_graph(kPlane, FunctionSpec::affine(1, 3)) & SymbolicSet::column_set(kPlane, GeneratorName("", "01"));
  EXPECT_TRUE(brute_cover_oracle(IdealId::fin(), s, 1 << 10, truncate(s, 1 << 10).size()));
  auto delta = triangle_in_plane();
  // N covers columns 0..9 completely
  EXPECT_FALSE(brute_cover_oracle(IdealId::ed(), delta, pair_encode(0, 10), 3));
  EXPECT_TRUE(brute_cover_oracle(IdealId::edfin(), SymbolicSet::column(kDelta, 5), 1 << 10, 1));
  EXPECT_THROW(brute_cover_oracle(IdealId::fin(), s, default_budget() + 1, 1), Error);
}

TEST(Profile, Examples) {
  auto p = positivity_profile(IdealId::ed(), triangle_in_plane(), 40);
  ASSERT_EQ(p.values.size(), 40u);
  for (Natural n = 0; n < 40; ++n) EXPECT_EQ(p.values[n], n + 1);
  const auto P = IntervalPartition::triangular();
  auto sel = positivity_profile(IdealId::edp(P), SymbolicSet::in_blocks(P, SymbolicSet::graph(kPlane, FunctionSpec::constant(0))), 30);
  for (Natural v : sel.values) EXPECT_EQ(v, 1u);
  auto all = positivity_profile(IdealId::finxfin(), SymbolicSet::whole(kPlane), 20);
  for (Natural v : all.values) EXPECT_EQ(v, kInfinity);
  auto ed = decide(IdealId::ed(), triangle_in_plane());
  EXPECT_EQ(ed.profile.values[7], 8u);
}

// Random presentations: decide agrees with the brute-force oracle.
void check_agreement(const IdealId& I, const SymbolicSet& s, const std::string& tag) {
  const Natural N = 1 << 10;
  auto v = decide(I, s);
  ASSERT_NE(v.status, VerdictStatus::Unknown) << tag;
  if (v.member()) {
    const Natural k = v.cover->size(I.kind);
    EXPECT_TRUE(replay_cover(I, s, *v.cover, N)) << tag;
    if (k <= 8) {
      EXPECT_TRUE(brute_cover_oracle(I, s, N, k)) << tag << " k=" << k;
    }
  } else {
    for (Natural k = 0; k <= 8; ++k) EXPECT_FALSE(brute_cover_oracle(I, s, N, k)) << tag << " k=" << k;
  }
}

TEST(OracleAgreement, RandomPlanar) {
  testing::Rng rng(2024);
  for (int trial = 0; trial < 80; ++trial) {
    check_agreement(IdealId::ed(), testing::random_planar_set(rng, kPlane), "ED#" + std::to_string(trial));
    check_agreement(IdealId::edfin(), testing::random_planar_set(rng, kDelta), "EDfin#" + std::to_string(trial));
    check_agreement(IdealId::finxfin(), testing::random_planar_set(rng, kPlane), "FxF#" + std::to_string(trial));
  }
}

TEST(OracleAgreement, RandomBlocks) {
  testing::Rng rng(77);
  const auto P = IntervalPartition::triangular();
  for (int trial = 0; trial < 80; ++trial)
    check_agreement(IdealId::edp(P), testing::random_block_set(rng, P, 3), "EDP#" + std::to_string(trial));
}

TEST(IdealLaws, DownwardClosureAndUnions) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    for (const IdealId& I : {IdealId::ed(), IdealId::finxfin()}) {
      auto a = testing::random_planar_set(rng, kPlane, 3), b = testing::random_planar_set(rng, kPlane, 3);
      const bool ma = decide(I, a).member(), mb = decide(I, b).member();
      if (ma) {
        EXPECT_TRUE(decide(I, a & b).member());
      }
      if (ma && mb) {
        EXPECT_TRUE(decide(I, a | b).member());
      }
    }
  }
}

TEST(IdealLaws, EDfinMembersAreEDMembers) {
  testing::Rng rng(8);
  int members = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto s = testing::random_planar_set(rng, kDelta);
    if (!decide(IdealId::edfin(), s).member()) continue;
    ++members;
    EXPECT_TRUE(decide(IdealId::ed(), delta_as_planar(s)).member());
  }
  EXPECT_GT(members, 10);
}

}  // namespace
}  // namespace idealis
