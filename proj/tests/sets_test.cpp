#include <gtest/gtest.h>

#include <set>

#include "idealis/sets.hpp"
#include "support.hpp"

namespace idealis {
namespace {

const GroundSet kPlane{GroundKind::OmegaSquared};
const GroundSet kDelta{GroundKind::Delta};
const GroundSet kOmega{GroundKind::Omega};

TEST(Pairing, FormulaValues) {
  EXPECT_EQ(pair_encode(0, 0), 0u);
  EXPECT_EQ(pair_encode(1, 0), 1u);
  EXPECT_EQ(pair_encode(0, 1), 2u);
  EXPECT_EQ(pair_decode(5), (std::pair<Natural, Natural>{0, 2}));
}

TEST(Pairing, BijectiveOnSmallSquare) {
  std::set<Natural> seen;
  for (Natural n = 0; n < 256; ++n)
    for (Natural m = 0; m < 256; ++m) {
      const Natural k = pair_encode(n, m);
      EXPECT_TRUE(seen.insert(k).second);
      ASSERT_EQ(pair_decode(k), (std::pair<Natural, Natural>{n, m}));
    }
  // decode∘encode on a code prefix as well
  for (Natural k = 0; k < 100000; ++k) {
    auto [n, m] = pair_decode(k);
    ASSERT_EQ(pair_encode(n, m), k);
  }
}

TEST(Pairing, LargeCodesRoundTrip) {
  for (Natural n : {Natural{1} << 20, Natural{3000000000}})
    for (Natural m : {Natural{0}, Natural{7}, Natural{1} << 30}) {
      auto [a, b] = pair_decode(pair_encode(n, m));
      EXPECT_EQ(a, n);
      EXPECT_EQ(b, m);
    }
  EXPECT_THROW(pair_encode(Natural{12345678901}, Natural{1} << 30), Error);
}

TEST(QStrings, LengthLexCodec) {
  EXPECT_EQ(qstring_decode(0), "");
  EXPECT_EQ(qstring_decode(1), "0");
  EXPECT_EQ(qstring_decode(2), "1");
  EXPECT_EQ(qstring_decode(3), "00");
  for (Natural k = 0; k < 5000; ++k) {
    ASSERT_EQ(qstring_code(qstring_decode(k)), k);
    ASSERT_EQ(qstring_code_big(qstring_decode(k)), BigNat(k));
    ASSERT_EQ(qstring_decode_big(BigNat(k)), qstring_decode(k));
  }
  for (Natural k = 1; k < 2000; ++k) EXPECT_TRUE(qstring_less(qstring_decode(k - 1), qstring_decode(k)));
}

TEST(FunctionSpec, TableThenAffineTail) {
  FunctionSpec f{{5, 0, 9}, 2, 1, 3};
  EXPECT_EQ(f(0), 5u);
  EXPECT_EQ(f(2), 9u);
  EXPECT_EQ(f(3), 7u);
  EXPECT_EQ(f(10), 21u);
  FunctionSpec bad{{1}, 0, 0, 2};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(FunctionSpec, DominationCutoff) {
  auto c = domination_cutoff(FunctionSpec::affine(1, 5), FunctionSpec::affine(2, 0));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, 5u);
  EXPECT_FALSE(domination_cutoff(FunctionSpec::affine(2, 0), FunctionSpec::affine(1, 100)));
  EXPECT_EQ(*domination_cutoff(FunctionSpec::identity(), FunctionSpec::identity()), 0u);
  FunctionSpec f{{9, 9}, 1, 0, 2};
  EXPECT_EQ(*domination_cutoff(f, FunctionSpec::affine(1, 1)), 2u);
}

TEST(SymbolicMember, ColumnContainsItsPoints) {
  EXPECT_TRUE(symbolic_member(SymbolicSet::column(kPlane, 2), pair_encode(2, 7)));
  EXPECT_FALSE(symbolic_member(SymbolicSet::column(kPlane, 2), pair_encode(3, 7)));
}

TEST(SymbolicMember, BelowGraphOfIdentity) {
  EXPECT_FALSE(symbolic_member(SymbolicSet::below_graph(kPlane, FunctionSpec::identity()), pair_encode(3, 5)));
  EXPECT_TRUE(symbolic_member(SymbolicSet::below_graph(kPlane, FunctionSpec::identity()), pair_encode(5, 3)));
}

TEST(SymbolicMember, DifferenceOfCofinite) {
  auto s = SymbolicSet::cofinite(kOmega) - SymbolicSet::finite(kOmega, {4});
  EXPECT_FALSE(symbolic_member(s, 4));
  EXPECT_TRUE(symbolic_member(s, 5));
}

TEST(SymbolicMember, DeltaFiltersUpperPoints) {
  auto s = SymbolicSet::whole(kDelta);
  EXPECT_TRUE(symbolic_member(s, pair_encode(3, 3)));
  EXPECT_FALSE(symbolic_member(s, pair_encode(3, 4)));
}

TEST(SymbolicMember, InBlocksUsesBlockCoordinates) {
  // second element of every block of the triangular partition
  auto s = SymbolicSet::in_blocks(IntervalPartition::triangular(),
                                  SymbolicSet::graph(kPlane, FunctionSpec::constant(1)));
  EXPECT_FALSE(symbolic_member(s, 0));  // block 0 has one element
  EXPECT_TRUE(symbolic_member(s, 2));
  EXPECT_TRUE(symbolic_member(s, 4));
  EXPECT_FALSE(symbolic_member(s, 5));
}

TEST(SymbolicSet, RejectsMalformedPresentations) {
  EXPECT_THROW(SymbolicSet::column(kOmega, 1), Error);
  EXPECT_THROW(SymbolicSet::graph(kPlane, FunctionSpec{{}, 1, 0, 3}), Error);
  DFA d = DFA::all();
  d.delta[0][1] = 4;
  EXPECT_THROW(SymbolicSet::regular(d), Error);
  EXPECT_THROW(SymbolicSet::column(kPlane, 1) | SymbolicSet::whole(kOmega), Error);
}

TEST(SymbolicSet, DepthCap) {
  auto s = SymbolicSet::column(kPlane, 0);
  for (int i = 0; i < 31; ++i) s = s | SymbolicSet::column(kPlane, static_cast<Natural>(i));
  EXPECT_EQ(s.depth(), 32u);
  EXPECT_THROW(s | s, Error);
}

TEST(Truncate, Examples) {
  EXPECT_EQ(truncate(SymbolicSet::finite(kOmega, {1, 5, 9}), 6), (std::vector<Natural>{1, 5}));
  auto g = truncate(SymbolicSet::graph(kPlane, FunctionSpec::affine(2, 0)), pair_encode(1, 2) + 1);
  EXPECT_NE(std::find(g.begin(), g.end(), pair_encode(1, 2)), g.end());
  EXPECT_TRUE(truncate(SymbolicSet::whole(kPlane), 0).empty());
}

TEST(Truncate, MonotoneInN) {
  auto s = SymbolicSet::below_graph(kPlane, FunctionSpec::identity()) - SymbolicSet::column(kPlane, 3);
  auto small = truncate(s, 300);
  auto large = truncate(s, 900);
  EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
}

TEST(TruncateProperty, EnumeratorAgreesWithDecider) {
  testing::Rng rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const GroundSet g = trial % 2 ? kPlane : kDelta;
    auto s = testing::random_planar_set(rng, g);
    const Natural N = Natural{1} << 12;
    ASSERT_EQ(truncate(s, N), testing::scan(s, N)) << "trial " << trial;
  }
}

TEST(TruncateProperty, OmegaPresentationsAgree) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = SymbolicSet::periodic(testing::random_name(rng)) - SymbolicSet::finite(kOmega, {1, 2, 3});
    if (trial % 3 == 0)
      s = s | SymbolicSet::in_blocks(IntervalPartition::triangular(),
                                     SymbolicSet::below_graph(kPlane, testing::random_function(rng)));
    ASSERT_EQ(truncate(s, 4096), testing::scan(s, 4096));
  }
}

TEST(TruncateProperty, DeMorganOnTruncations) {
  testing::Rng rng(99);
  const Natural N = Natural{1} << 10;
  for (int trial = 0; trial < 60; ++trial) {
    auto a = testing::random_planar_set(rng, kPlane, 3);
    auto b = testing::random_planar_set(rng, kPlane, 3);
    auto all = SymbolicSet::whole(kPlane);
    EXPECT_EQ(truncate(all - (a | b), N), truncate((all - a) & (all - b), N));
    EXPECT_EQ(truncate(all - (a & b), N), truncate((all - a) | (all - b), N));
    EXPECT_EQ(truncate(a - b, N), truncate(a & (all - b), N));
  }
}

}  // namespace
}  // namespace idealis
