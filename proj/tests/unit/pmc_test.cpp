#include <gtest/gtest.h>

#include "bfss/pmc.hpp"

using namespace bfss;

TEST(Pmc, LinearPairs) {
  using P = std::vector<std::pair<int, int>>;
  EXPECT_EQ(Pmc::linear(1).pairs(), (P{{1, 3}, {2, 4}}));
  EXPECT_EQ(Pmc::linear(2).pairs(), (P{{1, 3}, {2, 5}, {4, 7}, {6, 8}}));
  EXPECT_EQ(Pmc::linear(3).pairs(), (P{{1, 3}, {2, 5}, {4, 7}, {6, 9}, {8, 11}, {10, 12}}));
  EXPECT_THROW(Pmc::linear(0), ValidationError);
}

TEST(Pmc, PartnerIsFixedPointFreeInvolution) {
  for (int k = 1; k <= 4; ++k) {
    const Pmc z = Pmc::linear(k);
    EXPECT_TRUE(z.symmetric());
    for (int p = 1; p <= z.size(); ++p) {
      EXPECT_NE(z.partner(p), p);
      EXPECT_EQ(z.partner(z.partner(p)), p);
      EXPECT_EQ(z.pair_of(p), z.pair_of(z.partner(p)));
    }
  }
}

TEST(Pmc, RejectsBadMatchings) {
  EXPECT_THROW(Pmc(1, {{1, 2}, {3, 4}}), ValidationError);  // surgery disconnects
  EXPECT_THROW(Pmc(1, {{1, 3}, {3, 4}}), ValidationError);
  EXPECT_THROW(Pmc(1, {{1, 3}}), ValidationError);
  EXPECT_THROW(Pmc(1, {{1, 3}, {2, 5}}), ValidationError);
  EXPECT_NO_THROW(Pmc(1, {{1, 3}, {2, 4}}));
}

TEST(Pmc, CurveFeet) {
  const Curve low = curve(Pmc::linear(1), 1);
  EXPECT_EQ(low.kind, CurveKind::DegenerateLow);
  EXPECT_EQ(std::pair(low.c1, low.c2), std::pair(1, 3));
  EXPECT_EQ(low.p, 2);

  const Curve high = curve(Pmc::linear(1), 2);
  EXPECT_EQ(high.kind, CurveKind::DegenerateHigh);
  EXPECT_EQ(std::pair(high.c1, high.c2), std::pair(2, 4));
  EXPECT_EQ(high.p, 3);

  const Curve gen = curve(Pmc::linear(2), 3);
  EXPECT_EQ(gen.kind, CurveKind::Generic);
  EXPECT_EQ(std::pair(gen.c1, gen.c2), std::pair(4, 7));
  EXPECT_EQ(std::pair(gen.d, gen.u), std::pair(5, 6));
}

TEST(Pmc, CurveFeetAreMatched) {
  for (int k = 1; k <= 4; ++k) {
    const Pmc z = Pmc::linear(k);
    for (int n = 1; n <= 2 * k; ++n) {
      const Curve c = curve(z, n);
      EXPECT_EQ(z.partner(c.c1), c.c2) << k << " " << n;
    }
    EXPECT_THROW(curve(z, 0), ValidationError);
    EXPECT_THROW(curve(z, 2 * k + 1), ValidationError);
  }
  EXPECT_THROW(curve(Pmc(2, {{1, 3}, {2, 4}, {5, 7}, {6, 8}}), 1), ValidationError);
}

TEST(Pmc, AllChordCounts) {
  EXPECT_EQ(all_chords(Pmc::linear(1)).size(), 6u);
  EXPECT_EQ(all_chords(Pmc::linear(2)).size(), 28u);
  EXPECT_EQ(all_chords(Pmc::linear(3)).size(), 66u);
}
