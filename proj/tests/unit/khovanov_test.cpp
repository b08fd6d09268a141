#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "bfss/khovanov.hpp"

using namespace bfss;

namespace {

PlatDiagram plat(int strands, std::vector<Generator> w) { return {strands, std::move(w)}; }

int total(const std::map<int, int>& m) {
  int t = 0;
  for (auto [w, n] : m) t += n;
  return t;
}

// |<K>| at A^2 = i: only one-circle states survive, each weighted (-i)^{#B}.
int determinant(const PlatDiagram& d) {
  const ResolutionCube cube = resolution_cube(d);
  std::complex<long> s = 0;
  const std::complex<long> mi(0, -1);
  for (unsigned v = 0; v < cube.vertices.size(); ++v) {
    if (cube.vertices[v].circles != 1) continue;
    std::complex<long> t = 1;
    for (int k = 0; k < __builtin_popcount(v); ++k) t *= mi;
    s += t;
  }
  return static_cast<int>(std::lround(std::abs(std::complex<double>(s.real(), s.imag()))));
}

std::vector<Generator> random_word(std::mt19937& rng, int strands, int len) {
  std::uniform_int_distribution<int> idx(1, strands - 2), sg(0, 1);
  std::vector<Generator> w;
  for (int i = 0; i < len; ++i) w.push_back({idx(rng), sg(rng) ? 1 : -1});
  return w;
}

}  // namespace

TEST(Khovanov, HopfCube) {
  const auto cube = resolution_cube(plat(4, {{2, 1}, {2, 1}}));
  ASSERT_EQ(cube.crossings, 2);
  EXPECT_EQ(cube.vertices[0b00].circles, 2);
  EXPECT_EQ(cube.vertices[0b11].circles, 2);
  EXPECT_EQ(cube.vertices[0b01].circles, 1);
  EXPECT_EQ(cube.vertices[0b10].circles, 1);
}

TEST(Khovanov, EmptyWordIsTwoCircles) {
  const auto cube = resolution_cube(plat(4, {}));
  ASSERT_EQ(cube.vertices.size(), 1u);
  EXPECT_EQ(cube.vertices[0].circles, 2);
  EXPECT_EQ(reduced_kh(plat(4, {})), (std::map<int, int>{{0, 2}}));
}

TEST(Khovanov, AdjacentResolutionsDifferByOneCircle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = plat(trial % 2 ? 6 : 4, random_word(rng, trial % 2 ? 6 : 4, 1 + trial % 6));
    const auto cube = resolution_cube(d);
    for (unsigned v = 0; v < cube.vertices.size(); ++v)
      for (int t = 0; t < cube.crossings; ++t)
        if (!(v >> t & 1)) EXPECT_EQ(std::abs(cube.vertices[v].circles - cube.vertices[v | 1u << t].circles), 1);
  }
}

TEST(Khovanov, SmallLinks) {
  EXPECT_EQ(total(reduced_kh(plat(4, {{2, 1}}))), 1);
  EXPECT_EQ(total(reduced_kh(plat(4, {{2, 1}, {2, 1}}))), 2);
  EXPECT_EQ(total(reduced_kh(plat(4, {{2, 1}, {2, 1}, {2, 1}}))), 3);
  EXPECT_EQ(total(reduced_kh(plat(4, {{2, -1}, {2, -1}, {2, -1}}))), 3);
  EXPECT_EQ(reduced_kh(plat(4, {{2, 1}, {2, 1}})), (std::map<int, int>{{0, 1}, {1, 0}, {2, 1}}));
}

TEST(Khovanov, ReversedGradingMirrorsWeights) {
  const auto d = plat(4, {{2, 1}, {1, -1}, {2, 1}});
  const auto a = reduced_kh(d, KhGrading::Direct), b = reduced_kh(d, KhGrading::Reversed);
  for (auto [w, n] : a) EXPECT_EQ(b.at(3 - w), n);
}

TEST(Khovanov, UnreducedIsTwiceReduced) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 3 ? 4 : 6;
    const auto d = plat(n, random_word(rng, n, trial % 7));
    const auto r = reduced_kh(d), u = unreduced_kh(d);
    for (auto [w, k] : r) EXPECT_EQ(u.at(w), 2 * k);
  }
}

TEST(Khovanov, Padding) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto w = random_word(rng, 4, trial % 6);
    const int base = total(reduced_kh(plat(4, w)));
    // An unused cap pair is a split unknot.
    EXPECT_EQ(total(reduced_kh(plat(6, w))), 2 * base);
    // Joining it with one crossing is a stabilization.
    w.push_back({4, trial % 2 ? 1 : -1});
    EXPECT_EQ(total(reduced_kh(plat(6, w))), base);
  }
}

TEST(Khovanov, TwoBridgeTotalsMatchDeterminant) {
  std::mt19937 rng(5);
  for (int len = 0; len <= 8; ++len)
    for (int trial = 0; trial < 12; ++trial) {
      const auto d = plat(4, random_word(rng, 4, len));
      const int det = determinant(d);
      EXPECT_EQ(total(reduced_kh(d)), det ? det : 2) << len << " " << trial;
    }
}

TEST(Khovanov, RejectsBadInput) {
  EXPECT_THROW(resolution_cube(plat(5, {})), std::invalid_argument);
  EXPECT_THROW(resolution_cube(plat(4, {{4, 1}})), std::invalid_argument);
  EXPECT_THROW(resolution_cube(plat(4, {{1, 2}})), std::invalid_argument);
}
