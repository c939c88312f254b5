#include "twisted/torus_arcs.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "twisted/errors.hpp"
#include "twisted/random.hpp"

namespace twisted {
namespace {

ArcSet iv(double lo, double hi) { return ArcSet::from_intervals({{lo, hi}}); }

// Brute-force membership straight from the definition of the open ball.
bool naive_contains(const std::vector<Arc>& arcs, double x) {
  for (const auto& a : arcs) {
    if (a.radius >= 0.5 || circular_distance(x, a.center) < a.radius) return true;
  }
  return false;
}

std::vector<Arc> random_family(StreamRng& rng, std::size_t max_arcs, double max_radius) {
  const std::size_t k = rng.uniform_int(0, max_arcs);
  std::vector<Arc> arcs(k);
  for (auto& a : arcs) a = {rng.uniform(), max_radius * rng.uniform()};
  return arcs;
}

TEST(Normalize, NoWrap) {
  const ArcSet s = normalize({0.5, 0.1});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s.intervals()[0].lo, 0.4, 1e-15);
  EXPECT_NEAR(s.intervals()[0].hi, 0.6, 1e-15);
}

TEST(Normalize, WrapAtZero) {
  const ArcSet s = normalize({0.0, 0.1});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.intervals()[0], (Interval{0.0, 0.1}));
  EXPECT_NEAR(s.intervals()[1].lo, 0.9, 1e-15);
  EXPECT_EQ(s.intervals()[1].hi, 1.0);
  EXPECT_NEAR(s.measure(), 0.2, 1e-15);
}

TEST(Normalize, HalfRadiusIsFullCircle) {
  const ArcSet s = normalize({0.3, 0.5});
  EXPECT_TRUE(s.is_full());
  EXPECT_EQ(s.measure(), 1.0);
}

TEST(Normalize, ZeroRadiusIsEmpty) { EXPECT_TRUE(normalize({0.3, 0.0}).is_empty()); }

TEST(Normalize, NegativeRadiusRejected) {
  EXPECT_THROW(normalize({0.3, -0.1}), InvalidInput);
  EXPECT_THROW(normalize({0.3, std::nan("")}), InvalidInput);
}

TEST(ArcSetOps, OverlappingUnionMerges) {
  const ArcSet u = unite(iv(0.1, 0.3), iv(0.2, 0.4));
  ASSERT_EQ(u.size(), 1u);
  EXPECT_NEAR(u.measure(), 0.3, 1e-15);
}

TEST(ArcSetOps, InclusionExclusionExample) {
  const ArcSet a = iv(0.1, 0.3);
  const ArcSet b = iv(0.2, 0.4);
  EXPECT_NEAR(a.measure() + b.measure(), 0.4, 1e-15);
  EXPECT_NEAR(unite(a, b).measure(), 0.3, 1e-15);
  EXPECT_NEAR(intersect(a, b).measure(), 0.1, 1e-15);
}

TEST(ArcSetOps, AdjacentIntervalsMerge) {
  const ArcSet s = ArcSet::from_intervals({{0.5, 0.75}, {0.25, 0.5}});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.intervals()[0], (Interval{0.25, 0.75}));
}

TEST(ArcSetOps, ContainsRespectsHalfOpenEnds) {
  const ArcSet s = iv(0.25, 0.5);
  EXPECT_TRUE(s.contains(0.25));
  EXPECT_FALSE(s.contains(0.5));
  EXPECT_TRUE(s.contains(1.3));   // 0.3 mod 1
  EXPECT_TRUE(s.contains(-0.7));  // 0.3 mod 1
  EXPECT_FALSE(ArcSet::empty().contains(0.0));
  EXPECT_TRUE(ArcSet::full().contains(0.999));
}

TEST(ArcSetOps, ComplementOfEmptyAndFull) {
  EXPECT_TRUE(complement(ArcSet::empty()).is_full());
  EXPECT_TRUE(complement(ArcSet::full()).is_empty());
}

TEST(UnionMany, EmptyFamily) { EXPECT_TRUE(union_many(std::vector<Arc>{}).is_empty()); }

TEST(UnionMany, DisjointArcsAreAdditive) {
  const int k = 40;
  const double r = 0.01;
  std::vector<Arc> arcs;
  for (int i = 0; i < k; ++i) arcs.push_back({(i + 0.5) / k, r});
  EXPECT_NEAR(union_many(arcs).measure(), 2 * k * r, 1e-13);
}

TEST(UnionMany, FullBallShortCircuits) {
  std::vector<Arc> arcs{{0.1, 0.01}, {0.7, 0.6}, {0.4, 0.02}};
  EXPECT_TRUE(union_many(arcs).is_full());
}

TEST(UnionMany, LargeFamilyMatchesMonteCarlo) {
  StreamRng rng(2024, 0);
  std::vector<Arc> arcs(100000);
  for (auto& a : arcs) a = {rng.uniform(), 1e-5 * rng.uniform()};
  const ArcSet u = union_many(arcs);

  constexpr int kSamples = 1000000;
  StreamRng mc(2024, 1);
  int hits = 0;
  for (int i = 0; i < kSamples; ++i) hits += u.contains(mc.uniform());
  const double p = static_cast<double>(hits) / kSamples;
  const double se = std::sqrt(p * (1 - p) / kSamples);
  EXPECT_LE(std::fabs(p - u.measure()), 3 * se) << "measure " << u.measure() << " mc " << p;
}

TEST(ArcSetProperties, RandomFamilies) {
  StreamRng rng(7, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto fa = random_family(rng, 20, 0.2);
    const auto fb = random_family(rng, 20, 0.2);
    const ArcSet a = union_many(fa);
    const ArcSet b = union_many(fb);
    const ArcSet u = unite(a, b);
    const ArcSet n = intersect(a, b);
    EXPECT_NEAR(u.measure() + n.measure(), a.measure() + b.measure(), 1e-12);
    EXPECT_EQ(complement(complement(a)), a);
    EXPECT_TRUE(intersect(a, complement(a)).is_empty());
    EXPECT_NEAR(unite(a, complement(a)).measure(), 1.0, 1e-12);
    EXPECT_EQ(intersect(a, u), a);  // a subset of a union b
    EXPECT_GE(u.measure() + 1e-15, std::max(a.measure(), b.measure()));
    EXPECT_NEAR(overlap_measure(a, b), n.measure(), 1e-15);
  }
}

TEST(ArcSetProperties, MembershipMatchesDefinition) {
  StreamRng rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto arcs = random_family(rng, 50, 0.05);
    const ArcSet s = union_many(arcs);
    int hits = 0;
    constexpr int kPoints = 100000;
    for (int i = 0; i < kPoints; ++i) {
      const double x = rng.uniform();
      const bool in = s.contains(x);
      ASSERT_EQ(in, naive_contains(arcs, x)) << "x=" << x;
      hits += in;
    }
    const double p = static_cast<double>(hits) / kPoints;
    EXPECT_LE(std::fabs(p - s.measure()), 3 * std::sqrt(s.measure() * (1 - s.measure()) / kPoints) + 1e-12);
  }
}

}  // namespace
}  // namespace twisted
