#include "twisted/targets.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/fourier.hpp"
#include "twisted/random.hpp"

namespace twisted {
namespace {

TargetFamily sqrt2_family(const SequenceSpec& a, const ApproxFunction& psi, unsigned bits = 256) {
  return {RealRep::constant(Constant::Sqrt2Minus1, bits), a, psi};
}

TEST(Ball, RationalSquares) {
  const TargetFamily T{RealRep::rational(1, 7), SequenceSpec::polynomial(1, 2), ApproxFunction::power(2)};
  const Arc b = ball(T, 3);
  EXPECT_NEAR(b.center, 2.0 / 7, 1e-15);
  EXPECT_NEAR(b.radius, 1.0 / 9, 1e-15);
}

TEST(Ball, ZeroPsiIsEmpty) {
  const TargetFamily T{RealRep::rational(1, 7), SequenceSpec::polynomial(1, 1), ApproxFunction::zero()};
  EXPECT_TRUE(normalize(ball(T, 5)).is_empty());
}

TEST(Ball, ZeroAlphaCentersAtZero) {
  const TargetFamily T{RealRep::rational(0, 1), SequenceSpec::polynomial(1, 2), ApproxFunction::power(1)};
  for (std::uint64_t n = 1; n < 20; ++n) {
    const Arc b = ball(T, n);
    EXPECT_EQ(b.center, 0.0);
    EXPECT_DOUBLE_EQ(b.radius, 1.0 / n);
  }
}

TEST(ShrinkBall, Examples) {
  const TargetFamily T{RealRep::rational(1, 7), SequenceSpec::polynomial(1, 2), ApproxFunction::power(2)};
  EXPECT_DOUBLE_EQ(shrink_ball_f(T, 4, DimensionFunction::power(0.5)).radius, 0.25);
  const Arc same = shrink_ball_f(T, 4, DimensionFunction::identity());
  EXPECT_EQ(same.center, ball(T, 4).center);
  EXPECT_EQ(same.radius, ball(T, 4).radius);
  const TargetFamily H{RealRep::rational(1, 7), SequenceSpec::polynomial(1, 2), ApproxFunction::power(1)};
  EXPECT_NEAR(shrink_ball_f(H, 10, DimensionFunction::power(2)).radius, 1e-2, 1e-17);
}

TEST(DyadicBall, Examples) {
  const TargetFamily T{RealRep::rational(1, 7), SequenceSpec::polynomial(1, 1), ApproxFunction::power(1)};
  EXPECT_DOUBLE_EQ(dyadic_ball(T, 5, 1.0).radius, 1.0 / 8);
  EXPECT_LE(dyadic_ball(T, 5, 1.0).radius, T.psi(5));
  EXPECT_DOUBLE_EQ(dyadic_ball(T, 4, 1.0).radius, 1.0 / 8);
  const TargetFamily S{RealRep::rational(1, 7), SequenceSpec::polynomial(1, 1), ApproxFunction::power(0.7)};
  for (int m = 0; m < 20; ++m) {
    const std::uint64_t n = std::uint64_t{1} << m;
    EXPECT_NEAR(dyadic_ball(S, n, 0.7).radius, std::pow(2.0, -0.7) * S.psi(n), 1e-15);
  }
}

TEST(DyadicBall, ContainedInBall) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::power(0.9));
  for (std::uint64_t n = 1; n < 3000; n += 7) {
    const Arc d = dyadic_ball(T, n, 0.9);
    const Arc b = ball(T, n);
    EXPECT_EQ(d.center, b.center);
    EXPECT_LE(d.radius, b.radius);
    const ArcSet ds = normalize(d);
    EXPECT_EQ(intersect(ds, normalize(b)), ds);
  }
}

TEST(DyadicBall, RequiresPowerLaw) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 1), ApproxFunction::power_log(1, 1));
  EXPECT_THROW(dyadic_ball(T, 5, 1.0), Unsupported);
}

TEST(TailUnion, SingleBall) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::power(0.5));
  EXPECT_NEAR(tail_union_measure(T, 9, 9), 2.0 / 3, 1e-15);
  EXPECT_EQ(tail_union_measure(T, 1, 1), 1.0);
}

TEST(TailUnion, ZeroPsi) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::zero());
  EXPECT_EQ(tail_union_measure(T, 1, 1000), 0.0);
}

TEST(TailUnion, Monotonicity) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::power(1.1));
  double prev = 0.0;
  for (std::uint64_t M = 100; M <= 3000; M += 290) {
    const double m = tail_union_measure(T, 100, M);
    EXPECT_GE(m, prev);
    prev = m;
  }
  // Moving N down enlarges the family.
  EXPECT_GE(tail_union_measure(T, 50, 3000), tail_union_measure(T, 100, 3000));
}

TEST(TailUnion, DivergentSquaresFullMeasure) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::power(0.8));
  EXPECT_GE(tail_union_measure(T, 1000, 100000), 0.999);
}

TEST(LimsupProfile, Examples) {
  const std::vector<IndexRange> schedule{{10, 100}, {100, 1000}, {1000, 10000}};
  const auto none = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::zero());
  const auto p0 = limsup_profile(none, schedule);
  EXPECT_FALSE(p0.full_measure_consistent);
  for (double m : p0.measures) EXPECT_EQ(m, 0.0);

  // psi >= 1/2 at every multiple of 7.
  std::vector<double> table(10000, 1e-6);
  for (std::size_t i = 6; i < table.size(); i += 7) table[i] = 0.5;
  const auto big = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::table(table));
  const auto p1 = limsup_profile(big, schedule);
  EXPECT_TRUE(p1.full_measure_consistent);
  for (double m : p1.measures) EXPECT_EQ(m, 1.0);

  const auto powlog = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::power_log(0.6, 1.0));
  const std::vector<IndexRange> wide{{1000, 20000}, {2000, 40000}, {4000, 80000}};
  EXPECT_TRUE(limsup_profile(powlog, wide, 1e-3).full_measure_consistent);
}

TEST(LimsupProfile, RejectsDecreasingStarts) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 1), ApproxFunction::power(1));
  const std::vector<IndexRange> bad{{100, 200}, {50, 300}};
  EXPECT_THROW(limsup_profile(T, bad), InvalidInput);
}

TEST(HitCount, Trivial) {
  const auto zero = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::zero());
  EXPECT_EQ(hit_count(zero, 0.3, 1000).count, 0u);
  const auto big = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::table(std::vector<double>(50, 0.5)));
  const auto h = hit_count(big, 0.3, 50);
  EXPECT_EQ(h.count, 50u);
  EXPECT_DOUBLE_EQ(h.expected, 50.0);
}

TEST(HitCount, AgreesWithArcMembershipAndDirectDistance) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::power(0.5));
  const double gamma = 0.61803;
  const std::uint64_t N = 4000;
  const auto h = hit_count(T, gamma, N);
  std::uint64_t via_arcs = 0;
  std::uint64_t via_distance = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    via_arcs += normalize(ball(T, n)).contains(gamma);
    // Independent long-double evaluation of ||a_n alpha - gamma||.
    const long double x = std::fmod(static_cast<long double>(n * n) * (std::sqrt(2.0L) - 1.0L), 1.0L);
    long double d = std::fabs(x - gamma);
    d = std::min(d, 1.0L - d);
    via_distance += d < T.psi(n);
  }
  EXPECT_EQ(h.count, via_arcs);
  EXPECT_EQ(h.count, via_distance);
}

TEST(HitCount, RandomPairsNearExpectation) {
  const auto seq = SequenceSpec::polynomial(1, 2);
  const auto psi = ApproxFunction::power(0.8);
  const auto alphas = sample_alpha(MeasureSpec::lebesgue(), 10, 99, 256);
  StreamRng rng(99, 1000);
  for (const auto& alpha : alphas) {
    const auto h = hit_count(TargetFamily{alpha, seq, psi}, rng.uniform(), 100000);
    const double ratio = static_cast<double>(h.count) / h.expected;
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 2.0);
  }
}

TEST(LocalDensity, Trivial) {
  const auto windows = default_windows();
  const auto full = sqrt2_family(SequenceSpec::polynomial(1, 1), ApproxFunction::table({0.5, 0.5}));
  for (double r : local_density(full, 1, 2, windows)) EXPECT_EQ(r, 1.0);
  const auto zero = sqrt2_family(SequenceSpec::polynomial(1, 1), ApproxFunction::zero());
  for (double r : local_density(zero, 1, 100, windows)) EXPECT_EQ(r, 0.0);
  const std::vector<ArcSet> bad{ArcSet::empty()};
  EXPECT_THROW(local_density(zero, 1, 100, bad), InvalidInput);
}

TEST(LocalDensity, MatchesIntersectionMeasure) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 2), ApproxFunction::power(0.9));
  const auto windows = quarter_windows();
  const auto ratios = local_density(T, 64, 2048, windows);
  const ArcSet tail = tail_union(T, 64, 2048);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    EXPECT_NEAR(ratios[i], intersect(tail, windows[i]).measure() / 0.25, 1e-12);
    EXPECT_GT(ratios[i], 0.5);
  }
}

TEST(EquidRatio, Examples) {
  const auto T = sqrt2_family(SequenceSpec::polynomial(1, 1), ApproxFunction::power(0.9));
  const Block block{1024, 2048};
  EXPECT_EQ(equid_ratio(T, block, ArcSet::full()), 1.0);
  const double r = equid_ratio(T, block, ArcSet::from_intervals({{0.0, 0.25}}));
  EXPECT_GE(r, 0.5);
  EXPECT_LE(r, 2.0);
  EXPECT_THROW(equid_ratio(T, block, ArcSet::empty()), InvalidInput);

  // alpha = 0 with tiny radii: every ball sits inside U around 0.
  const TargetFamily Z{RealRep::rational(0, 1), SequenceSpec::polynomial(1, 1), ApproxFunction::power(2)};
  const ArcSet U = normalize({0.0, 0.1});
  EXPECT_NEAR(equid_ratio(Z, {16, 32}, U), 1.0 / U.measure(), 1e-12);
}

}  // namespace
}  // namespace twisted
