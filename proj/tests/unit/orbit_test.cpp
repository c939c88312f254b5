#include "twisted/orbit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "twisted/errors.hpp"

namespace twisted {
namespace {

// Torus distance between two 64-bit binary fractions, in units of 2^-64.
std::uint64_t frac_distance(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t d = x - y;
  return std::min(d, static_cast<std::uint64_t>(0) - d);
}

TEST(RealRep, RationalLowestTerms) {
  const auto r = RealRep::rational(6, 9);
  EXPECT_EQ(r.as_rational().p, 2);
  EXPECT_EQ(r.as_rational().q, 3);
  EXPECT_EQ(RealRep::rational(-1, 3).as_rational().p, 2);
  EXPECT_THROW(RealRep::rational(1, 0), InvalidInput);
}

TEST(RealRep, ConstantsAgreeWithDoubles) {
  // Correctly rounded doubles of the 30-digit decimal expansions.
  EXPECT_EQ(RealRep::constant(Constant::Sqrt2Minus1, 256).to_double(), 0.414213562373095048801688724209);
  EXPECT_EQ(RealRep::constant(Constant::GoldenFraction, 256).to_double(), 0.618033988749894848204586834365);
  EXPECT_EQ(RealRep::constant(Constant::EMinus2, 256).to_double(), 0.718281828459045235360287471352);
}

TEST(RealRep, ConstantsAreConsistentAcrossPrecisions) {
  // The 256-bit value must be within the combined error of the 1024-bit one.
  for (auto c : {Constant::Sqrt2Minus1, Constant::GoldenFraction, Constant::EMinus2}) {
    const auto lo = RealRep::constant(c, 256);
    const auto hi = RealRep::constant(c, 1024);
    mpz_class shifted = lo.as_fixed().mantissa;
    shifted <<= (1024 - 256);
    mpz_class diff = hi.as_fixed().mantissa - shifted;
    mpz_class bound = 1;
    bound <<= (1024 - 256);
    bound *= 3;
    EXPECT_LE(abs(diff), bound);
  }
}

TEST(OrbitPoints, RationalCycle) {
  const auto slice = orbit_points(RealRep::rational(1, 3), SequenceSpec::polynomial(1, 1), {1, 3});
  ASSERT_EQ(slice.size(), 3u);
  EXPECT_DOUBLE_EQ(slice.points[0], 1.0 / 3);
  EXPECT_DOUBLE_EQ(slice.points[1], 2.0 / 3);
  EXPECT_DOUBLE_EQ(slice.points[2], 0.0);
  EXPECT_LE(slice.error_bound, 0x1p-64);
}

TEST(OrbitPoints, ZeroAlpha) {
  for (const auto& alpha : {RealRep::rational(0, 1), RealRep::fixed(128, 0)}) {
    const auto slice = orbit_points(alpha, SequenceSpec::polynomial(1, 2), {1, 50});
    for (double x : slice.points) EXPECT_EQ(x, 0.0);
  }
}

TEST(OrbitPoints, RationalPointsAreExactMultiples) {
  const std::int64_t q = 1009;
  const auto slice = orbit_points(RealRep::rational(123, q), SequenceSpec::polynomial(1, 2), {1, 5000});
  for (double x : slice.points) {
    const double k = x * q;
    EXPECT_NEAR(k, std::nearbyint(k), 1e-9);
  }
}

TEST(OrbitPoints, CertifiedAgainstDoublePrecisionRecompute) {
  const auto seq = SequenceSpec::polynomial(1, 2);
  const auto a256 = orbit_points(RealRep::constant(Constant::Sqrt2Minus1, 256), seq, {1, 10000});
  const auto a512 = orbit_points(RealRep::constant(Constant::Sqrt2Minus1, 512), seq, {1, 10000});
  EXPECT_LE(a256.error_bound, 0x1p-64);
  EXPECT_LE(a512.error_bound, 0x1p-64);
  // Both values are within 2^-64 of the truth, so within 2 units of each other.
  for (std::size_t i = 0; i < a256.size(); ++i) {
    ASSERT_LE(frac_distance(a256.fractions[i], a512.fractions[i]), 2u) << "n=" << i + 1;
  }
}

TEST(OrbitPoints, SmallIndicesMatchDoubleArithmetic) {
  const auto slice = orbit_points(RealRep::constant(Constant::GoldenFraction, 128), SequenceSpec::polynomial(1, 1),
                                  {1, 100});
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    const double expected = std::fmod((i + 1) * phi, 1.0);
    EXPECT_NEAR(circular_distance(slice.points[i], expected), 0.0, 1e-13);
  }
}

TEST(OrbitPoints, InsufficientPrecisionNamesRequiredBits) {
  const auto alpha = RealRep::constant(Constant::Sqrt2Minus1, 80);
  try {
    orbit_points(alpha, SequenceSpec::polynomial(1, 2), {1, 100000});
    FAIL() << "expected PrecisionError";
  } catch (const PrecisionError& e) {
    // a_max = 10^10 needs 34 bits, plus 65.
    EXPECT_EQ(e.required_bits(), 99u);
    EXPECT_EQ(e.available_bits(), 80u);
  }
  EXPECT_NO_THROW(orbit_points(RealRep::constant(Constant::Sqrt2Minus1, 99), SequenceSpec::polynomial(1, 2),
                               {1, 100000}));
}

TEST(OrbitPoints, ExactDyadicNeedsNoExtraBits) {
  // An exact dyadic alpha has no representation error to amplify.
  const auto slice = orbit_points(RealRep::fixed(70, mpz_class(12345)), SequenceSpec::geometric(1, 2), {1, 60});
  EXPECT_LE(slice.error_bound, 0x1p-64);
}

TEST(StarDiscrepancy, Examples) {
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75};
  EXPECT_DOUBLE_EQ(star_discrepancy(grid), 0.25);
  EXPECT_DOUBLE_EQ(star_discrepancy(std::vector<double>{0.0}), 1.0);
  EXPECT_THROW(star_discrepancy(std::vector<double>{}), InvalidInput);
}

TEST(StarDiscrepancy, FullRationalPeriod) {
  const std::int64_t q = 97;
  const auto slice = orbit_points(RealRep::rational(13, q), SequenceSpec::polynomial(1, 1), {1, 97});
  EXPECT_NEAR(star_discrepancy(slice), 1.0 / q, 1e-15);
}

TEST(StarDiscrepancy, IrrationalRotation) {
  const auto alpha = RealRep::constant(Constant::Sqrt2Minus1, 256);
  const auto seq = SequenceSpec::polynomial(1, 1);
  double prev = 1.0;
  for (std::uint64_t N : {100, 1000, 10000}) {
    const double d = star_discrepancy(orbit_points(alpha, seq, {1, N}));
    EXPECT_GE(d, 1.0 / N);
    EXPECT_LE(d, 1.0);
    EXPECT_LE(d, 2 * prev);
    prev = d;
    if (N == 10000) {
      EXPECT_LE(d, 0.01);
    }
  }
}

TEST(StarDiscrepancy, ThirdsTakeThreeValues) {
  const auto slice = orbit_points(RealRep::rational(1, 3), SequenceSpec::polynomial(1, 1), {1, 10000});
  std::set<double> values(slice.points.begin(), slice.points.end());
  EXPECT_EQ(values.size(), 3u);
  EXPECT_NEAR(star_discrepancy(slice), 1.0 / 3, 1e-4);
}

TEST(LocalCount, Examples) {
  std::vector<double> pts;
  const int N = 1000;
  for (int i = 0; i < N; ++i) pts.push_back(static_cast<double>(i) / N);
  OrbitSlice slice;
  slice.points = pts;
  EXPECT_EQ(local_count(slice, ArcSet::full()), static_cast<std::size_t>(N));
  EXPECT_EQ(local_count(slice, ArcSet::empty()), 0u);
  const auto c = static_cast<double>(local_count(slice, ArcSet::from_intervals({{0.1234, 0.4234}})));
  EXPECT_LE(std::fabs(c - 0.3 * N), 1.0);
}

TEST(OrbitCsv, HeaderAndRows) {
  const auto slice = orbit_points(RealRep::rational(1, 4), SequenceSpec::polynomial(1, 1), {1, 2});
  std::ostringstream os;
  write_orbit_csv(os, slice);
  EXPECT_EQ(os.str(), "n,a_n,x_n\n1,1,0.25\n2,2,0.5\n");
}

}  // namespace
}  // namespace twisted
