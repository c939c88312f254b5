#include "twisted/independence.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/random.hpp"
#include "twisted/torus_arcs.hpp"

namespace twisted {
namespace {

// Direct quadrature over alpha of lambda(B(a_m alpha, r1) cap B(a_n alpha, r2)),
// with the balls built from their actual centers. Panels are cut at every
// alpha where the relative offset crosses a kink, so 2-point Gauss is exact
// on each piece up to rounding.
double alpha_quadrature(const StripEvent& m, const StripEvent& n, int panels) {
  const double k = std::fabs(static_cast<double>(n.slope) - static_cast<double>(m.slope));
  std::vector<double> cuts;
  for (int i = 0; i <= panels; ++i) cuts.push_back(static_cast<double>(i) / panels);
  const double r1 = m.half_width, r2 = n.half_width;
  for (double b : {r1 + r2, r1 - r2, r2 - r1, -r1 - r2, 0.0, 2 * r1, 2 * r2, -2 * r1, -2 * r2}) {
    const double base = wrap_unit(b);
    for (double j = 0; j < k; ++j) {
      cuts.push_back((base + j) / k);
      cuts.push_back((wrap_unit(-b) + j) / k);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto integrand = [&](double alpha) {
    const double cm = wrap_unit(std::fmod(static_cast<double>(m.slope) * alpha, 1.0));
    const double cn = wrap_unit(std::fmod(static_cast<double>(n.slope) * alpha, 1.0));
    return overlap_measure(normalize({cm, r1}), normalize({cn, r2}));
  };
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) continue;
    total += boost::math::quadrature::gauss<double, 2>::integrate(integrand, cuts[i - 1], cuts[i]);
  }
  return total;
}

// 2-D Monte Carlo over the unit square with exact integer orbit arithmetic:
// alpha = u / 2^64, so a * alpha mod 1 = (a * u mod 2^64) / 2^64.
struct McEstimate {
  double value;
  double se;
};

McEstimate square_monte_carlo(const StripEvent& m, const StripEvent& n, int samples, std::uint64_t seed) {
  StreamRng rng(seed, 0);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t u = rng.bits();
    const double gamma = rng.uniform();
    const double xm = static_cast<double>(m.slope * u) * 0x1p-64;
    const double xn = static_cast<double>(n.slope * u) * 0x1p-64;
    hits += circular_distance(xm, gamma) < m.half_width && circular_distance(xn, gamma) < n.half_width;
  }
  const double p = static_cast<double>(hits) / samples;
  return {p, std::sqrt(p * (1 - p) / samples)};
}

TEST(OverlapFunction, Examples) {
  EXPECT_NEAR(overlap_function(0.1, 0.1, 0.0), 0.2, 1e-15);
  EXPECT_EQ(overlap_function(0.1, 0.1, 0.5), 0.0);
  EXPECT_NEAR(overlap_function(0.1, 0.05, 0.12), 0.03, 1e-15);
  // Slow path agrees with the closed form where both apply.
  EXPECT_NEAR(overlap_function(0.3, 0.3, 0.1), overlap_measure(normalize({0.0, 0.3}), normalize({0.1, 0.3})), 1e-15);
}

TEST(OverlapFunction, FubiniIdentity) {
  // Midpoint rule on a fine grid as the independent integrator.
  for (auto [r1, r2] : {std::pair{0.1, 0.05}, {0.2, 0.2}, {0.01, 0.3}, {0.4, 0.3}}) {
    constexpr int kGrid = 200000;
    double total = 0.0;
    for (int i = 0; i < kGrid; ++i) total += overlap_function(r1, r2, (i + 0.5) / kGrid);
    EXPECT_NEAR(total / kGrid, 4 * r1 * r2, 1e-9) << r1 << "," << r2;
  }
}

TEST(StripIntersection, Examples) {
  const auto m = StripEvent::make(1, 3, 0.1);
  const auto n = StripEvent::make(2, 7, 0.05);
  EXPECT_NEAR(strip_intersection_measure(m, n), 0.02, 1e-15);
  EXPECT_EQ(strip_intersection_measure(StripEvent::make(1, 3, 0.0), n), 0.0);
  const auto big1 = StripEvent::make(1, 2, 0.4);
  const auto big2 = StripEvent::make(2, 5, 0.4);
  EXPECT_NEAR(strip_intersection_measure(big1, big2), 0.64, 1e-14);
}

TEST(StripIntersection, MonteCarloOracle) {
  const auto big1 = StripEvent::make(1, 2, 0.4);
  const auto big2 = StripEvent::make(2, 5, 0.4);
  const auto mc = square_monte_carlo(big1, big2, 10000000, 1);
  EXPECT_LE(std::fabs(mc.value - strip_intersection_measure(big1, big2)), 3 * mc.se);
}

TEST(StripIntersection, EqualSlopesUnsupported) {
  EXPECT_THROW(strip_intersection_measure(StripEvent::make(1, 4, 0.1), StripEvent::make(2, 4, 0.2)), Unsupported);
}

TEST(StripIntersection, CapsAtHalf) {
  const auto full = StripEvent::make(1, 1, 0.9);
  EXPECT_EQ(full.half_width, 0.5);
  EXPECT_NEAR(strip_intersection_measure(full, StripEvent::make(2, 4, 0.1)), 0.2, 1e-15);
}

TEST(StripIntersection, SymmetricAndMatchesAlphaQuadrature) {
  StreamRng rng(31, 0);
  for (int trial = 0; trial < 12; ++trial) {
    const auto m = StripEvent::make(1, rng.uniform_int(1, 40), 0.4 * rng.uniform());
    auto n = StripEvent::make(2, rng.uniform_int(1, 40), 0.4 * rng.uniform());
    if (n.slope == m.slope) n.slope += 1;
    const double exact = strip_intersection_measure(m, n);
    EXPECT_NEAR(exact, strip_intersection_measure(n, m), 1e-15);
    EXPECT_NEAR(exact, alpha_quadrature(m, n, 10000), 1e-8);
    EXPECT_NEAR(exact, m.measure() * n.measure(), 1e-12);
  }
}

TEST(IndependenceReport, RandomPairs) {
  StreamRng rng(8, 0);
  std::vector<double> psi_table(5000);
  for (auto& v : psi_table) v = 0.4 * rng.uniform();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  while (pairs.size() < 100) {
    const auto m = rng.uniform_int(1, 5000);
    const auto n = rng.uniform_int(1, 5000);
    if (m != n) pairs.emplace_back(m, n);
  }
  const auto report = independence_report(SequenceSpec::polynomial(1, 2), ApproxFunction::table(psi_table), pairs);
  EXPECT_EQ(report.rows.size(), 100u);
  EXPECT_LE(report.max_deviation, 1e-10);
}

TEST(IndependenceReport, ZeroPsiAndDegenerate) {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs{{1, 2}, {3, 3}};
  const auto report =
      independence_report(SequenceSpec::polynomial(1, 1), ApproxFunction::table({0.0, 0.3, 0.1}), pairs);
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].deviation, 0.0);
  ASSERT_EQ(report.degenerate.size(), 1u);
}

TEST(IndependenceReport, PowerLawPairs) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t m = 1; m <= 30; ++m) {
    for (std::uint64_t n = m + 1; n <= 30; n += 3) pairs.emplace_back(m, n);
  }
  const auto report = independence_report(SequenceSpec::polynomial(1, 1), ApproxFunction::power(2), pairs, 2);
  EXPECT_LE(report.max_deviation, 1e-10);
}

}  // namespace
}  // namespace twisted
