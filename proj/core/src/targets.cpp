#include "twisted/targets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/summation.hpp"

namespace twisted {

namespace {

double center_of(const TargetFamily& T, std::uint64_t n) {
  const std::uint64_t a = T.a.value(n);
  return orbit_points(T.alpha, std::span<const std::uint64_t>(&a, 1), n).points.front();
}

double ball_measure(double radius) { return std::min(1.0, 2.0 * radius); }

}  // namespace

Arc ball(const TargetFamily& T, std::uint64_t n) {
  if (n == 0) throw InvalidInput("ball index starts at 1");
  return {center_of(T, n), T.psi(n)};
}

Arc shrink_ball_f(const TargetFamily& T, std::uint64_t n, const DimensionFunction& f) {
  if (n == 0) throw InvalidInput("ball index starts at 1");
  return {center_of(T, n), f(T.psi(n))};
}

Arc dyadic_ball(const TargetFamily& T, std::uint64_t n, double sigma) {
  if (n == 0) throw InvalidInput("ball index starts at 1");
  const auto power = T.psi.power_sigma();
  if (!power) throw Unsupported("dyadic balls need a power-law psi");
  if (std::fabs(*power - sigma) > 1e-12) {
    throw InvalidInput("dyadic_ball sigma does not match the family's psi exponent");
  }
  const int m = std::bit_width(n) - 1;  // 2^m <= n < 2^(m+1)
  return {center_of(T, n), std::pow(std::ldexp(1.0, m + 1), -sigma)};
}

std::vector<Arc> balls(const TargetFamily& T, IndexRange range, const DimensionFunction* f) {
  const OrbitSlice orbit = orbit_points(T.alpha, T.a, range);
  std::vector<Arc> out(orbit.size());
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const double r = T.psi(range.first + i);
    out[i] = {orbit.points[i], f ? (*f)(r) : r};
  }
  return out;
}

std::vector<Arc> balls(const TargetFamily& T, Block block, const DimensionFunction* f) {
  if (block.begin == 0 || block.end <= block.begin) throw InvalidInput("empty or invalid block");
  return balls(T, IndexRange{block.begin, block.end - 1}, f);
}

ArcSet tail_union(const TargetFamily& T, std::uint64_t N, std::uint64_t M, const DimensionFunction* f) {
  if (N == 0 || N > M) throw InvalidInput("tail union needs 1 <= N <= M");
  const auto family = balls(T, IndexRange{N, M}, f);
  return union_many(family);
}

double tail_union_measure(const TargetFamily& T, std::uint64_t N, std::uint64_t M, const DimensionFunction* f) {
  return tail_union(T, N, M, f).measure();
}

LimsupProfile limsup_profile(const TargetFamily& T, std::span<const IndexRange> schedule, double tol,
                             const DimensionFunction* f) {
  LimsupProfile profile;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i > 0 && schedule[i].first < schedule[i - 1].first) {
      throw InvalidInput("limsup schedule needs nondecreasing window starts");
    }
  }
  profile.measures.reserve(schedule.size());
  for (const auto& w : schedule) profile.measures.push_back(tail_union_measure(T, w.first, w.last, f));
  profile.full_measure_consistent =
      !profile.measures.empty() &&
      std::all_of(profile.measures.begin(), profile.measures.end(), [tol](double m) { return m >= 1.0 - tol; });
  return profile;
}

HitCount hit_count(const OrbitSlice& orbit, const ApproxFunction& psi, double gamma) {
  HitCount h;
  NeumaierSum expected;
  const double g = wrap_unit(gamma);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const double r = psi(orbit.first_index + i);
    expected.add(ball_measure(r));
    if (r >= 0.5 || circular_distance(orbit.points[i], g) < r) ++h.count;
  }
  h.expected = expected.value();
  return h;
}

HitCount hit_count(const TargetFamily& T, double gamma, std::uint64_t N) {
  if (N == 0) throw InvalidInput("hit_count needs N >= 1");
  return hit_count(orbit_points(T.alpha, T.a, IndexRange{1, N}), T.psi, gamma);
}

std::vector<double> local_density(const TargetFamily& T, std::uint64_t N, std::uint64_t M,
                                  std::span<const ArcSet> windows) {
  for (const auto& U : windows) {
    if (!(U.measure() > 0.0)) throw InvalidInput("local density window has zero measure");
  }
  const ArcSet tail = tail_union(T, N, M);
  std::vector<double> ratios;
  ratios.reserve(windows.size());
  for (const auto& U : windows) ratios.push_back(overlap_measure(tail, U) / U.measure());
  return ratios;
}

double equid_ratio(const TargetFamily& T, Block block, const ArcSet& U) {
  const double mu = U.measure();
  if (!(mu > 0.0)) throw InvalidInput("equid_ratio window has zero measure");
  const auto family = balls(T, block);
  NeumaierSum inside;
  NeumaierSum total;
  for (const auto& b : family) {
    const ArcSet s = normalize(b);
    inside.add(overlap_measure(s, U));
    total.add(s.measure());
  }
  if (U.is_full()) return 1.0;
  if (!(total.value() > 0.0)) throw InvalidInput("equid_ratio block carries no mass");
  return (inside.value() / mu) / total.value();
}

std::vector<ArcSet> default_windows() {
  std::vector<ArcSet> out;
  for (int k = 0; k < 8; ++k) out.push_back(ArcSet::from_intervals({{k / 8.0, (k + 1) / 8.0}}));
  return out;
}

std::vector<ArcSet> quarter_windows() {
  std::vector<ArcSet> out;
  for (int k = 0; k < 4; ++k) out.push_back(ArcSet::from_intervals({{k / 4.0, (k + 1) / 4.0}}));
  return out;
}

}  // namespace twisted
