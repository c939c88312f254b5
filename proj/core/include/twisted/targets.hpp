#pragma once

// The ball family B_n(alpha) = B(a_n alpha, psi(n)) and finite-truncation
// statistics of its limsup set W(psi, a, alpha).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twisted/model.hpp"
#include "twisted/orbit.hpp"
#include "twisted/torus_arcs.hpp"

namespace twisted {

struct TargetFamily {
  RealRep alpha;
  SequenceSpec a;
  ApproxFunction psi;
};

/// Half-open index block [begin, end).
struct Block {
  std::uint64_t begin = 1;
  std::uint64_t end = 2;

  std::uint64_t size() const noexcept { return end - begin; }
};

Arc ball(const TargetFamily& T, std::uint64_t n);

/// B^f: same center, radius f(psi(n)).
Arc shrink_ball_f(const TargetFamily& T, std::uint64_t n, const DimensionFunction& f);

/// Ball of radius (2^(m+1))^-sigma where 2^m <= n < 2^(m+1); requires
/// psi = n^-sigma (Unsupported otherwise).
Arc dyadic_ball(const TargetFamily& T, std::uint64_t n, double sigma);

/// B_n for n in [first, last], optionally shrunk by f.
std::vector<Arc> balls(const TargetFamily& T, IndexRange range, const DimensionFunction* f = nullptr);
std::vector<Arc> balls(const TargetFamily& T, Block block, const DimensionFunction* f = nullptr);

ArcSet tail_union(const TargetFamily& T, std::uint64_t N, std::uint64_t M,
                  const DimensionFunction* f = nullptr);

/// lambda(union_{n=N}^{M} B_n), exact via union_many.
double tail_union_measure(const TargetFamily& T, std::uint64_t N, std::uint64_t M,
                          const DimensionFunction* f = nullptr);

struct LimsupProfile {
  std::vector<double> measures;
  bool full_measure_consistent = false;
};

inline constexpr double kDefaultFullMeasureTol = 1e-3;

/// Tail-union measures over nested windows (N_i, M_i); the verdict holds iff
/// every measure is >= 1 - tol.
LimsupProfile limsup_profile(const TargetFamily& T, std::span<const IndexRange> schedule,
                             double tol = kDefaultFullMeasureTol, const DimensionFunction* f = nullptr);

struct HitCount {
  std::uint64_t count = 0;
  double expected = 0.0;  ///< sum_{n<=N} min(1, 2 psi(n))
};

/// #{n <= N : ||a_n alpha - gamma|| < psi(n)}.
HitCount hit_count(const TargetFamily& T, double gamma, std::uint64_t N);
/// Same, reusing a precomputed orbit slice that starts at n = 1.
HitCount hit_count(const OrbitSlice& orbit, const ApproxFunction& psi, double gamma);

/// For each window U: lambda(tail union cap U) / lambda(U).
std::vector<double> local_density(const TargetFamily& T, std::uint64_t N, std::uint64_t M,
                                  std::span<const ArcSet> windows);

/// [sum_k lambda(B_k cap U) / lambda(U)] / [sum_k lambda(B_k)] over the block.
double equid_ratio(const TargetFamily& T, Block block, const ArcSet& U);

/// The eight arcs [k/8, (k+1)/8).
std::vector<ArcSet> default_windows();
/// The four quarter arcs [k/4, (k+1)/4).
std::vector<ArcSet> quarter_windows();

}  // namespace twisted
