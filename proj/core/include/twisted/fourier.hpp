#pragma once

// Probability measures on [0, 1] with Fourier-transform evaluation, decay
// exponent estimation, and seeded sampling.

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "twisted/orbit.hpp"

namespace twisted {

struct LebesgueMeasure {};

/// Polynomial density on [lo, hi): sum_k coeffs[k] * (x - lo)^k.
struct DensityPiece {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> coeffs;
};

struct DensityMeasure {
  std::vector<DensityPiece> pieces;
};

struct AtomicMeasure {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Law of sum_k d_k base^-k with d_k i.i.d. uniform on `digits`.
struct SelfSimilarMeasure {
  unsigned base = 3;
  std::vector<unsigned> digits;
};

class MeasureSpec {
 public:
  using Variant = std::variant<LebesgueMeasure, DensityMeasure, AtomicMeasure, SelfSimilarMeasure>;

  MeasureSpec() = default;
  /// Validates total mass 1, nonnegativity and support in [0, 1].
  explicit MeasureSpec(Variant v);

  static MeasureSpec lebesgue() { return MeasureSpec(LebesgueMeasure{}); }
  static MeasureSpec density(std::vector<DensityPiece> pieces) {
    return MeasureSpec(DensityMeasure{std::move(pieces)});
  }
  static MeasureSpec atomic(std::vector<double> points, std::vector<double> weights) {
    return MeasureSpec(AtomicMeasure{std::move(points), std::move(weights)});
  }
  static MeasureSpec self_similar(unsigned base, std::vector<unsigned> digits) {
    return MeasureSpec(SelfSimilarMeasure{base, std::move(digits)});
  }
  /// Middle-third Cantor measure.
  static MeasureSpec cantor() { return self_similar(3, {0, 2}); }

  const Variant& variant() const noexcept { return v_; }
  std::string describe() const;

 private:
  Variant v_ = LebesgueMeasure{};
};

struct FourierValue {
  std::complex<double> value;
  double error_bound = 0.0;  ///< certified truncation bound (self-similar only)
};

/// mu^(xi) = integral of exp(2 pi i x xi) d mu(x).
FourierValue fourier_transform_certified(const MeasureSpec& mu, double xi);
inline std::complex<double> fourier_transform(const MeasureSpec& mu, double xi) {
  return fourier_transform_certified(mu, xi).value;
}

struct DecayWindow {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;  ///< inclusive
  double max_abs = 0.0;
};

struct DecayEstimate {
  double tau = 0.0;       ///< clamped to >= 0; +inf when `infinite`
  double slope = 0.0;     ///< least-squares slope of log max|mu^| vs log xi
  bool infinite = false;  ///< transform vanishes on every window
  std::vector<DecayWindow> windows;
};

/// Fits |mu^(xi)| ~ xi^-tau over dyadic windows [2^w, 2^(w+1)) of integer
/// frequencies up to xi_max, using the maximum of |mu^| on each window.
DecayEstimate decay_exponent_estimate(const MeasureSpec& mu, std::uint64_t xi_max, unsigned threads = 1);

/// count samples as doubles in [0, 1]; deterministic in seed.
std::vector<double> sample(const MeasureSpec& mu, std::size_t count, std::uint64_t seed);

/// count samples as fixed-point alphas with `bits` fractional bits. Lebesgue
/// samples are uniform on the dyadic grid of that precision; self-similar
/// samples expand random digits until base^-K drops below 2^-bits.
std::vector<RealRep> sample_alpha(const MeasureSpec& mu, std::size_t count, std::uint64_t seed, unsigned bits);

}  // namespace twisted
