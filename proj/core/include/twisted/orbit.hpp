#pragma once

// Certified computation of the rotation orbit a_n * alpha mod 1.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "twisted/model.hpp"
#include "twisted/torus_arcs.hpp"

namespace twisted {

/// p / q in lowest terms with 0 <= p < q.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

/// mantissa / 2^bits, within error_ulps * 2^-bits of the intended value.
struct FixedPoint {
  unsigned bits = 64;
  mpz_class mantissa;
  unsigned error_ulps = 0;
};

enum class Constant { Sqrt2Minus1, GoldenFraction, EMinus2 };

/// High-precision representation of a rotation number alpha in [0, 1).
class RealRep {
 public:
  RealRep() = default;

  static RealRep rational(std::int64_t p, std::int64_t q);
  /// Exact dyadic value mantissa / 2^bits.
  static RealRep fixed(unsigned bits, mpz_class mantissa, unsigned error_ulps = 0);
  /// Built-in irrational constant, floor-rounded to `bits` fractional bits.
  static RealRep constant(Constant c, unsigned bits);
  /// The double x reduced mod 1, represented exactly with `bits` >= 64.
  static RealRep from_double(double x, unsigned bits = 64);

  bool is_rational() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& as_rational() const { return std::get<Rational>(value_); }
  const FixedPoint& as_fixed() const { return std::get<FixedPoint>(value_); }

  /// Absolute representation error (0 for rationals).
  double error() const;
  double to_double() const;
  std::string describe() const;

 private:
  std::variant<Rational, FixedPoint> value_;
};

/// Orbit points x_n = a_n alpha mod 1 for n in [first_index, first_index + size).
struct OrbitSlice {
  std::uint64_t first_index = 1;
  std::vector<std::uint64_t> a_values;
  /// x_n as a 64-bit binary fraction: x_n ~ fraction * 2^-64.
  std::vector<std::uint64_t> fractions;
  std::vector<double> points;
  /// Bound on |fraction * 2^-64 - a_n alpha mod 1| (torus distance).
  double error_bound = 0.0;

  std::size_t size() const noexcept { return points.size(); }
};

/// Certified orbit. Rationals are exact via modular arithmetic; fixed point
/// requires bits >= bits(a_max) + 65 (PrecisionError otherwise).
OrbitSlice orbit_points(const RealRep& alpha, const SequenceSpec& a, IndexRange range);
OrbitSlice orbit_points(const RealRep& alpha, std::span<const std::uint64_t> a_values,
                        std::uint64_t first_index = 1);

/// Fractional bits needed to certify orbit points up to a_max when alpha is
/// known to within error_ulps units in the last place.
unsigned required_bits(std::uint64_t a_max, unsigned error_ulps = 1);

/// Error bound of orbit fractions for a_n <= a_max; throws PrecisionError
/// when it exceeds 2^-64.
double check_precision(const RealRep& alpha, std::uint64_t a_max);

/// Classical sorted-points star discrepancy. Throws InvalidInput on empty input.
double star_discrepancy(std::span<const double> points);
inline double star_discrepancy(const OrbitSlice& slice) { return star_discrepancy(slice.points); }

/// Number of orbit points inside U.
std::size_t local_count(const OrbitSlice& slice, const ArcSet& U);

/// CSV with header "n,a_n,x_n".
void write_orbit_csv(std::ostream& os, const OrbitSlice& slice);

}  // namespace twisted
