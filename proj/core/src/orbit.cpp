#include "twisted/orbit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "twisted/errors.hpp"
#include "twisted/format.hpp"

namespace twisted {

namespace {

mpz_class pow2(unsigned bits) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, bits);
  return r;
}

// floor(sqrt(k) * 2^bits)
mpz_class scaled_sqrt(unsigned long k, unsigned bits) {
  mpz_class x = pow2(2 * bits) * k;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

// e * 2^bits from below, within 2 units.
mpz_class scaled_e(unsigned bits) {
  constexpr unsigned kGuard = 32;
  mpz_class term = pow2(bits + kGuard);
  mpz_class sum = term;
  for (unsigned long k = 1; term != 0; ++k) {
    term /= k;
    sum += term;
  }
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), sum.get_mpz_t(), kGuard);
  return r;
}

}  // namespace

RealRep RealRep::rational(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw InvalidInput("rational alpha needs a positive denominator");
  p %= q;
  if (p < 0) p += q;
  const std::int64_t g = std::gcd(p, q);
  RealRep r;
  r.value_ = Rational{p / g, q / g};
  return r;
}

RealRep RealRep::fixed(unsigned bits, mpz_class mantissa, unsigned error_ulps) {
  if (bits == 0) throw InvalidInput("fixed-point alpha needs at least one fractional bit");
  mpz_class reduced;
  mpz_fdiv_r_2exp(reduced.get_mpz_t(), mantissa.get_mpz_t(), bits);
  RealRep r;
  r.value_ = FixedPoint{bits, std::move(reduced), error_ulps};
  return r;
}

RealRep RealRep::constant(Constant c, unsigned bits) {
  switch (c) {
    case Constant::Sqrt2Minus1:
      return fixed(bits, scaled_sqrt(2, bits) - pow2(bits), 1);
    case Constant::GoldenFraction: {
      mpz_class twice = scaled_sqrt(5, bits) - pow2(bits);
      mpz_class half;
      mpz_fdiv_q_2exp(half.get_mpz_t(), twice.get_mpz_t(), 1);
      return fixed(bits, half, 1);
    }
    case Constant::EMinus2:
      return fixed(bits, scaled_e(bits) - 2 * pow2(bits), 2);
  }
  throw InvalidInput("unknown constant");
}

RealRep RealRep::from_double(double x, unsigned bits) {
  if (!std::isfinite(x)) throw InvalidInput("alpha must be finite");
  if (bits < 64) throw InvalidInput("from_double needs at least 64 fractional bits");
  x = wrap_unit(x);
  // x = m * 2^-64 exactly for every double in [0, 1) with exponent >= -64;
  // smaller values are flushed, which stays inside one ulp at 64 bits.
  const auto m = static_cast<std::uint64_t>(std::ldexp(x, 64));
  mpz_class mant(static_cast<unsigned long>(m));
  mant <<= (bits - 64);
  const bool exact = std::ldexp(static_cast<double>(m), -64) == x;
  return fixed(bits, mant, exact ? 0 : 1);
}

double RealRep::error() const {
  if (is_rational()) return 0.0;
  const auto& f = as_fixed();
  return std::ldexp(static_cast<double>(f.error_ulps), -static_cast<int>(f.bits));
}

double RealRep::to_double() const {
  if (is_rational()) {
    const auto& r = as_rational();
    return static_cast<double>(r.p) / static_cast<double>(r.q);
  }
  // Round to nearest, ties to even, on the top 53 bits of the mantissa.
  const auto& f = as_fixed();
  const std::size_t width = mpz_sizeinbase(f.mantissa.get_mpz_t(), 2);
  if (width <= 53) return std::ldexp(f.mantissa.get_d(), -static_cast<int>(f.bits));
  const auto shift = static_cast<mp_bitcnt_t>(width - 53);
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), f.mantissa.get_mpz_t(), shift);
  const bool half = mpz_tstbit(f.mantissa.get_mpz_t(), shift - 1);
  const bool sticky = mpz_scan1(f.mantissa.get_mpz_t(), 0) < shift - 1;
  if (half && (sticky || mpz_odd_p(q.get_mpz_t()))) q += 1;
  return std::ldexp(q.get_d(), static_cast<int>(shift) - static_cast<int>(f.bits));
}

std::string RealRep::describe() const {
  if (is_rational()) {
    const auto& r = as_rational();
    return std::to_string(r.p) + "/" + std::to_string(r.q);
  }
  const auto& f = as_fixed();
  return "fixed[" + std::to_string(f.bits) + "]:" + f.mantissa.get_str(16);
}

unsigned required_bits(std::uint64_t a_max, unsigned error_ulps) {
  if (error_ulps == 0) return 65;
  return static_cast<unsigned>(std::bit_width(a_max)) + static_cast<unsigned>(std::bit_width(error_ulps)) + 64;
}

double check_precision(const RealRep& alpha, std::uint64_t a_max) {
  if (alpha.is_rational()) {
    return std::has_single_bit(static_cast<std::uint64_t>(alpha.as_rational().q)) ? 0.0 : 0x1p-65;
  }
  const auto& fx = alpha.as_fixed();
  const unsigned P = fx.bits;
  // Representation error amplified by a_n, plus rounding to 64 bits.
  const double amplified = std::ldexp(static_cast<double>(a_max) * fx.error_ulps, -static_cast<int>(P));
  const double rounding = P > 64 ? 0x1p-65 : 0.0;
  const double bound = amplified + rounding;
  if (bound > 0x1p-64) throw PrecisionError(std::max(required_bits(a_max, fx.error_ulps), P + 1), P);
  return bound;
}

OrbitSlice orbit_points(const RealRep& alpha, const SequenceSpec& a, IndexRange range) {
  const auto values = generate(a, range);
  return orbit_points(alpha, values, range.first);
}

OrbitSlice orbit_points(const RealRep& alpha, std::span<const std::uint64_t> a_values,
                        std::uint64_t first_index) {
  OrbitSlice slice;
  slice.first_index = first_index;
  slice.a_values.assign(a_values.begin(), a_values.end());
  slice.fractions.resize(a_values.size());
  slice.points.resize(a_values.size());
  const std::uint64_t a_max = a_values.empty() ? 0 : *std::max_element(a_values.begin(), a_values.end());

  if (alpha.is_rational()) {
    const auto [p, q] = alpha.as_rational();
    const auto uq = static_cast<unsigned __int128>(q);
    for (std::size_t i = 0; i < a_values.size(); ++i) {
      const unsigned __int128 r = (static_cast<unsigned __int128>(a_values[i]) % uq) * static_cast<unsigned __int128>(p) % uq;
      // round(r * 2^64 / q); r < q < 2^63 so the shift fits.
      const unsigned __int128 num = (r << 64) + uq / 2;
      slice.fractions[i] = static_cast<std::uint64_t>(num / uq);
      slice.points[i] = static_cast<double>(static_cast<std::int64_t>(r)) / static_cast<double>(q);
    }
    slice.error_bound = check_precision(alpha, a_max);
    return slice;
  }

  const auto& fx = alpha.as_fixed();
  const unsigned P = fx.bits;
  slice.error_bound = check_precision(alpha, a_max);

  mpz_class prod;
  mpz_class top;
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    mpz_mul_ui(prod.get_mpz_t(), fx.mantissa.get_mpz_t(), a_values[i]);
    mpz_fdiv_r_2exp(prod.get_mpz_t(), prod.get_mpz_t(), P);
    std::uint64_t frac;
    if (P <= 64) {
      mpz_mul_2exp(top.get_mpz_t(), prod.get_mpz_t(), 64 - P);
      frac = mpz_get_ui(top.get_mpz_t());
    } else {
      // Round to nearest: floor(x / 2^(P-65)), then halve with carry.
      mpz_fdiv_q_2exp(top.get_mpz_t(), prod.get_mpz_t(), P - 65);
      top += 1;
      mpz_fdiv_q_2exp(top.get_mpz_t(), top.get_mpz_t(), 1);
      mpz_fdiv_r_2exp(top.get_mpz_t(), top.get_mpz_t(), 64);
      frac = mpz_get_ui(top.get_mpz_t());
    }
    slice.fractions[i] = frac;
    slice.points[i] = wrap_unit(std::ldexp(static_cast<double>(frac), -64));
  }
  return slice;
}

double star_discrepancy(std::span<const double> points) {
  if (points.empty()) throw InvalidInput("star discrepancy of an empty point set");
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  const double N = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = sorted[i];
    d = std::max({d, (static_cast<double>(i) + 1.0) / N - x, x - static_cast<double>(i) / N});
  }
  return d;
}

std::size_t local_count(const OrbitSlice& slice, const ArcSet& U) {
  return static_cast<std::size_t>(
      std::count_if(slice.points.begin(), slice.points.end(), [&](double x) { return U.contains(x); }));
}

void write_orbit_csv(std::ostream& os, const OrbitSlice& slice) {
  os << "n,a_n,x_n\n";
  for (std::size_t i = 0; i < slice.size(); ++i) {
    os << slice.first_index + i << ',' << slice.a_values[i] << ',' << format_double(slice.points[i]) << '\n';
  }
}

}  // namespace twisted
