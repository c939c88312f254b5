#include "twisted/fourier.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twisted/errors.hpp"
#include "twisted/parallel.hpp"
#include "twisted/random.hpp"
#include "twisted/summation.hpp"

namespace twisted {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(2 pi i x), reducing x mod 1 first.
cplx unit_phase(double x) {
  const double r = x - std::nearbyint(x);
  return std::polar(1.0, kTwoPi * r);
}

double poly_eval(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// integral_0^t of the polynomial
double poly_integral(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k] / static_cast<double>(k + 1);
  return acc * t;
}

// integral_0^w p(t) exp(2 pi i xi t) dt
cplx piece_transform(const std::vector<double>& c, double w, double xi) {
  if (std::fabs(xi * w) < 0.5) {
    auto f = [&](double t) { return poly_eval(c, t) * std::polar(1.0, kTwoPi * xi * t); };
    return boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, w);
  }
  // Antiderivative of t^k e^{ct}: e^{ct} sum_j (-1)^j k!/(k-j)! t^{k-j} / c^{j+1}.
  const cplx cc(0.0, kTwoPi * xi);
  const cplx ew = unit_phase(xi * w);
  cplx total(0.0, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    cplx at_w(0.0, 0.0);
    double falling = 1.0;  // k!/(k-j)!
    cplx cpow = cc;        // c^{j+1}
    for (std::size_t j = 0; j <= k; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      at_w += sign * falling * std::pow(w, static_cast<double>(k - j)) / cpow;
      if (j == k) {
        // F(0) keeps only the j = k term.
        total += c[k] * (ew * at_w - sign * falling / cpow);
      }
      falling *= static_cast<double>(k - j);
      cpow *= cc;
    }
  }
  return total;
}

void validate(const DensityMeasure& d) {
  if (d.pieces.empty()) throw InvalidInput("density measure needs at least one piece");
  NeumaierSum mass;
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const auto& p = d.pieces[i];
    if (!(p.lo >= 0.0) || !(p.hi <= 1.0) || !(p.lo < p.hi)) throw InvalidInput("density piece outside [0, 1]");
    if (i > 0 && p.lo < d.pieces[i - 1].hi) throw InvalidInput("density pieces must be sorted and disjoint");
    if (p.coeffs.empty()) throw InvalidInput("density piece without coefficients");
    const double w = p.hi - p.lo;
    for (int s = 0; s <= 64; ++s) {
      if (poly_eval(p.coeffs, w * s / 64.0) < -1e-12) throw InvalidInput("density is negative on a piece");
    }
    mass.add(poly_integral(p.coeffs, w));
  }
  if (std::fabs(mass.value() - 1.0) > 1e-9) throw InvalidInput("density does not integrate to 1");
}

void validate(const AtomicMeasure& a) {
  if (a.points.empty() || a.points.size() != a.weights.size()) {
    throw InvalidInput("atomic measure needs matching nonempty points and weights");
  }
  NeumaierSum mass;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (!(a.points[i] >= 0.0 && a.points[i] <= 1.0)) throw InvalidInput("atom outside [0, 1]");
    if (!(a.weights[i] > 0.0)) throw InvalidInput("atom weights must be positive");
    mass.add(a.weights[i]);
  }
  if (std::fabs(mass.value() - 1.0) > 1e-12) throw InvalidInput("atom weights do not sum to 1");
}

void validate(const SelfSimilarMeasure& s) {
  if (s.base < 2) throw InvalidInput("self-similar base must be >= 2");
  if (s.digits.empty()) throw InvalidInput("self-similar digit set is empty");
  auto sorted = s.digits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.back() >= s.base) {
    throw InvalidInput("self-similar digits must be distinct and below the base");
  }
}

FourierValue self_similar_transform(const SelfSimilarMeasure& s, double xi) {
  const double dmax = *std::max_element(s.digits.begin(), s.digits.end());
  const double D = s.base;
  // Integer and fractional parts of xi; the integer part is reduced exactly
  // against base^k while that fits in 62 bits.
  const double xi_int = std::nearbyint(xi);
  const bool split = std::fabs(xi_int) < 0x1p62;
  const auto xi_i = split ? static_cast<__int128>(xi_int) : 0;
  const double xi_f = split ? xi - xi_int : xi;

  cplx product(1.0, 0.0);
  double scale = 1.0;                   // D^-k
  unsigned __int128 Dk = 1;             // D^k while exact
  bool exact_power = true;
  const double inv_count = 1.0 / static_cast<double>(s.digits.size());
  for (int k = 1; k < 4096; ++k) {
    scale /= D;
    if (exact_power) {
      Dk *= s.base;
      if (Dk > (static_cast<unsigned __int128>(1) << 62)) exact_power = false;
    }
    const double tail = kTwoPi * std::fabs(xi) * dmax * scale * D / (D - 1.0);
    if (tail < 1e-14) return {product, std::expm1(tail)};
    cplx m(0.0, 0.0);
    for (unsigned d : s.digits) {
      double phase;
      if (exact_power) {
        const auto mod = static_cast<__int128>(Dk);
        __int128 r = (xi_i * static_cast<__int128>(d)) % mod;
        if (r < 0) r += mod;
        phase = static_cast<double>(r) / static_cast<double>(Dk) + xi_f * d * scale;
      } else {
        phase = xi * d * scale;
      }
      m += unit_phase(phase);
    }
    product *= m * inv_count;
  }
  throw InvalidInput("self-similar transform did not converge");
}

}  // namespace

MeasureSpec::MeasureSpec(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const LebesgueMeasure&) {},
                 [](const DensityMeasure& d) { validate(d); },
                 [](const AtomicMeasure& a) { validate(a); },
                 [](const SelfSimilarMeasure& s) { validate(s); },
             },
             v_);
}

std::string MeasureSpec::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const LebesgueMeasure&) { os << "lebesgue"; },
                 [&](const DensityMeasure& d) { os << "density[" << d.pieces.size() << " pieces]"; },
                 [&](const AtomicMeasure& a) { os << "atomic[" << a.points.size() << " atoms]"; },
                 [&](const SelfSimilarMeasure& s) {
                   os << "self-similar(base " << s.base << ", digits";
                   for (unsigned d : s.digits) os << ' ' << d;
                   os << ')';
                 },
             },
             v_);
  return os.str();
}

FourierValue fourier_transform_certified(const MeasureSpec& mu, double xi) {
  return std::visit(
      overloaded{
          [xi](const LebesgueMeasure&) -> FourierValue {
            if (xi == 0.0) return {cplx(1.0, 0.0)};
            if (xi == std::nearbyint(xi)) return {cplx(0.0, 0.0)};
            return {(unit_phase(xi) - 1.0) / cplx(0.0, kTwoPi * xi)};
          },
          [xi](const DensityMeasure& d) -> FourierValue {
            cplx total(0.0, 0.0);
            for (const auto& p : d.pieces) {
              total += unit_phase(xi * p.lo) * piece_transform(p.coeffs, p.hi - p.lo, xi);
            }
            return {total};
          },
          [xi](const AtomicMeasure& a) -> FourierValue {
            cplx total(0.0, 0.0);
            for (std::size_t i = 0; i < a.points.size(); ++i) total += a.weights[i] * unit_phase(xi * a.points[i]);
            return {total};
          },
          [xi](const SelfSimilarMeasure& s) -> FourierValue { return self_similar_transform(s, xi); },
      },
      mu.variant());
}

DecayEstimate decay_exponent_estimate(const MeasureSpec& mu, std::uint64_t xi_max, unsigned threads) {
  if (xi_max < 16) throw InvalidInput("decay estimate needs xi_max >= 16");
  DecayEstimate est;
  // Complete windows only; a truncated window can land on a single zero.
  for (unsigned w = 1; w < 63 && (std::uint64_t{1} << (w + 1)) - 1 <= xi_max; ++w) {
    const std::uint64_t lo = std::uint64_t{1} << w;
    est.windows.push_back({lo, (lo << 1) - 1, 0.0});
  }
  parallel_for(est.windows.size(), threads, [&](std::size_t i) {
    auto& win = est.windows[i];
    double m = 0.0;
    for (std::uint64_t xi = win.lo; xi <= win.hi; ++xi) {
      m = std::max(m, std::abs(fourier_transform(mu, static_cast<double>(xi))));
    }
    win.max_abs = m;
  });

  constexpr double kFloor = 1e-300;
  const bool all_zero = std::all_of(est.windows.begin(), est.windows.end(),
                                    [](const DecayWindow& w) { return w.max_abs <= kFloor; });
  if (all_zero) {
    est.infinite = true;
    est.tau = std::numeric_limits<double>::infinity();
    est.slope = -std::numeric_limits<double>::infinity();
    return est;
  }
  // Least squares of log max|mu^| against log xi.
  // Windows where the transform vanishes carry no envelope information.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (const auto& w : est.windows) {
    if (w.max_abs <= kFloor) continue;
    const double x = std::log(static_cast<double>(w.lo));
    const double y = std::log(w.max_abs);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  est.tau = std::max(0.0, -est.slope);
  return est;
}

namespace {

double density_sample(const DensityMeasure& d, double u) {
  std::vector<double> masses;
  double cumulative = 0.0;
  for (const auto& p : d.pieces) {
    cumulative += poly_integral(p.coeffs, p.hi - p.lo);
    masses.push_back(cumulative);
  }
  u *= cumulative;
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(std::upper_bound(masses.begin(), masses.end(), u) - masses.begin()),
      d.pieces.size() - 1);
  const auto& p = d.pieces[i];
  const double target = u - (i == 0 ? 0.0 : masses[i - 1]);
  double lo = 0.0;
  double hi = p.hi - p.lo;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (poly_integral(p.coeffs, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return p.lo + 0.5 * (lo + hi);
}

std::size_t pick_atom(const AtomicMeasure& a, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < a.weights.size(); ++i) {
    cumulative += a.weights[i];
    if (u < cumulative) return i;
  }
  return a.weights.size() - 1;
}

RealRep draw(const MeasureSpec& mu, StreamRng& rng, unsigned bits) {
  return std::visit(
      overloaded{
          [&](const LebesgueMeasure&) {
            mpz_class m = 0;
            for (unsigned filled = 0; filled < bits; filled += 64) {
              m <<= 64;
              m += static_cast<unsigned long>(rng.bits());
            }
            const unsigned excess = ((bits + 63) / 64) * 64 - bits;
            mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), excess);
            return RealRep::fixed(bits, m, 0);
          },
          [&](const DensityMeasure& d) { return RealRep::from_double(density_sample(d, rng.uniform()), bits); },
          [&](const AtomicMeasure& a) {
            return RealRep::from_double(a.points[pick_atom(a, rng.uniform())], bits);
          },
          [&](const SelfSimilarMeasure& s) {
            // K digits with base^-K > 2^-bits, so rounding up to the dyadic
            // grid leaves the first K digits intact.
            const auto K = std::max<long>(
                1, static_cast<long>(std::floor(bits * std::log(2.0) / std::log(static_cast<double>(s.base)))) - 1);
            mpz_class numer = 0;
            for (long k = 0; k < K; ++k) {
              numer *= s.base;
              numer += s.digits[rng.uniform_int(0, s.digits.size() - 1)];
            }
            mpz_class denom;
            mpz_ui_pow_ui(denom.get_mpz_t(), s.base, static_cast<unsigned long>(K));
            mpz_class scaled = numer;
            scaled <<= bits;
            mpz_class mant;
            mpz_cdiv_q(mant.get_mpz_t(), scaled.get_mpz_t(), denom.get_mpz_t());
            return RealRep::fixed(bits, mant, 1);
          },
      },
      mu.variant());
}

}  // namespace

std::vector<RealRep> sample_alpha(const MeasureSpec& mu, std::size_t count, std::uint64_t seed, unsigned bits) {
  if (count == 0) throw InvalidInput("sample count must be >= 1");
  if (bits < 64) throw InvalidInput("sampled alphas need at least 64 fractional bits");
  std::vector<RealRep> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    StreamRng rng(seed, i);
    out.push_back(draw(mu, rng, bits));
  }
  return out;
}

std::vector<double> sample(const MeasureSpec& mu, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InvalidInput("sample count must be >= 1");
  std::vector<double> out(count);
  StreamRng rng(seed, 0);
  for (auto& x : out) {
    x = std::visit(overloaded{
                       [&](const LebesgueMeasure&) { return rng.uniform(); },
                       [&](const DensityMeasure& d) { return density_sample(d, rng.uniform()); },
                       [&](const AtomicMeasure& a) { return a.points[pick_atom(a, rng.uniform())]; },
                       [&](const SelfSimilarMeasure&) { return draw(mu, rng, 64).to_double(); },
                   },
                   mu.variant());
  }
  return out;
}

}  // namespace twisted
