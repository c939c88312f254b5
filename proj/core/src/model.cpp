#include "twisted/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "twisted/errors.hpp"
#include "twisted/summation.hpp"

namespace twisted {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr unsigned __int128 kU64Max = std::numeric_limits<std::uint64_t>::max();

bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x); }

std::uint64_t checked_floor(long double v, std::uint64_t n) {
  // long double carries 64 mantissa bits; stay well inside that.
  if (!(v >= 0.0L) || v >= 0x1p63L) {
    throw InvalidInput("sequence value at n=" + std::to_string(n) + " is out of range");
  }
  return static_cast<std::uint64_t>(std::floor(v));
}

// q * base^exp exactly, or nullopt on overflow of 64 bits.
std::optional<std::uint64_t> exact_power_product(std::uint64_t q, std::uint64_t base, std::uint64_t exp) {
  unsigned __int128 acc = q;
  for (std::uint64_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > kU64Max) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

// ---------------------------------------------------------------------------
// SequenceSpec

SequenceSpec::SequenceSpec(Family family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const PolynomialSequence& p) {
                   if (!(p.c > 0.0) || !std::isfinite(p.c) || p.degree == 0) {
                     throw InvalidInput("polynomial sequence needs c > 0 and degree >= 1");
                   }
                 },
                 [](const GeometricSequence& g) {
                   if (!(g.q > 0.0) || !(g.r > 1.0) || !std::isfinite(g.q) || !std::isfinite(g.r)) {
                     throw InvalidInput("geometric sequence needs q > 0 and r > 1");
                   }
                 },
                 [](const TableSequence& t) {
                   for (std::size_t i = 0; i < t.values.size(); ++i) {
                     if (t.values[i] == 0 || (i > 0 && t.values[i] <= t.values[i - 1])) {
                       throw InvalidInput("explicit sequence table must be strictly increasing and positive");
                     }
                   }
                 },
             },
             family_);
}

std::uint64_t SequenceSpec::value(std::uint64_t n) const {
  if (n == 0) throw InvalidInput("sequence indices start at 1");
  return std::visit(
      overloaded{
          [n](const PolynomialSequence& p) -> std::uint64_t {
            if (is_integral(p.c)) {
              auto v = exact_power_product(static_cast<std::uint64_t>(p.c), n, p.degree);
              if (!v) throw InvalidInput("sequence value at n=" + std::to_string(n) + " overflows 64 bits");
              return *v;
            }
            return checked_floor(static_cast<long double>(p.c) *
                                     std::pow(static_cast<long double>(n), static_cast<long double>(p.degree)),
                                 n);
          },
          [n](const GeometricSequence& g) -> std::uint64_t {
            if (is_integral(g.q) && is_integral(g.r)) {
              auto v = exact_power_product(static_cast<std::uint64_t>(g.q), static_cast<std::uint64_t>(g.r), n);
              if (!v) throw InvalidInput("sequence value at n=" + std::to_string(n) + " overflows 64 bits");
              return *v;
            }
            return checked_floor(static_cast<long double>(g.q) *
                                     std::pow(static_cast<long double>(g.r), static_cast<long double>(n)),
                                 n);
          },
          [n](const TableSequence& t) -> std::uint64_t {
            if (n > t.values.size()) {
              throw InvalidInput("index " + std::to_string(n) + " beyond explicit sequence table of size " +
                                 std::to_string(t.values.size()));
            }
            return t.values[n - 1];
          },
      },
      family_);
}

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const PolynomialSequence& p) { os << "floor(" << p.c << "*n^" << p.degree << ")"; },
                 [&](const GeometricSequence& g) { os << "floor(" << g.q << "*" << g.r << "^n)"; },
                 [&](const TableSequence& t) { os << "table[" << t.values.size() << "]"; },
             },
             family_);
  return os.str();
}

std::vector<std::uint64_t> generate(const SequenceSpec& a, IndexRange range) {
  if (range.first == 0 || range.first > range.last) {
    throw InvalidInput("invalid index range [" + std::to_string(range.first) + ", " +
                       std::to_string(range.last) + "]");
  }
  std::vector<std::uint64_t> out;
  out.reserve(range.last - range.first + 1);
  for (std::uint64_t n = range.first; n <= range.last; ++n) {
    const std::uint64_t v = a.value(n);
    if (v == 0 || (!out.empty() && v <= out.back())) {
      throw InvalidInput("sequence " + a.describe() + " is not strictly increasing and positive at n=" +
                         std::to_string(n));
    }
    out.push_back(v);
  }
  return out;
}

SeparationResult separation_exponent(const SequenceSpec& a, std::uint64_t N) {
  if (N < 2) throw InvalidInput("separation_exponent needs N >= 2");
  const auto values = generate(a, {1, N});
  constexpr int kMaxGrid = 6400;  // theta <= 64

  // Pairs with index gap 1 satisfy any theta since |a_m - a_n| >= 1.
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < values.size(); ++m) {
    for (std::size_t n = m + 2; n < values.size(); ++n) {
      const double ratio = std::log(static_cast<double>(values[n] - values[m])) /
                           std::log(static_cast<double>(n - m));
      bound = std::min(bound, ratio);
    }
  }
  int grid = std::isfinite(bound) ? static_cast<int>(std::floor(bound * 100.0 + 1e-9)) : kMaxGrid;
  grid = std::clamp(grid, 0, kMaxGrid);

  auto min_ratio = [&](double theta) {
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < values.size(); ++m) {
      for (std::size_t n = m + 1; n < values.size(); ++n) {
        c = std::min(c, static_cast<double>(values[n] - values[m]) /
                            std::pow(static_cast<double>(n - m), theta));
      }
    }
    return c;
  };
  double c = min_ratio(grid / 100.0);
  while (grid > 0 && c < 1.0 - 1e-12) {
    --grid;
    c = min_ratio(grid / 100.0);
  }
  return {grid / 100.0, c};
}

// ---------------------------------------------------------------------------
// ApproxFunction

ApproxFunction::ApproxFunction(Family family) : family_(std::move(family)) {
  if (const auto* t = std::get_if<TablePsi>(&family_)) {
    for (double v : t->values) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("psi table values must be finite and >= 0");
    }
  }
  if (const auto* p = std::get_if<PowerPsi>(&family_); p && !std::isfinite(p->sigma)) {
    throw InvalidInput("psi power exponent must be finite");
  }
}

double ApproxFunction::operator()(std::uint64_t n) const {
  if (n == 0) throw InvalidInput("psi is indexed from 1");
  const double x = static_cast<double>(n);
  return std::visit(overloaded{
                        [x](const PowerPsi& p) { return std::pow(x, -p.sigma); },
                        [x](const PowerLogPsi& p) {
                          return std::pow(x, -p.sigma) * std::pow(std::max(std::log(x), 1.0), -p.beta);
                        },
                        [x](const ExponentialPsi& e) { return std::exp(-e.rate * x); },
                        [n, x](const TablePsi& t) {
                          if (n <= t.values.size()) return t.values[n - 1];
                          return t.tail_sigma ? std::pow(x, -*t.tail_sigma) : 0.0;
                        },
                    },
                    family_);
}

std::optional<double> ApproxFunction::power_sigma() const noexcept {
  if (const auto* p = std::get_if<PowerPsi>(&family_)) return p->sigma;
  return std::nullopt;
}

std::string ApproxFunction::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const PowerPsi& p) { os << "n^-" << p.sigma; },
                 [&](const PowerLogPsi& p) { os << "n^-" << p.sigma << "*log(n)^-" << p.beta; },
                 [&](const ExponentialPsi& e) { os << "exp(-" << e.rate << "*n)"; },
                 [&](const TablePsi& t) { os << "table[" << t.values.size() << "]"; },
             },
             family_);
  return os.str();
}

// ---------------------------------------------------------------------------
// DimensionFunction

DimensionFunction::DimensionFunction(Family family) : family_(std::move(family)) {
  if (const auto* p = std::get_if<PowerDim>(&family_); p && !(p->s > 0.0)) {
    throw InvalidInput("power dimension function needs s > 0");
  }
  if (const auto* t = std::get_if<TableDim>(&family_)) {
    if (t->x.size() != t->y.size() || t->x.empty()) {
      throw InvalidInput("dimension function table needs matching nonempty x and y");
    }
    for (std::size_t i = 0; i < t->x.size(); ++i) {
      if (!(t->x[i] > 0.0) || (i > 0 && t->x[i] <= t->x[i - 1])) {
        throw InvalidInput("dimension function knots must be positive and increasing");
      }
    }
  }
  if (const auto* c = std::get_if<CustomDim>(&family_); c && !c->fn) {
    throw InvalidInput("custom dimension function is empty");
  }
}

double DimensionFunction::operator()(double x) const {
  return std::visit(overloaded{
                        [x](const IdentityDim&) { return x; },
                        [x](const PowerDim& p) { return x <= 0.0 ? 0.0 : std::pow(x, p.s); },
                        [x](const TableDim& t) {
                          if (x <= 0.0) return 0.0;
                          if (x >= t.x.back()) return t.y.back();
                          auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
                          const std::size_t i = static_cast<std::size_t>(it - t.x.begin());
                          const double x0 = i == 0 ? 0.0 : t.x[i - 1];
                          const double y0 = i == 0 ? 0.0 : t.y[i - 1];
                          return y0 + (t.y[i] - y0) * (x - x0) / (t.x[i] - x0);
                        },
                        [x](const CustomDim& c) { return c.fn(x); },
                    },
                    family_);
}

std::string DimensionFunction::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const IdentityDim&) { os << "x"; },
                 [&](const PowerDim& p) { os << "x^" << p.s; },
                 [&](const TableDim& t) { os << "table[" << t.x.size() << "]"; },
                 [&](const CustomDim& c) { os << c.label; },
             },
             family_);
  return os.str();
}

Verdict check_dimension_function(const DimensionFunction& f, const std::vector<double>& grid) {
  Verdict v;
  auto fail = [&](std::string msg) {
    v.pass = false;
    v.failures.push_back(std::move(msg));
  };
  if (grid.empty()) {
    fail("empty grid");
    return v;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && grid[i] <= grid[i - 1])) {
      fail("grid must be positive and strictly increasing");
      return v;
    }
  }
  if (f(0.0) != 0.0) fail("f(0) != 0");

  std::vector<double> fx(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) fx[i] = f(grid[i]);
  if (fx.front() < 0.0) fail("f negative near 0");

  bool ratio_up = true;
  bool ratio_down = true;
  std::size_t first_decrease = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double tol = 1e-12 * std::max(std::fabs(fx[i]), std::fabs(fx[i - 1]));
    if (fx[i] < fx[i - 1] - tol && first_decrease == 0) first_decrease = i;
    const double r0 = fx[i - 1] / grid[i - 1];
    const double r1 = fx[i] / grid[i];
    const double rtol = 1e-12 * std::max(std::fabs(r0), std::fabs(r1));
    if (r1 < r0 - rtol) ratio_up = false;
    if (r1 > r0 + rtol) ratio_down = false;
  }
  if (first_decrease != 0) {
    fail("f decreases at x=" + std::to_string(grid[first_decrease]));
  }
  if (!ratio_up && !ratio_down) fail("f(x)/x is not monotone on the grid");
  return v;
}

// ---------------------------------------------------------------------------
// Covering sums

double bc_sum(const ApproxFunction& psi, const DimensionFunction& f, IndexRange range) {
  if (range.first == 0 || range.first > range.last) throw InvalidInput("invalid index range for bc_sum");
  NeumaierSum sum;
  for (std::uint64_t n = range.first; n <= range.last; ++n) sum.add(f(psi(n)));
  return sum.value();
}

double bc_sum(const ApproxFunction& psi, IndexRange range) {
  return bc_sum(psi, DimensionFunction::identity(), range);
}

CriticalExponent critical_exponent(const ApproxFunction& psi) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{
                        [](const PowerPsi& p) -> CriticalExponent {
                          if (p.sigma <= 0.0) return {kInf, Convergence::Diverges};
                          return {1.0 / p.sigma, Convergence::Diverges};
                        },
                        [](const PowerLogPsi& p) -> CriticalExponent {
                          if (p.sigma <= 0.0) return {kInf, Convergence::Diverges};
                          // At s = 1/sigma the terms are 1/(n log(n)^(beta/sigma)).
                          return {1.0 / p.sigma,
                                  p.beta / p.sigma > 1.0 ? Convergence::Converges : Convergence::Diverges};
                        },
                        [](const ExponentialPsi& e) -> CriticalExponent {
                          if (e.rate <= 0.0) return {kInf, Convergence::Diverges};
                          return {0.0, Convergence::Diverges};
                        },
                        [](const TablePsi& t) -> CriticalExponent {
                          if (!t.tail_sigma) {
                            throw Unsupported("critical exponent of an explicit psi table needs a tail model");
                          }
                          if (*t.tail_sigma <= 0.0) return {kInf, Convergence::Diverges};
                          return {1.0 / *t.tail_sigma, Convergence::Diverges};
                        },
                    },
                    psi.family());
}

double power_tail_sum(double p, double N) {
  if (!(p > 1.0)) throw InvalidInput("power_tail_sum needs p > 1");
  if (!(N >= 1.0)) throw InvalidInput("power_tail_sum needs N >= 1");
  // Bernoulli numbers B_2 .. B_12.
  static constexpr std::array<double, 6> kBernoulli = {1.0 / 6, -1.0 / 30, 1.0 / 42,
                                                       -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  NeumaierSum sum;
  double M = N;
  while (M < 32.0) {
    sum.add(std::pow(M, -p));
    M += 1.0;
  }
  sum.add(std::pow(M, 1.0 - p) / (p - 1.0));
  sum.add(0.5 * std::pow(M, -p));
  // Term j: B_2j / (2j)! * p (p+1) ... (p+2j-2) * M^(-p-2j+1).
  double rising = p;  // p (p+1) ... (p+2j-2)
  double factorial = 2.0;
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    sum.add(kBernoulli[j - 1] / factorial * rising * std::pow(M, -p - 2.0 * j + 1.0));
    rising *= (p + 2.0 * j - 1.0) * (p + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum.value();
}

double power_tail_threshold(double p, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("power_tail_threshold needs eps > 0");
  if (power_tail_sum(p, 1.0) <= eps) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  while (power_tail_sum(p, hi) > eps) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw InvalidInput("tail threshold exceeds double range");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (power_tail_sum(p, mid) > eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double integral_test_threshold(double p, double eps) {
  if (!(p > 1.0) || !(eps > 0.0)) throw InvalidInput("integral_test_threshold needs p > 1, eps > 0");
  return std::pow((p - 1.0) * eps, -1.0 / (p - 1.0));
}

}  // namespace twisted
