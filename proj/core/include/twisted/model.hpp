#pragma once

// Sequences a_n, approximation functions psi, dimension functions f, and the
// covering-sum bookkeeping built on them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace twisted {

/// Inclusive index range [first, last], 1-based.
struct IndexRange {
  std::uint64_t first = 1;
  std::uint64_t last = 1;
};

// ---------------------------------------------------------------------------
// Sequences

struct PolynomialSequence {
  double c = 1.0;       ///< a_n = floor(c * n^d)
  unsigned degree = 1;
};

struct GeometricSequence {
  double q = 1.0;       ///< a_n = floor(q * r^n)
  double r = 2.0;
};

struct TableSequence {
  std::vector<std::uint64_t> values;  ///< values[n-1] = a_n
};

class SequenceSpec {
 public:
  using Family = std::variant<PolynomialSequence, GeometricSequence, TableSequence>;

  SequenceSpec() = default;
  explicit SequenceSpec(Family family);

  static SequenceSpec polynomial(double c, unsigned degree) {
    return SequenceSpec(PolynomialSequence{c, degree});
  }
  static SequenceSpec geometric(double q, double r) {
    return SequenceSpec(GeometricSequence{q, r});
  }
  static SequenceSpec table(std::vector<std::uint64_t> values) {
    return SequenceSpec(TableSequence{std::move(values)});
  }

  const Family& family() const noexcept { return family_; }

  /// a_n for a single n >= 1. Throws InvalidInput if a_n is out of the
  /// representable range or outside an explicit table.
  std::uint64_t value(std::uint64_t n) const;

  std::string describe() const;

 private:
  Family family_ = PolynomialSequence{};
};

/// a_n for n in range; throws InvalidInput unless the values are strictly
/// increasing positive integers.
std::vector<std::uint64_t> generate(const SequenceSpec& a, IndexRange range);

struct SeparationResult {
  double theta = 0.0;
  double c = 0.0;
};

/// Largest theta on the 0.01 grid with |a_m - a_n| >= c |m - n|^theta for all
/// 1 <= m < n <= N and c >= 1; c is the minimum ratio over all pairs.
SeparationResult separation_exponent(const SequenceSpec& a, std::uint64_t N);

// ---------------------------------------------------------------------------
// Approximation functions

struct PowerPsi {
  double sigma = 1.0;  ///< psi(n) = n^-sigma
};

/// psi(n) = n^-sigma * L(n)^-beta with L(n) = max(log n, 1).
struct PowerLogPsi {
  double sigma = 1.0;
  double beta = 0.0;
};

struct ExponentialPsi {
  double rate = 1.0;  ///< psi(n) = exp(-rate * n)
};

/// Explicit values psi(1..size); beyond the table psi(n) = n^-tail_sigma when
/// a tail model is declared, otherwise 0.
struct TablePsi {
  std::vector<double> values;
  std::optional<double> tail_sigma;
};

class ApproxFunction {
 public:
  using Family = std::variant<PowerPsi, PowerLogPsi, ExponentialPsi, TablePsi>;

  ApproxFunction() = default;
  explicit ApproxFunction(Family family);

  static ApproxFunction power(double sigma) { return ApproxFunction(PowerPsi{sigma}); }
  static ApproxFunction power_log(double sigma, double beta) {
    return ApproxFunction(PowerLogPsi{sigma, beta});
  }
  static ApproxFunction exponential(double rate) { return ApproxFunction(ExponentialPsi{rate}); }
  static ApproxFunction table(std::vector<double> values,
                              std::optional<double> tail_sigma = std::nullopt) {
    return ApproxFunction(TablePsi{std::move(values), tail_sigma});
  }
  static ApproxFunction zero() { return table({}); }

  const Family& family() const noexcept { return family_; }
  double operator()(std::uint64_t n) const;

  /// The exponent sigma when psi is exactly n^-sigma.
  std::optional<double> power_sigma() const noexcept;

  std::string describe() const;

 private:
  Family family_ = PowerPsi{};
};

// ---------------------------------------------------------------------------
// Dimension functions

struct IdentityDim {};

struct PowerDim {
  double s = 1.0;  ///< f(x) = x^s
};

/// Piecewise-linear interpolation through (0, 0) and the given knots; constant
/// beyond the last knot.
struct TableDim {
  std::vector<double> x;
  std::vector<double> y;
};

/// Arbitrary callable, for checks on functions outside the closed families.
struct CustomDim {
  std::function<double(double)> fn;
  std::string label = "custom";
};

class DimensionFunction {
 public:
  using Family = std::variant<IdentityDim, PowerDim, TableDim, CustomDim>;

  DimensionFunction() = default;
  explicit DimensionFunction(Family family);

  static DimensionFunction identity() { return DimensionFunction(IdentityDim{}); }
  static DimensionFunction power(double s) { return DimensionFunction(PowerDim{s}); }
  static DimensionFunction table(std::vector<double> x, std::vector<double> y) {
    return DimensionFunction(TableDim{std::move(x), std::move(y)});
  }
  static DimensionFunction custom(std::function<double(double)> fn, std::string label = "custom") {
    return DimensionFunction(CustomDim{std::move(fn), std::move(label)});
  }

  const Family& family() const noexcept { return family_; }
  double operator()(double x) const;
  std::string describe() const;

 private:
  Family family_ = IdentityDim{};
};

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Grid certification of the dimension-function hypotheses: f(0) = 0, f
/// nondecreasing, and f(x)/x monotone on the grid.
Verdict check_dimension_function(const DimensionFunction& f, const std::vector<double>& grid);

// ---------------------------------------------------------------------------
// Covering sums

/// sum_{n in range} f(psi(n)), compensated.
double bc_sum(const ApproxFunction& psi, const DimensionFunction& f, IndexRange range);
double bc_sum(const ApproxFunction& psi, IndexRange range);

enum class Convergence { Converges, Diverges };

struct CriticalExponent {
  double s_star = 0.0;        ///< inf{s : sum psi(n)^s < infinity}
  Convergence at_critical = Convergence::Diverges;
};

/// Analytic critical exponent of the covering sum; Unsupported for explicit
/// tables without a tail model.
CriticalExponent critical_exponent(const ApproxFunction& psi);

/// sum_{n >= N} n^-p for p > 1 and real N >= 1 (Hurwitz zeta, by
/// Euler-Maclaurin).
double power_tail_sum(double p, double N);

/// Real N at which power_tail_sum(p, N) == eps.
double power_tail_threshold(double p, double eps);

/// Integral-test prediction of power_tail_threshold: ((p - 1) eps)^(-1/(p-1)).
double integral_test_threshold(double p, double eps);

}  // namespace twisted
