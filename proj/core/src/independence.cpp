#include "twisted/independence.hpp"

#include <algorithm>
#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/parallel.hpp"
#include "twisted/summation.hpp"
#include "twisted/torus_arcs.hpp"

namespace twisted {

StripEvent StripEvent::make(std::uint64_t index, std::uint64_t slope, double psi) {
  if (slope == 0) throw InvalidInput("strip slope a_n must be a positive integer");
  if (!(psi >= 0.0)) throw InvalidInput("strip half-width must be >= 0");
  return {index, slope, std::min(psi, 0.5)};
}

double overlap_function(double r1, double r2, double delta) {
  if (!(r1 >= 0.0) || !(r2 >= 0.0)) throw InvalidInput("overlap radii must be >= 0");
  if (r1 + r2 < 0.5) {
    const double d = circular_distance(0.0, delta);
    return std::max(0.0, std::min({r1 + r2 - d, 2.0 * r1, 2.0 * r2}));
  }
  return overlap_measure(normalize({0.0, r1}), normalize({delta, r2}));
}

double strip_intersection_measure(const StripEvent& m, const StripEvent& n) {
  if (m.slope == n.slope) throw Unsupported("strip events with equal slopes are not independent");
  const double r1 = m.half_width;
  const double r2 = n.half_width;
  const ArcSet A = normalize({0.0, r1});
  const ArcSet B = normalize({0.0, r2});
  if (A.is_empty() || B.is_empty()) return 0.0;
  if (A.is_full()) return B.measure();
  if (B.is_full()) return A.measure();

  // As alpha runs over [0, 1) the offset wraps |a_m - a_n| full turns at
  // constant speed, so the alpha-integral equals the delta-integral over one
  // turn. The integrand is piecewise linear in delta with kinks where an
  // endpoint of B + delta crosses an endpoint of A; the trapezoid rule over
  // those kinks is exact.
  std::vector<double> kinks{0.0, 1.0};
  for (const auto& ia : A.intervals()) {
    for (const auto& ib : B.intervals()) {
      for (double ea : {ia.lo, ia.hi}) {
        for (double eb : {ib.lo, ib.hi}) kinks.push_back(wrap_unit(ea - eb));
      }
    }
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  auto g = [&](double delta) { return overlap_function(r1, r2, delta); };
  NeumaierSum integral;
  double prev = g(kinks.front());
  for (std::size_t i = 1; i < kinks.size(); ++i) {
    const double cur = g(kinks[i]);
    integral.add(0.5 * (prev + cur) * (kinks[i] - kinks[i - 1]));
    prev = cur;
  }
  return integral.value();
}

IndependenceReport independence_report(const SequenceSpec& a, const ApproxFunction& psi,
                                       std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
                                       unsigned threads) {
  IndependenceReport report;
  std::vector<std::pair<StripEvent, StripEvent>> events;
  for (const auto& [m, n] : pairs) {
    const std::uint64_t am = a.value(m);
    const std::uint64_t an = a.value(n);
    if (m == n || am == an) {
      report.degenerate.emplace_back(m, n);
      continue;
    }
    events.emplace_back(StripEvent::make(m, am, psi(m)), StripEvent::make(n, an, psi(n)));
  }
  report.rows.resize(events.size());
  parallel_for(events.size(), threads, [&](std::size_t i) {
    const auto& [em, en] = events[i];
    IndependenceRow row;
    row.m = em.index;
    row.n = en.index;
    row.computed = strip_intersection_measure(em, en);
    row.expected = em.measure() * en.measure();
    row.deviation = std::fabs(row.computed - row.expected);
    report.rows[i] = row;
  });
  for (const auto& row : report.rows) report.max_deviation = std::max(report.max_deviation, row.deviation);
  return report;
}

}  // namespace twisted
