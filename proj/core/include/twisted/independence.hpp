#pragma once

// Exact measure of pairwise intersections of the strip events
// A_n = {(alpha, gamma) : ||a_n alpha - gamma|| < psi(n)} in the unit square.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twisted/model.hpp"

namespace twisted {

struct StripEvent {
  std::uint64_t index = 1;
  std::uint64_t slope = 1;   ///< a_n
  double half_width = 0.0;   ///< psi(n), capped at 1/2

  static StripEvent make(std::uint64_t index, std::uint64_t slope, double psi);
  double measure() const noexcept { return 2.0 * half_width; }
};

/// lambda(B(0, r1) cap B(delta, r2)) on the torus.
double overlap_function(double r1, double r2, double delta);

/// lambda x lambda (A_m cap A_n), integrated exactly in the relative offset
/// delta = (a_n - a_m) alpha mod 1. Unsupported when a_m == a_n.
double strip_intersection_measure(const StripEvent& m, const StripEvent& n);

struct IndependenceRow {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  double computed = 0.0;
  double expected = 0.0;  ///< lambda(A_m) lambda(A_n)
  double deviation = 0.0;
};

struct IndependenceReport {
  std::vector<IndependenceRow> rows;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> degenerate;
  double max_deviation = 0.0;
};

IndependenceReport independence_report(const SequenceSpec& a, const ApproxFunction& psi,
                                       std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
                                       unsigned threads = 1);

}  // namespace twisted
