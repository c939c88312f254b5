#pragma once

// Second-moment machinery over dyadic blocks: mass sums S_j, pair-overlap sums
// C_j(alpha), the Chung-Erdos lower bound, and ensemble ratios C_j / S_j^2.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twisted/targets.hpp"

namespace twisted {

/// Block boundaries n_j = 2^{k_j}; block i spans [2^{k_i}, 2^{k_{i+1}}).
class BlockScheme {
 public:
  explicit BlockScheme(std::vector<unsigned> exponents);

  /// k_j = first, first + 1, ..., first + count: `count` consecutive dyadic blocks.
  static BlockScheme dyadic(unsigned first, unsigned count);

  const std::vector<unsigned>& exponents() const noexcept { return exponents_; }
  std::size_t num_blocks() const noexcept { return exponents_.size() - 1; }
  Block block(std::size_t i) const;

 private:
  std::vector<unsigned> exponents_;
};

/// sum over the block of lambda(B_k) = min(1, 2 psi(k)); never touches alpha.
double block_S(const TargetFamily& T, Block block);

/// sum_{m <= k, l < n} lambda(B_k cap B_l), diagonal included.
double block_C(const TargetFamily& T, Block block);

/// Pair sum of a prepared arc family, optionally restricted to a window U:
/// sum_{k,l} lambda(B_k cap B_l cap U). Uses a sorted sweep over centers and
/// skips pairs whose centers are farther apart than the radii allow.
double pair_overlap_sum(std::span<const Arc> family, const ArcSet* window = nullptr);

struct ChungErdos {
  double bound = 0.0;   ///< (sum lambda(B_k cap U))^2 / sum lambda(B_k cap B_l cap U)
  double actual = 0.0;  ///< lambda(union B_k cap U)
};

ChungErdos chung_erdos(const TargetFamily& T, Block block, const ArcSet& U);
ChungErdos chung_erdos(std::span<const Arc> family, const ArcSet& U);

struct MomentRow {
  unsigned exponent = 0;  ///< k_j of the block's left boundary
  Block block;
  double S = 0.0;
  double C = 0.0;
  double ratio = 0.0;  ///< C / S^2
  double union_measure = 0.0;
  double bound = 0.0;  ///< Chung-Erdos bound on the full circle
  bool skipped = false;
  std::string notice;
};

/// Per-block moment report for one alpha. Blocks with S_j = 0 are marked
/// skipped.
std::vector<MomentRow> gp_ratio(const TargetFamily& T, const BlockScheme& scheme);

struct MarkovCheck {
  double p = 0.0;
  double fraction = 0.0;  ///< fraction of samples with X <= p * mean(X)
  bool holds = false;     ///< fraction >= 1 - 1/p
};

struct EnsembleSummary {
  std::vector<std::vector<MomentRow>> per_sample;
  std::vector<double> max_ratios;  ///< per sample, max over blocks of C_j / S_j^2
  double median = 0.0;
  double p90 = 0.0;
  double mean = 0.0;
  /// Markov checks on the max ratio for p in {1.5, 2, 5, 10}.
  std::vector<MarkovCheck> markov;
};

/// Ensemble over alpha samples; per-sample work runs in parallel and the
/// summary is assembled in sample order.
EnsembleSummary gp_ensemble(std::span<const RealRep> alphas, const SequenceSpec& a, const ApproxFunction& psi,
                            const BlockScheme& scheme, unsigned threads = 1);

/// Nearest-rank empirical quantile, q in [0, 1].
double empirical_quantile(std::vector<double> values, double q);

}  // namespace twisted
