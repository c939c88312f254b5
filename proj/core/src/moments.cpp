#include "twisted/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twisted/errors.hpp"
#include "twisted/parallel.hpp"
#include "twisted/summation.hpp"

namespace twisted {

BlockScheme::BlockScheme(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.size() < 2) throw InvalidInput("block scheme needs at least two boundaries");
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > 62 || (i > 0 && exponents_[i] <= exponents_[i - 1])) {
      throw InvalidInput("block exponents must be strictly increasing and at most 62");
    }
  }
}

BlockScheme BlockScheme::dyadic(unsigned first, unsigned count) {
  std::vector<unsigned> k(count + 1);
  std::iota(k.begin(), k.end(), first);
  return BlockScheme(std::move(k));
}

Block BlockScheme::block(std::size_t i) const {
  if (i >= num_blocks()) throw InvalidInput("block index out of range");
  return {std::uint64_t{1} << exponents_[i], std::uint64_t{1} << exponents_[i + 1]};
}

double block_S(const TargetFamily& T, Block block) {
  if (block.begin == 0 || block.end <= block.begin) throw InvalidInput("empty or invalid block");
  NeumaierSum sum;
  for (std::uint64_t k = block.begin; k < block.end; ++k) sum.add(std::min(1.0, 2.0 * T.psi(k)));
  return sum.value();
}

double pair_overlap_sum(std::span<const Arc> family, const ArcSet* window) {
  struct Item {
    double center;
    double radius;
    ArcSet set;
  };
  std::vector<Item> items;
  items.reserve(family.size());
  for (const auto& arc : family) {
    ArcSet s = normalize(arc);
    if (s.is_empty()) continue;
    items.push_back({wrap_unit(arc.center), std::min(arc.radius, 0.5), std::move(s)});
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.center < y.center; });

  auto term = [window](const ArcSet& x, const ArcSet& y) {
    if (!window) return overlap_measure(x, y);
    return overlap_measure(intersect(x, y), *window);
  };

  const std::size_t K = items.size();
  double r_max = 0.0;
  for (const auto& it : items) r_max = std::max(r_max, it.radius);

  NeumaierSum diagonal;
  NeumaierSum off;
  for (std::size_t i = 0; i < K; ++i) {
    diagonal.add(window ? overlap_measure(items[i].set, *window) : items[i].set.measure());
    const double reach = items[i].radius + r_max;
    for (std::size_t s = 1; s < K; ++s) {
      const std::size_t j = (i + s) % K;
      const double forward = wrap_unit(items[j].center - items[i].center);
      if (forward > reach) break;
      const double backward = wrap_unit(items[i].center - items[j].center);
      // Each unordered pair is visited from the end with the shorter forward gap.
      if (forward > backward || (forward == backward && j < i)) continue;
      off.add(term(items[i].set, items[j].set));
    }
  }
  return diagonal.value() + 2.0 * off.value();
}

double block_C(const TargetFamily& T, Block block) {
  const auto family = balls(T, block);
  return pair_overlap_sum(family);
}

ChungErdos chung_erdos(std::span<const Arc> family, const ArcSet& U) {
  NeumaierSum first;
  for (const auto& arc : family) first.add(overlap_measure(normalize(arc), U));
  ChungErdos out;
  out.actual = overlap_measure(union_many(family), U);
  const double numerator = first.value();
  if (!(numerator > 0.0)) return out;
  const double denominator = pair_overlap_sum(family, U.is_full() ? nullptr : &U);
  out.bound = numerator * numerator / denominator;
  return out;
}

ChungErdos chung_erdos(const TargetFamily& T, Block block, const ArcSet& U) {
  const auto family = balls(T, block);
  return chung_erdos(family, U);
}

std::vector<MomentRow> gp_ratio(const TargetFamily& T, const BlockScheme& scheme) {
  std::vector<MomentRow> rows;
  rows.reserve(scheme.num_blocks());
  const ArcSet full = ArcSet::full();
  for (std::size_t i = 0; i < scheme.num_blocks(); ++i) {
    MomentRow row;
    row.exponent = scheme.exponents()[i];
    row.block = scheme.block(i);
    row.S = block_S(T, row.block);
    if (!(row.S > 0.0)) {
      row.skipped = true;
      row.notice = "S_j = 0; block skipped";
      rows.push_back(row);
      continue;
    }
    const auto family = balls(T, row.block);
    row.C = pair_overlap_sum(family);
    row.ratio = row.C / (row.S * row.S);
    const ChungErdos ce = chung_erdos(family, full);
    row.union_measure = ce.actual;
    row.bound = ce.bound;
    rows.push_back(row);
  }
  return rows;
}

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidInput("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size()));
  const std::size_t idx = rank < 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
  return values[std::min(idx, values.size() - 1)];
}

EnsembleSummary gp_ensemble(std::span<const RealRep> alphas, const SequenceSpec& a, const ApproxFunction& psi,
                            const BlockScheme& scheme, unsigned threads) {
  if (alphas.empty()) throw InvalidInput("ensemble needs at least one alpha");
  EnsembleSummary summary;
  summary.per_sample.resize(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) {
    summary.per_sample[i] = gp_ratio(TargetFamily{alphas[i], a, psi}, scheme);
  });

  summary.max_ratios.reserve(alphas.size());
  for (const auto& rows : summary.per_sample) {
    double m = 0.0;
    for (const auto& r : rows) {
      if (!r.skipped) m = std::max(m, r.ratio);
    }
    summary.max_ratios.push_back(m);
  }
  summary.median = empirical_quantile(summary.max_ratios, 0.5);
  summary.p90 = empirical_quantile(summary.max_ratios, 0.9);
  NeumaierSum total;
  for (double r : summary.max_ratios) total.add(r);
  summary.mean = total.value() / static_cast<double>(summary.max_ratios.size());
  for (double p : {1.5, 2.0, 5.0, 10.0}) {
    const auto below = std::count_if(summary.max_ratios.begin(), summary.max_ratios.end(),
                                     [&](double r) { return r <= p * summary.mean; });
    MarkovCheck check;
    check.p = p;
    check.fraction = static_cast<double>(below) / static_cast<double>(summary.max_ratios.size());
    check.holds = check.fraction >= 1.0 - 1.0 / p;
    summary.markov.push_back(check);
  }
  return summary;
}

}  // namespace twisted
