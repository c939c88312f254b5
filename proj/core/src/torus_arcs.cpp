#include "twisted/torus_arcs.hpp"

#include <algorithm>
#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/summation.hpp"

namespace twisted {

double wrap_unit(double x) noexcept {
  double y = x - std::floor(x);
  // floor can round x - floor(x) up to exactly 1 for tiny negative x.
  return y >= 1.0 ? 0.0 : y;
}

double circular_distance(double x, double y) noexcept {
  double d = std::fabs(wrap_unit(x) - wrap_unit(y));
  return std::min(d, 1.0 - d);
}

ArcSet ArcSet::full() { return ArcSet(std::vector<Interval>{{0.0, 1.0}}); }

bool ArcSet::is_full() const noexcept {
  return intervals_.size() == 1 && intervals_.front().lo == 0.0 && intervals_.front().hi == 1.0;
}

ArcSet ArcSet::from_intervals(std::vector<Interval> pieces) {
  std::vector<Interval> out;
  out.reserve(pieces.size());
  for (auto& p : pieces) {
    p.lo = std::max(p.lo, 0.0);
    p.hi = std::min(p.hi, 1.0);
  }
  std::erase_if(pieces, [](const Interval& p) { return !(p.lo < p.hi); });
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (const auto& p : pieces) {
    if (!out.empty() && p.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back(p);
    }
  }
  return ArcSet(std::move(out));
}

double ArcSet::measure() const noexcept {
  NeumaierSum sum;
  for (const auto& iv : intervals_) sum.add(iv.length());
  return std::clamp(sum.value(), 0.0, 1.0);
}

bool ArcSet::contains(double x) const noexcept {
  x = wrap_unit(x);
  // First interval with lo > x; the candidate is its predecessor.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return x < it->hi;
}

ArcSet normalize(const Arc& arc) {
  if (!(arc.radius >= 0.0) || !std::isfinite(arc.radius) || !std::isfinite(arc.center)) {
    throw InvalidInput("arc radius must be a finite nonnegative number");
  }
  if (arc.radius >= 0.5) return ArcSet::full();
  if (arc.radius == 0.0) return ArcSet::empty();
  const double c = wrap_unit(arc.center);
  const double lo = c - arc.radius;
  const double hi = c + arc.radius;
  if (lo < 0.0) return ArcSet::from_intervals({{0.0, hi}, {lo + 1.0, 1.0}});
  if (hi > 1.0) return ArcSet::from_intervals({{0.0, hi - 1.0}, {lo, 1.0}});
  return ArcSet::from_intervals({{lo, hi}});
}

ArcSet unite(const ArcSet& a, const ArcSet& b) {
  std::vector<Interval> all(a.intervals());
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return ArcSet::from_intervals(std::move(all));
}

namespace {

template <typename Visit>
void for_each_overlap(const ArcSet& a, const ArcSet& b, Visit&& visit) {
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (lo < hi) visit(Interval{lo, hi});
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
}

}  // namespace

ArcSet intersect(const ArcSet& a, const ArcSet& b) {
  std::vector<Interval> out;
  for_each_overlap(a, b, [&](const Interval& iv) { out.push_back(iv); });
  return ArcSet::from_intervals(std::move(out));
}

double overlap_measure(const ArcSet& a, const ArcSet& b) noexcept {
  NeumaierSum sum;
  for_each_overlap(a, b, [&](const Interval& iv) { sum.add(iv.length()); });
  return sum.value();
}

ArcSet complement(const ArcSet& a) {
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const auto& iv : a.intervals()) {
    if (cursor < iv.lo) out.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < 1.0) out.push_back({cursor, 1.0});
  return ArcSet::from_intervals(std::move(out));
}

ArcSet union_many(std::span<const Arc> arcs) {
  std::vector<Interval> pieces;
  pieces.reserve(2 * arcs.size());
  for (const auto& arc : arcs) {
    const ArcSet s = normalize(arc);
    if (s.is_full()) return s;
    pieces.insert(pieces.end(), s.intervals().begin(), s.intervals().end());
  }
  return ArcSet::from_intervals(std::move(pieces));
}

}  // namespace twisted
