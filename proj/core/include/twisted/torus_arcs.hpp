#pragma once

// Finite unions of arcs on the circle R/Z, kept in a canonical sorted form.

#include <cstddef>
#include <span>
#include <vector>

namespace twisted {

/// Half-open interval [lo, hi) with 0 <= lo < hi <= 1.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Open metric ball B(center, radius) on the torus.
struct Arc {
  double center = 0.0;
  double radius = 0.0;
};

/// Reduces x into [0, 1).
double wrap_unit(double x) noexcept;

/// Distance between two torus points, in [0, 1/2].
double circular_distance(double x, double y) noexcept;

/// Canonical finite union of half-open subintervals of [0, 1).
///
/// Intervals are sorted, pairwise disjoint and never touch; two sets are
/// equal iff their interval sequences are identical.
class ArcSet {
 public:
  ArcSet() = default;

  static ArcSet empty() { return {}; }
  static ArcSet full();

  /// Builds the canonical form of an arbitrary list of intervals. Pieces are
  /// clipped to [0, 1); empty pieces are dropped; overlapping or touching
  /// pieces are merged.
  static ArcSet from_intervals(std::vector<Interval> pieces);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool is_empty() const noexcept { return intervals_.empty(); }
  bool is_full() const noexcept;

  double measure() const noexcept;
  bool contains(double x) const noexcept;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  explicit ArcSet(std::vector<Interval> canonical) : intervals_(std::move(canonical)) {}

  std::vector<Interval> intervals_;
};

/// {x : circular_distance(x, center) < radius}. Throws InvalidInput on a
/// negative or non-finite radius.
ArcSet normalize(const Arc& arc);

ArcSet unite(const ArcSet& a, const ArcSet& b);
ArcSet intersect(const ArcSet& a, const ArcSet& b);
ArcSet complement(const ArcSet& a);

inline double measure(const ArcSet& a) noexcept { return a.measure(); }
inline bool contains(const ArcSet& a, double x) noexcept { return a.contains(x); }

/// measure(intersect(a, b)) without materializing the intersection.
double overlap_measure(const ArcSet& a, const ArcSet& b) noexcept;

/// Canonical union of a family of arcs by sort and sweep, O(k log k).
ArcSet union_many(std::span<const Arc> arcs);

}  // namespace twisted
