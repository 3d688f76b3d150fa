#pragma once

#include <limits>

namespace boxprune {

/// A finite, totally ordered set of representable bounds (containing 0)
/// plus the two ideal elements -inf/+inf. Two backends share this
/// interface: the full binary64 grid, and a uniform step grid coarse
/// enough for exhaustive enumeration in tests.
class Grid {
public:
  static Grid binary64();
  /// Grid elements are the multiples of `step` inside [lo, hi].
  /// Requires step > 0 and lo <= 0 <= hi.
  static Grid uniform(double step, double lo, double hi);

  bool isBinary64() const { return step_ == 0.0; }
  double step() const { return step_; }
  double minFinite() const { return lo_; }
  double maxFinite() const { return hi_; }

  /// Smallest grid bound greater than x; succ(-inf) = minFinite,
  /// succ(maxFinite) = +inf, succ(+inf) = +inf.
  double succ(double x) const;
  double pred(double x) const;

  /// Greatest grid bound <= r (-inf when r lies below every finite element).
  double roundDown(double r) const;
  /// Least grid bound >= r (+inf when r lies above every finite element).
  double roundUp(double r) const;

  bool onGrid(double x) const;

  /// Number of grid elements in [a, b]; 0 when the range misses the grid.
  /// Saturates for the binary64 backend.
  long pointsIn(double a, double b) const;

private:
  Grid(double step, double lo, double hi) : step_(step), lo_(lo), hi_(hi) {}
  double step_;  // 0 = binary64 backend
  double lo_;    // smallest finite element
  double hi_;    // greatest finite element
};

}  // namespace boxprune
