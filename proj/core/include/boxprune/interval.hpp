#pragma once

#include <span>
#include <string>
#include <vector>

#include "boxprune/grid.hpp"

namespace boxprune {

/// Closed connected set of reals with grid-valued bounds, or the
/// distinguished empty set. Bounds may be -inf / +inf (absent bound).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  static Interval make(double lo, double hi);
  static Interval point(double v) { return make(v, v); }
  static Interval emptySet() { return Interval{}; }
  static Interval entire();

  bool isEmpty() const { return empty; }
  bool contains(double x) const { return !empty && lo <= x && x <= hi; }
  bool isSubsetOf(const Interval& other) const;
};

bool operator==(const Interval& a, const Interval& b);
inline bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }

Interval intersect(const Interval& a, const Interval& b);
Interval hullOf(const Interval& a, const Interval& b);
/// hi - lo; +inf for unbounded intervals, 0 for the empty set.
double width(const Interval& a);

/// True when a is non-empty and no grid bound lies strictly between its
/// bounds: no smaller grid interval fits inside, so narrowing stops here.
bool isCanonical(const Interval& a, const Grid& g);

/// Grid bound strictly between the bounds, nearest the clamped arithmetic
/// mean (infinite bounds clamped to the extreme finite elements first).
/// Throws std::logic_error for empty or canonical input.
double midpoint(const Interval& a, const Grid& g);

/// Smallest grid interval containing the real interval [lo, hi].
Interval snapOutward(double lo, double hi, const Grid& g);

/// "[lo, hi]" with 17-significant-digit bounds on the binary64 backend and
/// shortest round-trip decimals on a uniform grid; "empty"; "-inf"/"+inf".
std::string toString(const Interval& a, const Grid& g);
std::string boundToString(double b, const Grid& g);

// --- admissible operations -------------------------------------------------

enum class OpKind { Add, Sub, Mul, Div, Max, Abs, Pow, Exp, Log, Sin, Cos, Tan };

struct Op {
  OpKind kind = OpKind::Add;
  int exponent = 0;  // Pow only
};

int arity(OpKind k);
std::string opName(const Op& op);  // "+", "max", "pow(3)", ...

/// Smallest grid interval containing { f(x1..xk) | xi in args, f defined }.
/// EMPTY when no argument tuple lies in f's domain. Bounds are outward
/// rounded; transcendental bounds are additionally widened one grid step.
Interval extend(const Op& op, std::span<const Interval> args, const Grid& g);

/// Real-valued evaluation of one operation; NaN when undefined at the point.
double applyReal(const Op& op, std::span<const double> args);

}  // namespace boxprune
