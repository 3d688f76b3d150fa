#pragma once

#include "boxprune/propagate.hpp"

namespace boxprune {

/// How a probe decides failure of a trial sub-box.
///  - FullPropagation: fair propagation; failed iff the box empties.
///  - FunctionalOnly: one functional segment; failed iff the box empties or
///    some equation root interval misses 0.
///  - Cycles: `cycles` two-phase rounds; failed iff the box empties.
struct ProbePolicy {
  enum class Kind { FullPropagation, FunctionalOnly, Cycles };
  Kind kind = Kind::FullPropagation;
  int cycles = 1;

  static ProbePolicy full() { return {Kind::FullPropagation, 1}; }
  static ProbePolicy functionalOnly() { return {Kind::FunctionalOnly, 1}; }
  static ProbePolicy withCycles(int k) { return {Kind::Cycles, k}; }
};

/// Termination control for the interval searches: a segment is terminal
/// when it is canonical, or when eps > 0 and its width is at most eps.
/// With `adaptive` set, eps is lambda times the widest other coordinate.
struct ConsistencyConfig {
  double eps = 0.0;
  bool adaptive = false;
  double lambda = 0.0625;
  ProbePolicy policy{};
};

enum class ProbeResult { Failed, NonFailed };

struct NarrowStats {
  long probes = 0;
  long activations = 0;
};

/// Leftmost terminal sub-interval of `segment` on which 0 stays inside the
/// natural interval extension of equation `eq` (bisection, left first).
/// `eq` = -1 tests every equation of the system. Empty when none survives.
Interval zero1Left(const EquationSystem& es, int eq, int coord, const Box& primary,
                   Interval segment, const Grid& g, double eps = 0.0);
Interval zero1Right(const EquationSystem& es, int eq, int coord, const Box& primary,
                    Interval segment, const Grid& g, double eps = 0.0);

/// Hull of the leftmost and rightmost surviving sub-intervals of coordinate
/// `coord` under equation `eq`; empty when the coordinate admits none.
Interval cwFunctionalBC(const EquationSystem& es, int eq, int coord, const Box& primary,
                        const Grid& g, const ConsistencyConfig& cfg);

/// Greatest common fixpoint of the coordinate-wise operators over all
/// (equation, coordinate) pairs, starting from `primary`.
Box functionalBC(const EquationSystem& es, Box primary, const Grid& g,
                 const ConsistencyConfig& cfg, NarrowStats* stats = nullptr);

/// Tests the box obtained from `primary` by restricting `coord` to
/// `constraint` (auxiliaries reset to their initial intervals).
ProbeResult probe(const ConstraintSystem& cs, const Box& primary, int coord,
                  const Interval& constraint, const ProbePolicy& policy, const Grid& g,
                  NarrowStats* stats = nullptr);

/// Leftmost terminal sub-interval of `segment` whose probe does not fail
/// (bisection, left first; failed halves prune their subtree). Every
/// returned interval has a non-failing probe. Empty when all probes fail.
Interval zero2Left(const ConstraintSystem& cs, const Box& primary, int coord,
                   Interval segment, const ProbePolicy& policy, const Grid& g,
                   double eps = 0.0, NarrowStats* stats = nullptr);
Interval zero2Right(const ConstraintSystem& cs, const Box& primary, int coord,
                    Interval segment, const ProbePolicy& policy, const Grid& g,
                    double eps = 0.0, NarrowStats* stats = nullptr);

/// Probes the full coordinate, then hulls the extreme surviving
/// sub-intervals found by the probing searches.
Interval cwRelationalBC(const ConstraintSystem& cs, const Box& primary, int coord,
                        const Grid& g, const ConsistencyConfig& cfg,
                        NarrowStats* stats = nullptr);

/// Greatest common fixpoint of the coordinate-wise probing operators over
/// the primary coordinates, starting from `primary`.
Box relationalBC(const ConstraintSystem& cs, Box primary, const Grid& g,
                 const ConsistencyConfig& cfg, NarrowStats* stats = nullptr);

}  // namespace boxprune
