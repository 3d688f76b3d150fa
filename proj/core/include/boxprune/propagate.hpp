#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "boxprune/contract.hpp"

namespace boxprune {

/// Activation order for the chaotic iteration.
///  - Fair: worklist driven by variable watchers; every atom with a pending
///    reason is eventually activated. FIFO, or uniformly random among the
///    pending atoms when a seed is given.
///  - FunctionalSegment: each functional atom once, child before parent.
///  - InverseFunctionalSegment: relational atoms, then functional atoms in
///    reverse child-before-parent order, once each.
///  - TwoPhase: functional then inverse-functional segments, `cycles` times
///    (0 = repeat until a full cycle changes nothing).
struct Schedule {
  enum class Kind { Fair, FunctionalSegment, InverseFunctionalSegment, TwoPhase };

  Kind kind = Kind::Fair;
  int cycles = 0;
  std::optional<std::uint64_t> seed;

  static Schedule fair(std::optional<std::uint64_t> seed = {}) {
    return {Kind::Fair, 0, seed};
  }
  static Schedule functionalSegment() { return {Kind::FunctionalSegment, 0, {}}; }
  static Schedule inverseFunctionalSegment() {
    return {Kind::InverseFunctionalSegment, 0, {}};
  }
  static Schedule twoPhase(int cycles) { return {Kind::TwoPhase, cycles, {}}; }
};

struct TraceStep {
  int atom = -1;
  std::uint64_t digestBefore = 0;
  /// Variables this activation narrowed, with their new intervals.
  std::vector<std::pair<int, Interval>> changed;
};

struct Trace {
  std::vector<TraceStep> steps;
  Box final;
};

struct PropStats {
  long activations = 0;
  long vacuous = 0;  // activations that changed nothing
};

/// Runs the schedule's chaotic iteration from `start` and returns the
/// narrowed box. Under a fair schedule the result is the greatest common
/// fixpoint of the atom operators below `start`, so it does not depend on
/// the activation order. `rho` in [0, 1) suppresses requeueing on changes
/// that shrink a variable by less than that fraction of its width; 0 keeps
/// every change. An empty `start` is returned unchanged with no steps.
Box propagate(const ConstraintSystem& cs, Box start, const Schedule& sch, const Grid& g,
              PropStats* stats = nullptr, Trace* trace = nullptr, double rho = 0.0);

}  // namespace boxprune
