#pragma once

#include "boxprune/boxcon.hpp"

namespace boxprune {

enum class Strategy { PropagationOnly, FunctionalBC, RelationalBC };

enum class BranchRule { WidestFirst, RoundRobin };

struct SolverConfig {
  Strategy strategy = Strategy::PropagationOnly;
  ConsistencyConfig consistency{};
  /// Boxes whose coordinates are all at most this wide are emitted.
  double delta = 1e-6;
  BranchRule branch = BranchRule::WidestFirst;
  long maxSplits = 0;     // 0 = unlimited
  long maxBoxes = 0;      // 0 = unlimited
  double timeBudgetMs = 0;  // 0 = unlimited
};

struct SolvedBox {
  enum class Status { Converged, Limit };
  Box box;  // primary coordinates only
  Status status = Status::Converged;
};

struct SolverStats {
  long splits = 0;
  long prunes = 0;
  long probes = 0;
  long activations = 0;
  double millis = 0;
};

struct SolverResult {
  std::vector<SolvedBox> boxes;
  SolverStats stats;
  bool limited = false;  // some limit stopped the search early
};

/// Branch-and-prune over the primary box: prune with the configured
/// strategy, emit boxes at the width target, otherwise bisect at the
/// midpoint of the chosen coordinate and search depth first, lower half
/// first. Boxes left over when a limit strikes are emitted tagged Limit,
/// as are unsplittable boxes that still exceed the width target.
SolverResult solve(const EquationSystem& es, const Grid& g, const SolverConfig& cfg);

}  // namespace boxprune
