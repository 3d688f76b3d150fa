#pragma once

#include "boxprune/solve.hpp"

namespace boxprune {

/// Broyden banded system of size n over [lo, hi]^n:
///   x_i (2 + 5 x_i^2) + 1 - sum_{j in J_i} x_j (1 + x_j) = 0,
///   J_i = { j != i : max(1, i-5) <= j <= min(n, i+1) }.
EquationSystem broydenBanded(int n, double lo = -1.0, double hi = 1.0);

struct BenchRecord {
  std::string instance;
  int n = 0;
  std::string strategy;  // "prop", "fbc" or "rbc"
  long splits = 0;
  long probes = 0;
  long activations = 0;
  double millis = 0;
  std::string outcome;  // "solved" or "limit"
};

std::string strategyName(Strategy s);

/// Solves the Broyden banded instance for every (n, strategy) combination.
/// `parallel` runs the combinations concurrently; record order is fixed
/// either way: by n, then by strategy.
std::vector<BenchRecord> runBench(const std::vector<int>& ns,
                                  const std::vector<Strategy>& strategies,
                                  const SolverConfig& base, const Grid& g,
                                  double lo = -1.0, double hi = 1.0,
                                  bool parallel = false);

/// CSV with header instance,n,strategy,splits,probes,activations,millis,outcome.
std::string toCsv(const std::vector<BenchRecord>& records);

}  // namespace boxprune
