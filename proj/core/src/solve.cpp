#include "boxprune/solve.hpp"

#include <chrono>

namespace boxprune {

namespace {

using Clock = std::chrono::steady_clock;

struct Search {
  const EquationSystem& es;
  const ConstraintSystem cs;
  const Grid& g;
  const SolverConfig& cfg;
  SolverResult out;
  Clock::time_point start = Clock::now();

  explicit Search(const EquationSystem& es, const Grid& g, const SolverConfig& cfg)
      : es(es), cs(decompose(es, g)), g(g), cfg(cfg) {}

  double elapsedMs() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }

  Box prune(Box primary) {
    ++out.stats.prunes;
    switch (cfg.strategy) {
      case Strategy::PropagationOnly: {
        PropStats ps;
        Box r = propagate(cs, cs.withPrimary(primary), Schedule::fair(), g, &ps);
        out.stats.activations += ps.activations;
        if (r.isEmpty()) return Box{{Interval::emptySet()}};
        return cs.primaryPart(r);
      }
      case Strategy::FunctionalBC:
        return functionalBC(es, std::move(primary), g, cfg.consistency);
      case Strategy::RelationalBC: {
        NarrowStats ns;
        Box r = relationalBC(cs, std::move(primary), g, cfg.consistency, &ns);
        out.stats.probes += ns.probes;
        out.stats.activations += ns.activations;
        return r;
      }
    }
    return primary;
  }

  bool atTarget(const Box& b) const {
    for (const Interval& c : b.comps)
      if (width(c) > cfg.delta) return false;
    return true;
  }

  /// Coordinate to bisect; -1 when every coordinate is canonical.
  int pickCoordinate(const Box& b, int rr) const {
    const int n = static_cast<int>(b.size());
    if (cfg.branch == BranchRule::RoundRobin) {
      for (int k = 0; k < n; ++k) {
        int c = (rr + k) % n;
        if (!isCanonical(b[static_cast<std::size_t>(c)], g)) return c;
      }
      return -1;
    }
    int best = -1;
    double bestW = -1;
    for (int c = 0; c < n; ++c) {
      const Interval& iv = b[static_cast<std::size_t>(c)];
      if (isCanonical(iv, g)) continue;
      double w = width(iv);
      if (w > bestW) {
        bestW = w;
        best = c;
      }
    }
    return best;
  }

  bool limitHit() const {
    if (cfg.maxSplits > 0 && out.stats.splits >= cfg.maxSplits) return true;
    if (cfg.maxBoxes > 0 && static_cast<long>(out.boxes.size()) >= cfg.maxBoxes)
      return true;
    if (cfg.timeBudgetMs > 0 && elapsedMs() >= cfg.timeBudgetMs) return true;
    return false;
  }

  void run() {
    struct Node {
      Box box;
      int rr;  // next round-robin coordinate
    };
    std::vector<Node> stack;
    stack.push_back({es.initialBox(g), 0});
    while (!stack.empty()) {
      if (limitHit()) {
        out.limited = true;
        for (auto it = stack.begin(); it != stack.end(); ++it)
          out.boxes.push_back({std::move(it->box), SolvedBox::Status::Limit});
        break;
      }
      Node node = std::move(stack.back());
      stack.pop_back();
      Box b = prune(std::move(node.box));
      if (b.isEmpty()) continue;
      if (atTarget(b)) {
        out.boxes.push_back({std::move(b), SolvedBox::Status::Converged});
        continue;
      }
      int c = pickCoordinate(b, node.rr);
      if (c < 0) {
        out.boxes.push_back({std::move(b), SolvedBox::Status::Limit});
        continue;
      }
      double m = midpoint(b[static_cast<std::size_t>(c)], g);
      ++out.stats.splits;
      Box lo = b, hi = std::move(b);
      lo[static_cast<std::size_t>(c)] =
          Interval::make(lo[static_cast<std::size_t>(c)].lo, m);
      hi[static_cast<std::size_t>(c)] =
          Interval::make(m, hi[static_cast<std::size_t>(c)].hi);
      int rr = (c + 1) % static_cast<int>(lo.size());
      stack.push_back({std::move(hi), rr});
      stack.push_back({std::move(lo), rr});
    }
    out.stats.millis = elapsedMs();
  }
};

}  // namespace

SolverResult solve(const EquationSystem& es, const Grid& g, const SolverConfig& cfg) {
  Search s(es, g, cfg);
  s.run();
  return std::move(s.out);
}

}  // namespace boxprune
