#include "boxprune/boxcon.hpp"

#include <deque>

namespace boxprune {

namespace {

bool terminal(const Interval& seg, const Grid& g, double eps) {
  return isCanonical(seg, g) || (eps > 0 && width(seg) <= eps);
}

double epsFor(const ConsistencyConfig& cfg, const Box& primary, int coord) {
  if (!cfg.adaptive) return cfg.eps;
  double w = 0;
  for (std::size_t i = 0; i < primary.size(); ++i)
    if (static_cast<int>(i) != coord) w = std::max(w, width(primary[i]));
  return cfg.lambda * w;
}

/// 0 inside the natural extension of equation `eq` (-1: every equation)
/// with coordinate `coord` restricted to `seg`.
bool rootTest(const EquationSystem& es, int eq, int coord, const Box& primary,
              const Interval& seg, const Grid& g) {
  std::vector<Interval> env = primary.comps;
  env[static_cast<std::size_t>(coord)] = seg;
  auto one = [&](int e) {
    Interval v = evalInterval(*es.equations[static_cast<std::size_t>(e)], env, g);
    return v.contains(0);
  };
  if (eq >= 0) return one(eq);
  for (std::size_t e = 0; e < es.equations.size(); ++e)
    if (!one(static_cast<int>(e))) return false;
  return true;
}

Interval zero1Search(const EquationSystem& es, int eq, int coord, const Box& primary,
                     Interval segment, const Grid& g, double eps, bool leftmost) {
  if (segment.empty) return segment;
  std::vector<Interval> stack;
  Interval cur = segment;
  for (;;) {
    if (rootTest(es, eq, coord, primary, cur, g)) {
      if (terminal(cur, g, eps)) return cur;
      double m = midpoint(cur, g);
      Interval lo = Interval::make(cur.lo, m);
      Interval hi = Interval::make(m, cur.hi);
      stack.push_back(leftmost ? hi : lo);
      cur = leftmost ? lo : hi;
    } else {
      if (stack.empty()) return Interval::emptySet();
      cur = stack.back();
      stack.pop_back();
    }
  }
}

struct Seg {
  Interval seg;
  bool verified;  // a probe of exactly this segment did not fail
};

Interval zero2Search(const ConstraintSystem& cs, const Box& primary, int coord,
                     Interval segment, const ProbePolicy& policy, const Grid& g,
                     double eps, NarrowStats* stats, bool leftmost) {
  if (segment.empty) return segment;
  auto ok = [&](const Interval& s) {
    return probe(cs, primary, coord, s, policy, g, stats) == ProbeResult::NonFailed;
  };
  std::vector<Seg> stack;
  Seg cur{segment, false};
  auto backtrack = [&]() -> bool {
    if (stack.empty()) return false;
    cur = stack.back();
    stack.pop_back();
    return true;
  };
  for (;;) {
    if (terminal(cur.seg, g, eps)) {
      if (cur.verified || ok(cur.seg)) return cur.seg;
      if (!backtrack()) return Interval::emptySet();
      continue;
    }
    double m = midpoint(cur.seg, g);
    Interval lo = Interval::make(cur.seg.lo, m);
    Interval hi = Interval::make(m, cur.seg.hi);
    const Interval& first = leftmost ? lo : hi;
    const Interval& second = leftmost ? hi : lo;
    if (ok(first)) {
      stack.push_back({second, false});
      cur = {first, true};
    } else if (ok(second)) {
      cur = {second, true};
    } else if (!backtrack()) {
      return Interval::emptySet();
    }
  }
}

}  // namespace

Interval zero1Left(const EquationSystem& es, int eq, int coord, const Box& primary,
                   Interval segment, const Grid& g, double eps) {
  return zero1Search(es, eq, coord, primary, segment, g, eps, true);
}

Interval zero1Right(const EquationSystem& es, int eq, int coord, const Box& primary,
                    Interval segment, const Grid& g, double eps) {
  return zero1Search(es, eq, coord, primary, segment, g, eps, false);
}

Interval cwFunctionalBC(const EquationSystem& es, int eq, int coord, const Box& primary,
                        const Grid& g, const ConsistencyConfig& cfg) {
  double eps = epsFor(cfg, primary, coord);
  Interval seg = primary[static_cast<std::size_t>(coord)];
  Interval l = zero1Left(es, eq, coord, primary, seg, g, eps);
  if (l.empty) return l;
  Interval r = zero1Right(es, eq, coord, primary, seg, g, eps);
  return hullOf(l, r);
}

Box functionalBC(const EquationSystem& es, Box primary, const Grid& g,
                 const ConsistencyConfig& cfg, NarrowStats*) {
  if (primary.isEmpty()) return primary;
  struct Pair {
    int eq, coord;
  };
  std::vector<Pair> pairs;
  std::vector<std::vector<int>> eqVars;
  for (std::size_t e = 0; e < es.equations.size(); ++e) {
    eqVars.push_back(variablesOf(*es.equations[e]));
    for (int c : eqVars.back()) pairs.push_back({static_cast<int>(e), c});
  }
  std::deque<int> queue;
  std::vector<char> pending(pairs.size(), 1);
  for (std::size_t i = 0; i < pairs.size(); ++i) queue.push_back(static_cast<int>(i));
  while (!queue.empty()) {
    int pi = queue.front();
    queue.pop_front();
    pending[static_cast<std::size_t>(pi)] = 0;
    const Pair& p = pairs[static_cast<std::size_t>(pi)];
    Interval ni = cwFunctionalBC(es, p.eq, p.coord, primary, g, cfg);
    Interval& cur = primary[static_cast<std::size_t>(p.coord)];
    if (ni == cur) continue;
    cur = ni;
    if (ni.empty) return primary;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      if (static_cast<int>(q) == pi || pending[q]) continue;
      const std::vector<int>& vs = eqVars[static_cast<std::size_t>(pairs[q].eq)];
      for (int v : vs)
        if (v == p.coord) {
          pending[q] = 1;
          queue.push_back(static_cast<int>(q));
          break;
        }
    }
  }
  return primary;
}

ProbeResult probe(const ConstraintSystem& cs, const Box& primary, int coord,
                  const Interval& constraint, const ProbePolicy& policy, const Grid& g,
                  NarrowStats* stats) {
  if (stats) ++stats->probes;
  Box full = cs.withPrimary(primary);
  Interval& comp = full[static_cast<std::size_t>(coord)];
  comp = intersect(comp, constraint);
  if (comp.empty) return ProbeResult::Failed;
  PropStats ps;
  bool failed;
  switch (policy.kind) {
    case ProbePolicy::Kind::FullPropagation:
      failed = propagate(cs, std::move(full), Schedule::fair(), g, &ps).isEmpty();
      break;
    case ProbePolicy::Kind::FunctionalOnly: {
      Box r = propagate(cs, std::move(full), Schedule::functionalSegment(), g, &ps);
      failed = r.isEmpty();
      if (!failed)
        for (int rv : cs.rootVars)
          if (!r[static_cast<std::size_t>(rv)].contains(0)) {
            failed = true;
            break;
          }
      break;
    }
    case ProbePolicy::Kind::Cycles:
      failed = propagate(cs, std::move(full), Schedule::twoPhase(policy.cycles), g, &ps)
                   .isEmpty();
      break;
  }
  if (stats) stats->activations += ps.activations;
  return failed ? ProbeResult::Failed : ProbeResult::NonFailed;
}

Interval zero2Left(const ConstraintSystem& cs, const Box& primary, int coord,
                   Interval segment, const ProbePolicy& policy, const Grid& g, double eps,
                   NarrowStats* stats) {
  return zero2Search(cs, primary, coord, segment, policy, g, eps, stats, true);
}

Interval zero2Right(const ConstraintSystem& cs, const Box& primary, int coord,
                    Interval segment, const ProbePolicy& policy, const Grid& g, double eps,
                    NarrowStats* stats) {
  return zero2Search(cs, primary, coord, segment, policy, g, eps, stats, false);
}

Interval cwRelationalBC(const ConstraintSystem& cs, const Box& primary, int coord,
                        const Grid& g, const ConsistencyConfig& cfg, NarrowStats* stats) {
  double eps = epsFor(cfg, primary, coord);
  Interval seg = primary[static_cast<std::size_t>(coord)];
  if (probe(cs, primary, coord, seg, cfg.policy, g, stats) == ProbeResult::Failed)
    return Interval::emptySet();
  Interval l = zero2Left(cs, primary, coord, seg, cfg.policy, g, eps, stats);
  if (l.empty) return l;
  Interval r = zero2Right(cs, primary, coord, seg, cfg.policy, g, eps, stats);
  return hullOf(l, r);
}

Box relationalBC(const ConstraintSystem& cs, Box primary, const Grid& g,
                 const ConsistencyConfig& cfg, NarrowStats* stats) {
  if (primary.isEmpty()) return primary;
  const std::size_t n = cs.numPrimary;
  std::deque<int> queue;
  std::vector<char> pending(n, 1);
  for (std::size_t i = 0; i < n; ++i) queue.push_back(static_cast<int>(i));
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    pending[static_cast<std::size_t>(c)] = 0;
    Interval ni = cwRelationalBC(cs, primary, c, g, cfg, stats);
    Interval& cur = primary[static_cast<std::size_t>(c)];
    if (ni == cur) continue;
    cur = ni;
    if (ni.empty) return primary;
    for (std::size_t q = 0; q < n; ++q)
      if (static_cast<int>(q) != c && !pending[q]) {
        pending[q] = 1;
        queue.push_back(static_cast<int>(q));
      }
  }
  return primary;
}

}  // namespace boxprune
