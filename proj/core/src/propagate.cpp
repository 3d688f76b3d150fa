#include "boxprune/propagate.hpp"

#include <deque>
#include <random>

namespace boxprune {

namespace {

struct Runner {
  const ConstraintSystem& cs;
  Box& b;
  const Grid& g;
  PropStats* stats;
  Trace* trace;
  double rho;
  std::vector<int> changedBuf;
  std::vector<double> widthBefore;  // per changed var, only when rho > 0

  /// Activates one atom; fills changedBuf with narrowed variable indices.
  /// Returns false when the box became empty.
  bool activate(int atomIdx) {
    changedBuf.clear();
    std::uint64_t before = trace ? digest(b) : 0;
    if (rho > 0) {
      widthBefore.assign(cs.vars.size(), 0.0);
      for (std::size_t i = 0; i < b.size(); ++i) widthBefore[i] = width(b[i]);
    }
    bool ok = contractAtom(cs.atoms[static_cast<std::size_t>(atomIdx)], b, g, &changedBuf);
    if (stats) {
      ++stats->activations;
      if (changedBuf.empty()) ++stats->vacuous;
    }
    if (trace && !changedBuf.empty()) {
      TraceStep step;
      step.atom = atomIdx;
      step.digestBefore = before;
      for (int v : changedBuf)
        step.changed.emplace_back(v, b[static_cast<std::size_t>(v)]);
      trace->steps.push_back(std::move(step));
    }
    return ok;
  }

  /// True when the change to variable v is large enough to wake watchers.
  bool significant(int v) const {
    if (rho <= 0) return true;
    const Interval& now = b[static_cast<std::size_t>(v)];
    double before = widthBefore[static_cast<std::size_t>(v)];
    if (now.empty) return true;
    if (before == std::numeric_limits<double>::infinity()) return true;
    return before - width(now) >= rho * before;
  }
};

bool runSequence(Runner& r, const std::vector<int>& order, bool* anyChange) {
  for (int idx : order) {
    bool ok = r.activate(idx);
    if (anyChange && !r.changedBuf.empty()) *anyChange = true;
    if (!ok) return false;
  }
  return true;
}

std::vector<int> inverseOrder(const ConstraintSystem& cs) {
  std::vector<int> order = cs.relationalAtoms;
  order.insert(order.end(), cs.functionalOrder.rbegin(), cs.functionalOrder.rend());
  return order;
}

void runFair(Runner& r, std::optional<std::uint64_t> seed) {
  const std::size_t nAtoms = r.cs.atoms.size();
  std::deque<int> queue;
  std::vector<char> pending(nAtoms, 1);
  for (std::size_t i = 0; i < nAtoms; ++i) queue.push_back(static_cast<int>(i));
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);

  while (!queue.empty()) {
    int idx;
    if (rng) {
      std::size_t pick = (*rng)() % queue.size();
      idx = queue[pick];
      queue[pick] = queue.back();
      queue.pop_back();
    } else {
      idx = queue.front();
      queue.pop_front();
    }
    pending[static_cast<std::size_t>(idx)] = 0;

    const Atom& atom = r.cs.atoms[static_cast<std::size_t>(idx)];
    bool forwardOnly = atom.kind == Atom::Kind::Functional &&
                       r.b[static_cast<std::size_t>(atom.output)] == Interval::entire();
    if (!r.activate(idx)) return;

    auto enqueue = [&](int a) {
      if (!pending[static_cast<std::size_t>(a)]) {
        pending[static_cast<std::size_t>(a)] = 1;
        queue.push_back(a);
      }
    };
    for (int v : r.changedBuf) {
      if (!r.significant(v)) continue;
      for (int w : r.cs.watchers[static_cast<std::size_t>(v)])
        if (w != idx) enqueue(w);
    }
    // a forward-only first step has not reached the atom's own fixpoint
    if (forwardOnly && !r.changedBuf.empty()) enqueue(idx);
  }
}

}  // namespace

Box propagate(const ConstraintSystem& cs, Box start, const Schedule& sch, const Grid& g,
              PropStats* stats, Trace* trace, double rho) {
  Box b = std::move(start);
  if (b.isEmpty()) {
    if (trace) trace->final = b;
    return b;
  }
  Runner r{cs, b, g, stats, trace, rho, {}, {}};
  switch (sch.kind) {
    case Schedule::Kind::Fair:
      runFair(r, sch.seed);
      break;
    case Schedule::Kind::FunctionalSegment:
      runSequence(r, cs.functionalOrder, nullptr);
      break;
    case Schedule::Kind::InverseFunctionalSegment:
      runSequence(r, inverseOrder(cs), nullptr);
      break;
    case Schedule::Kind::TwoPhase: {
      std::vector<int> inv = inverseOrder(cs);
      int done = 0;
      for (;;) {
        bool change = false;
        if (!runSequence(r, cs.functionalOrder, &change)) break;
        if (!runSequence(r, inv, &change)) break;
        ++done;
        if (sch.cycles > 0 && done >= sch.cycles) break;
        if (sch.cycles == 0 && !change) break;
      }
      break;
    }
  }
  if (trace) trace->final = b;
  return b;
}

}  // namespace boxprune
