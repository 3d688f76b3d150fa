#include "boxprune/contract.hpp"

#include <cmath>

namespace boxprune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval powPoint(double x, int k, const Grid& g) {
  Interval p = Interval::point(x);
  return extend({OpKind::Pow, k}, std::span<const Interval>(&p, 1), g);
}

/// Smallest grid bound r >= 0 whose k-th power is certified >= t, so
/// r bounds the real k-th root of t from above. t finite, k >= 1.
double rootUpMag(double t, int k, const Grid& g) {
  if (t <= 0) return 0.0;
  double r = g.roundUp(std::pow(t, 1.0 / k));
  if (!(r >= 0)) r = 0.0;
  int guard = 0;
  while (r < kInf && powPoint(r, k, g).lo < t && guard++ < 4096) r = g.succ(r);
  guard = 0;
  while (r > 0 && guard++ < 4096) {
    double p = g.pred(r);
    if (p >= 0 && p > -kInf && powPoint(p, k, g).lo >= t) r = p;
    else break;
  }
  return r;
}

/// Greatest grid bound r >= 0 whose k-th power is certified <= t, so
/// r bounds the real k-th root of t from below. t >= 0 finite, k >= 1.
double rootDownMag(double t, int k, const Grid& g) {
  if (t <= 0) return 0.0;
  double r = g.roundDown(std::pow(t, 1.0 / k));
  if (!(r >= 0)) r = 0.0;
  int guard = 0;
  while (r > 0 && powPoint(r, k, g).hi > t && guard++ < 4096) {
    double p = g.pred(r);
    r = (p >= 0 && p > -kInf) ? p : 0.0;
  }
  guard = 0;
  while (guard++ < 4096) {
    double s = g.succ(r);
    if (s < kInf && powPoint(s, k, g).hi <= t) r = s;
    else break;
  }
  return r;
}

double signedRootDown(double t, int k, const Grid& g) {
  if (t == -kInf) return -kInf;
  if (t == kInf) return kInf;
  return t >= 0 ? rootDownMag(t, k, g) : -rootUpMag(-t, k, g);
}

double signedRootUp(double t, int k, const Grid& g) {
  if (t == -kInf) return -kInf;
  if (t == kInf) return kInf;
  return t >= 0 ? rootUpMag(t, k, g) : -rootDownMag(-t, k, g);
}

struct Narrower {
  Box& b;
  const Grid& g;
  std::vector<int>* changed;
  bool roundChanged = false;
  bool failed = false;

  const Interval& at(int v) const { return b[static_cast<std::size_t>(v)]; }

  void record(int v) {
    if (!changed) return;
    for (int c : *changed)
      if (c == v) return;
    changed->push_back(v);
  }

  /// b[v] := b[v] ∩ cand; marks failure when the result is empty.
  void narrow(int v, const Interval& cand) {
    if (failed) return;
    Interval cur = at(v);
    Interval ni = intersect(cur, cand);
    if (ni == cur) return;
    b[static_cast<std::size_t>(v)] = ni;
    record(v);
    roundChanged = true;
    if (ni.empty) failed = true;
  }

  Interval ext(OpKind k, const Interval& a) const {
    return extend({k}, std::span<const Interval>(&a, 1), g);
  }
  Interval ext(OpKind k, const Interval& a, const Interval& bb) const {
    Interval args[2] = {a, bb};
    return extend({k}, std::span<const Interval>(args, 2), g);
  }
  Interval extPow(int e, const Interval& a) const {
    return extend({OpKind::Pow, e}, std::span<const Interval>(&a, 1), g);
  }
};

/// Preimage of an even power: hull of the two sign branches intersected
/// with x, with grid-certified root bounds.
Interval evenPowPreimage(const Interval& x, const Interval& target, int k, const Grid& g) {
  Interval oc = intersect(target, Interval::make(0, kInf));
  if (oc.empty) return Interval::emptySet();
  double rHi = oc.hi == kInf ? kInf : rootUpMag(oc.hi, k, g);
  double rLo = oc.lo <= 0 ? 0.0 : rootDownMag(oc.lo, k, g);
  Interval pos = Interval::make(rLo, rHi);
  Interval neg = Interval::make(-rHi, -rLo);
  return hullOf(intersect(x, pos), intersect(x, neg));
}

Interval oddPowPreimage(const Interval& target, int k, const Grid& g) {
  return Interval::make(signedRootDown(target.lo, k, g), signedRootUp(target.hi, k, g));
}

/// x ∩ preimage of x^k = target for any nonzero k (negative via 1/target).
Interval powPreimage(const Interval& x, const Interval& target, int k, const Grid& g) {
  Interval t = target;
  int m = k;
  if (k < 0) {
    Interval one = Interval::point(1.0);
    Interval args[2] = {one, target};
    t = extend({OpKind::Div}, std::span<const Interval>(args, 2), g);
    if (t.empty) return Interval::emptySet();
    m = -k;
  }
  if (m % 2 == 0) return evenPowPreimage(x, t, m, g);
  return intersect(x, oddPowPreimage(t, m, g));
}

/// Hull of the periodic preimage branches of sin/cos/tan that meet x.
/// Returns x unchanged when x is unbounded or spans too many periods.
Interval trigPreimage(OpKind kind, const Interval& x, const Interval& target, const Grid& g) {
  if (x.lo == -kInf || x.hi == kInf) return x;
  const double period = kind == OpKind::Tan ? M_PI : 2.0 * M_PI;
  double span = (x.hi - x.lo) / period;
  if (!(span < 1e6)) return x;

  double aLo, aHi, bLo, bHi;
  bool twoBranches = true;
  if (kind == OpKind::Sin) {
    Interval oc = intersect(target, Interval::make(-1, 1));
    if (oc.empty) return Interval::emptySet();
    aLo = std::asin(oc.lo);
    aHi = std::asin(oc.hi);
    bLo = M_PI - aHi;
    bHi = M_PI - aLo;
  } else if (kind == OpKind::Cos) {
    Interval oc = intersect(target, Interval::make(-1, 1));
    if (oc.empty) return Interval::emptySet();
    aLo = std::acos(oc.hi);
    aHi = std::acos(oc.lo);
    bLo = -aHi;
    bHi = -aLo;
  } else {
    aLo = std::atan(target.lo);
    aHi = std::atan(target.hi);
    bLo = bHi = 0;
    twoBranches = false;
  }

  long nLo = static_cast<long>(std::floor((x.lo - 2 * period) / period));
  long nHi = static_cast<long>(std::ceil((x.hi + 2 * period) / period));
  Interval acc = Interval::emptySet();
  for (long n = nLo; n <= nHi; ++n) {
    double shift = static_cast<double>(n) * period;
    double slack = (std::abs(static_cast<double>(n)) + 2.0) * 1e-12;
    auto piece = [&](double lo, double hi) {
      double plo = g.pred(g.roundDown(lo + shift - slack));
      double phi = g.succ(g.roundUp(hi + shift + slack));
      acc = hullOf(acc, intersect(x, Interval::make(plo, phi)));
    };
    piece(aLo, aHi);
    if (twoBranches) piece(bLo, bHi);
  }
  return acc;
}

void backwardStep(const Atom& a, Narrower& n) {
  const Interval O = n.at(a.output);
  switch (a.op.kind) {
    case OpKind::Add: {
      int x = a.inputs[0], y = a.inputs[1];
      if (x == y) {
        Interval two = Interval::point(2.0);
        n.narrow(x, n.ext(OpKind::Div, O, two));
        break;
      }
      n.narrow(x, n.ext(OpKind::Sub, O, n.at(y)));
      n.narrow(y, n.ext(OpKind::Sub, O, n.at(x)));
      break;
    }
    case OpKind::Sub: {
      int x = a.inputs[0], y = a.inputs[1];
      if (x == y) break;  // x - x; no sound pointwise narrowing of x
      n.narrow(x, n.ext(OpKind::Add, O, n.at(y)));
      n.narrow(y, n.ext(OpKind::Sub, n.at(x), O));
      break;
    }
    case OpKind::Mul: {
      int x = a.inputs[0], y = a.inputs[1];
      if (x == y) {
        n.narrow(x, powPreimage(n.at(x), O, 2, n.g));
        break;
      }
      // 0 in the partner and 0 in the output leaves the input unconstrained
      if (!(n.at(y).contains(0) && O.contains(0)))
        n.narrow(x, n.ext(OpKind::Div, O, n.at(y)));
      if (n.failed) break;
      if (!(n.at(x).contains(0) && O.contains(0)))
        n.narrow(y, n.ext(OpKind::Div, O, n.at(x)));
      break;
    }
    case OpKind::Div: {
      int x = a.inputs[0], y = a.inputs[1];
      if (x == y) break;  // x / x
      n.narrow(x, n.ext(OpKind::Mul, O, n.at(y)));
      if (n.failed) break;
      if (!(n.at(x).contains(0) && O.contains(0)))
        n.narrow(y, n.ext(OpKind::Div, n.at(x), O));
      break;
    }
    case OpKind::Max: {
      int x = a.inputs[0], y = a.inputs[1];
      if (x == y) {
        n.narrow(x, O);
        break;
      }
      n.narrow(x, Interval::make(-kInf, O.hi));
      if (!n.failed && n.at(y).hi < O.lo) n.narrow(x, O);
      if (n.failed) break;
      n.narrow(y, Interval::make(-kInf, O.hi));
      if (!n.failed && n.at(x).hi < O.lo) n.narrow(y, O);
      break;
    }
    case OpKind::Abs: {
      int x = a.inputs[0];
      Interval oc = intersect(O, Interval::make(0, kInf));
      if (oc.empty) {
        n.narrow(x, Interval::emptySet());
        break;
      }
      Interval pos = intersect(n.at(x), oc);
      Interval neg = intersect(n.at(x), Interval::make(-oc.hi, -oc.lo));
      n.narrow(x, hullOf(pos, neg));
      break;
    }
    case OpKind::Pow: {
      int x = a.inputs[0];
      if (a.op.exponent == 0) break;  // x^0 = 1 constrains x nowhere
      n.narrow(x, powPreimage(n.at(x), O, a.op.exponent, n.g));
      break;
    }
    case OpKind::Exp:
      n.narrow(a.inputs[0], n.ext(OpKind::Log, O));
      break;
    case OpKind::Log:
      n.narrow(a.inputs[0], n.ext(OpKind::Exp, O));
      break;
    case OpKind::Sin:
    case OpKind::Cos:
    case OpKind::Tan: {
      int x = a.inputs[0];
      n.narrow(x, trigPreimage(a.op.kind, n.at(x), O, n.g));
      break;
    }
  }
}

}  // namespace

bool contractAtom(const Atom& a, Box& b, const Grid& g, std::vector<int>* changed) {
  if (a.kind == Atom::Kind::Relational) {
    Narrower n{b, g, changed};
    if (n.at(a.var).empty) return false;
    n.narrow(a.var, Interval::point(0.0));
    return !n.failed;
  }

  if (b[static_cast<std::size_t>(a.output)].empty) return false;
  for (int v : a.inputs)
    if (b[static_cast<std::size_t>(v)].empty) return false;

  std::vector<Interval> ins;
  auto gatherInputs = [&] {
    ins.clear();
    for (int v : a.inputs) ins.push_back(b[static_cast<std::size_t>(v)]);
  };

  const Interval entry = b[static_cast<std::size_t>(a.output)];
  if (entry == Interval::entire()) {
    gatherInputs();
    Interval f = extend(a.op, ins, g);
    if (f != entry) {
      b[static_cast<std::size_t>(a.output)] = f;
      if (changed) changed->push_back(a.output);
    }
    return !f.empty;
  }

  Narrower n{b, g, changed};
  for (;;) {
    n.roundChanged = false;
    gatherInputs();
    n.narrow(a.output, extend(a.op, ins, g));
    if (n.failed) return false;
    backwardStep(a, n);
    if (n.failed) return false;
    if (!n.roundChanged) return true;
  }
}

}  // namespace boxprune
