#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "boxprune/boxcon.hpp"

namespace oracle {

using namespace boxprune;

/// Plain double evaluation, independent of the library's evaluators.
inline double pointEval(const Expr& e, const std::vector<double>& x) {
  switch (e.kind) {
    case Expr::Kind::Constant: return e.value;
    case Expr::Kind::Variable: return x[static_cast<std::size_t>(e.varIndex)];
    case Expr::Kind::Apply: break;
  }
  auto k = [&](int i) { return pointEval(*e.kids[static_cast<std::size_t>(i)], x); };
  switch (e.op.kind) {
    case OpKind::Add: return k(0) + k(1);
    case OpKind::Sub: return k(0) - k(1);
    case OpKind::Mul: return k(0) * k(1);
    case OpKind::Div: return k(0) / k(1);
    case OpKind::Max: return std::fmax(k(0), k(1));
    case OpKind::Abs: return std::fabs(k(0));
    case OpKind::Pow: return std::pow(k(0), e.op.exponent);
    case OpKind::Exp: return std::exp(k(0));
    case OpKind::Log: return std::log(k(0));
    case OpKind::Sin: return std::sin(k(0));
    case OpKind::Cos: return std::cos(k(0));
    case OpKind::Tan: return std::tan(k(0));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// Gaussian elimination with partial pivoting; false on (near-)singularity.
inline bool gaussSolve(std::vector<std::vector<double>> a, std::vector<double> b,
                       std::vector<double>& out) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (std::fabs(a[p][c]) < 1e-14) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * out[j];
    out[i] = s / a[i][i];
  }
  return true;
}

/// Newton iteration with a central-difference Jacobian; requires a square
/// system. Returns true when the residual drops below 1e-12.
inline bool newtonRefine(const EquationSystem& es, std::vector<double>& x) {
  const std::size_t n = es.vars.size();
  if (es.equations.size() != n) return false;
  for (int iter = 0; iter < 80; ++iter) {
    std::vector<double> f(n);
    double resid = 0;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = pointEval(*es.equations[i], x);
      resid = std::fmax(resid, std::fabs(f[i]));
    }
    if (resid < 1e-12) return true;
    std::vector<std::vector<double>> jac(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      double h = 1e-7 * std::fmax(1.0, std::fabs(x[j]));
      std::vector<double> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      for (std::size_t i = 0; i < n; ++i)
        jac[i][j] = (pointEval(*es.equations[i], xp) - pointEval(*es.equations[i], xm)) /
                    (2 * h);
    }
    std::vector<double> step;
    if (!gaussSolve(jac, f, step)) return false;
    for (std::size_t j = 0; j < n; ++j) x[j] -= step[j];
  }
  return false;
}

/// Canonical sub-intervals of a non-empty interval on the coarse grid,
/// left to right.
inline std::vector<Interval> canonicalTiles(const Interval& domain, const Grid& g) {
  std::vector<Interval> out;
  if (domain.empty) return out;
  if (domain.lo == domain.hi) {
    out.push_back(domain);
    return out;
  }
  for (double a = domain.lo; a < domain.hi; a = g.succ(a))
    out.push_back(Interval::make(a, g.succ(a)));
  return out;
}

/// Hull of the extreme canonical tiles on which 0 stays inside the natural
/// extension of equation `eq` (-1 = all equations); empty when none.
inline Interval enumFunctionalHull(const EquationSystem& es, int eq, int coord,
                                   const Box& primary, const Grid& g) {
  auto test = [&](const Interval& seg) {
    std::vector<Interval> env = primary.comps;
    env[static_cast<std::size_t>(coord)] = seg;
    for (std::size_t e = 0; e < es.equations.size(); ++e) {
      if (eq >= 0 && static_cast<int>(e) != eq) continue;
      if (!evalInterval(*es.equations[e], env, g).contains(0)) return false;
    }
    return true;
  };
  Interval hull = Interval::emptySet();
  for (const Interval& seg :
       canonicalTiles(primary[static_cast<std::size_t>(coord)], g))
    if (test(seg)) hull = hullOf(hull, seg);
  return hull;
}

/// Hull of the extreme canonical tiles whose probe does not fail.
inline Interval enumRelationalHull(const ConstraintSystem& cs, const Box& primary,
                                   int coord, const ProbePolicy& policy, const Grid& g) {
  Interval hull = Interval::emptySet();
  for (const Interval& seg :
       canonicalTiles(primary[static_cast<std::size_t>(coord)], g))
    if (probe(cs, primary, coord, seg, policy, g) == ProbeResult::NonFailed)
      hull = hullOf(hull, seg);
  return hull;
}

/// Random non-empty binary64 interval with mixed magnitudes.
inline Interval randomInterval(std::mt19937_64& rng) {
  auto draw = [&] {
    static const double scales[] = {1e-3, 1.0, 10.0, 1e3};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return u(rng) * scales[rng() % 4];
  };
  double a = draw(), b = draw();
  if (b < a) std::swap(a, b);
  if (rng() % 16 == 0) a = b;  // occasional degenerate interval
  return Interval::make(a, b);
}

/// Random point inside a (finite) non-empty interval.
inline double randomPoint(const Interval& iv, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double t = u(rng);
  return iv.lo + t * (iv.hi - iv.lo);
}

/// Random sub-interval of iv.
inline Interval randomSub(const Interval& iv, std::mt19937_64& rng) {
  double a = randomPoint(iv, rng), b = randomPoint(iv, rng);
  if (b < a) std::swap(a, b);
  return Interval::make(a, b);
}

}  // namespace oracle
