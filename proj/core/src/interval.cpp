#include "boxprune/interval.hpp"

#include <algorithm>
#include <cfenv>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace boxprune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
constexpr double kSlack = 1e-9;  // absorbs libm/pi placement error in tests for
                                 // critical points; bounds are widened anyway

struct RoundMode {
  int saved;
  explicit RoundMode(int m) : saved(std::fegetround()) { std::fesetround(m); }
  ~RoundMode() { std::fesetround(saved); }
};

double rsum(double a, double b, int mode) {
  RoundMode g(mode);
  volatile double x = a, y = b;
  volatile double r = x + y;
  return r;
}

double rdiff(double a, double b, int mode) {
  RoundMode g(mode);
  volatile double x = a, y = b;
  volatile double r = x - y;
  return r;
}

// 0 * inf counts as 0: an endpoint product with a zero factor contributes
// exactly 0 to the range.
double rprod(double a, double b, int mode) {
  if (a == 0.0 || b == 0.0) return 0.0;
  RoundMode g(mode);
  volatile double x = a, y = b;
  volatile double r = x * y;
  return r;
}

// Quotient of endpoints; NaN marks an undefined inf/inf combination that the
// min/max scan skips. Callers never pass b == 0.
double rquot(double a, double b, int mode) {
  if (a == 0.0) return 0.0;
  if (std::isinf(a) && std::isinf(b)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(b)) return 0.0;
  RoundMode g(mode);
  volatile double x = a, y = b;
  volatile double r = x / y;
  return r;
}

double minSkipNan(std::initializer_list<double> vs) {
  double m = kInf;
  bool any = false;
  for (double v : vs)
    if (!std::isnan(v)) { m = std::min(m, v); any = true; }
  if (!any) throw std::logic_error("all endpoint candidates undefined");
  return m;
}

double maxSkipNan(std::initializer_list<double> vs) {
  double m = -kInf;
  bool any = false;
  for (double v : vs)
    if (!std::isnan(v)) { m = std::max(m, v); any = true; }
  if (!any) throw std::logic_error("all endpoint candidates undefined");
  return m;
}

// |x|^k with directed rounding, x >= 0, k >= 1.
double powMag(double x, int k, int mode) {
  if (std::isinf(x)) return kInf;
  double r = x;
  for (int i = 1; i < k; ++i) r = rprod(r, x, mode);
  return r;
}

double signedPow(double v, int k, int mode) {
  if (v < 0.0)
    return -powMag(-v, k, mode == FE_DOWNWARD ? FE_UPWARD : FE_DOWNWARD);
  return powMag(v, k, mode);
}

// Transcendental results are hardware values widened one grid step per side.
double wideDown(double v, const Grid& g) { return g.pred(g.roundDown(v)); }
double wideUp(double v, const Grid& g) { return g.succ(g.roundUp(v)); }

// Is there a point base + k*period (integer k) inside [lo, hi]?
bool hasCritical(double base, double period, double lo, double hi) {
  double k = std::ceil((lo - base) / period - kSlack);
  double p = base + k * period;
  return p <= hi + kSlack;
}

Interval divide(const Interval& x, const Interval& y, const Grid& g);

Interval powInterval(const Interval& x, int k, const Grid& g) {
  if (k == 0) return snapOutward(1.0, 1.0, g);
  if (k < 0) {
    Interval base = powInterval(x, -k, g);
    Interval one = Interval::make(1.0, 1.0);
    return divide(one, base, g);
  }
  if (k % 2 == 1)
    return snapOutward(signedPow(x.lo, k, FE_DOWNWARD), signedPow(x.hi, k, FE_UPWARD), g);
  if (x.lo >= 0.0)
    return snapOutward(powMag(x.lo, k, FE_DOWNWARD), powMag(x.hi, k, FE_UPWARD), g);
  if (x.hi <= 0.0)
    return snapOutward(powMag(-x.hi, k, FE_DOWNWARD), powMag(-x.lo, k, FE_UPWARD), g);
  return snapOutward(0.0, powMag(std::max(-x.lo, x.hi), k, FE_UPWARD), g);
}

// Extended division: when 0 lies inside the denominator the two-ray quotient
// is replaced by its hull so that domains stay single intervals.
Interval divide(const Interval& x, const Interval& y, const Grid& g) {
  if (y.lo == 0.0 && y.hi == 0.0) return Interval::emptySet();
  if (y.lo > 0.0 || y.hi < 0.0) {
    double l = minSkipNan({rquot(x.lo, y.lo, FE_DOWNWARD), rquot(x.lo, y.hi, FE_DOWNWARD),
                           rquot(x.hi, y.lo, FE_DOWNWARD), rquot(x.hi, y.hi, FE_DOWNWARD)});
    double u = maxSkipNan({rquot(x.lo, y.lo, FE_UPWARD), rquot(x.lo, y.hi, FE_UPWARD),
                           rquot(x.hi, y.lo, FE_UPWARD), rquot(x.hi, y.hi, FE_UPWARD)});
    return snapOutward(l, u, g);
  }
  if (x.lo == 0.0 && x.hi == 0.0) return snapOutward(0.0, 0.0, g);
  if (y.lo == 0.0) {  // y = [0, d], d > 0
    if (x.lo >= 0.0) return snapOutward(rquot(x.lo, y.hi, FE_DOWNWARD), kInf, g);
    if (x.hi <= 0.0) return snapOutward(-kInf, rquot(x.hi, y.hi, FE_UPWARD), g);
    return Interval::entire();
  }
  if (y.hi == 0.0) {  // y = [c, 0], c < 0
    if (x.lo >= 0.0) return snapOutward(-kInf, rquot(x.lo, y.lo, FE_UPWARD), g);
    if (x.hi <= 0.0) return snapOutward(rquot(x.hi, y.lo, FE_DOWNWARD), kInf, g);
    return Interval::entire();
  }
  return Interval::entire();  // 0 interior to y
}

Interval sinInterval(const Interval& x, const Grid& g) {
  if (std::isinf(x.lo) || std::isinf(x.hi)) return snapOutward(-1.0, 1.0, g);
  double l, u;
  if (hasCritical(kPi / 2, 2 * kPi, x.lo, x.hi)) u = 1.0;
  else u = std::min(1.0, wideUp(std::max(std::sin(x.lo), std::sin(x.hi)), g));
  if (hasCritical(-kPi / 2, 2 * kPi, x.lo, x.hi)) l = -1.0;
  else l = std::max(-1.0, wideDown(std::min(std::sin(x.lo), std::sin(x.hi)), g));
  return snapOutward(l, u, g);
}

Interval cosInterval(const Interval& x, const Grid& g) {
  if (std::isinf(x.lo) || std::isinf(x.hi)) return snapOutward(-1.0, 1.0, g);
  double l, u;
  if (hasCritical(0.0, 2 * kPi, x.lo, x.hi)) u = 1.0;
  else u = std::min(1.0, wideUp(std::max(std::cos(x.lo), std::cos(x.hi)), g));
  if (hasCritical(kPi, 2 * kPi, x.lo, x.hi)) l = -1.0;
  else l = std::max(-1.0, wideDown(std::min(std::cos(x.lo), std::cos(x.hi)), g));
  return snapOutward(l, u, g);
}

Interval tanInterval(const Interval& x, const Grid& g) {
  if (std::isinf(x.lo) || std::isinf(x.hi)) return Interval::entire();
  if (hasCritical(kPi / 2, kPi, x.lo, x.hi)) return Interval::entire();
  double l = wideDown(std::tan(x.lo), g);
  double u = wideUp(std::tan(x.hi), g);
  if (l > u) return Interval::entire();
  return snapOutward(l, u, g);
}

}  // namespace

Interval Interval::make(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw std::logic_error("interval bound is nan");
  if (lo > hi) throw std::logic_error("interval lower bound above upper bound");
  if (lo == kInf || hi == -kInf) throw std::logic_error("interval contains no reals");
  if (lo == 0.0) lo = 0.0;  // normalize -0
  if (hi == 0.0) hi = 0.0;
  Interval r;
  r.lo = lo;
  r.hi = hi;
  r.empty = false;
  return r;
}

Interval Interval::entire() { return make(-kInf, kInf); }

bool Interval::isSubsetOf(const Interval& other) const {
  if (empty) return true;
  if (other.empty) return false;
  return other.lo <= lo && hi <= other.hi;
}

bool operator==(const Interval& a, const Interval& b) {
  if (a.empty || b.empty) return a.empty == b.empty;
  return a.lo == b.lo && a.hi == b.hi;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.empty || b.empty) return Interval::emptySet();
  double lo = std::max(a.lo, b.lo);
  double hi = std::min(a.hi, b.hi);
  if (lo > hi) return Interval::emptySet();
  return Interval::make(lo, hi);
}

Interval hullOf(const Interval& a, const Interval& b) {
  if (a.empty) return b;
  if (b.empty) return a;
  return Interval::make(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

double width(const Interval& a) {
  if (a.empty) return 0.0;
  if (std::isinf(a.lo) || std::isinf(a.hi)) return kInf;
  return a.hi - a.lo;
}

bool isCanonical(const Interval& a, const Grid& g) {
  if (a.empty) return false;
  if (a.lo == a.hi) return true;
  // greatest grid bound strictly below hi
  double c = g.roundDown(a.hi);
  if (c == a.hi) c = g.pred(a.hi);
  return !(c > a.lo);
}

double midpoint(const Interval& a, const Grid& g) {
  if (a.empty) throw std::logic_error("midpoint of empty interval");
  if (isCanonical(a, g)) throw std::logic_error("midpoint of canonical interval");
  double lo = std::max(a.lo, g.minFinite());
  double hi = std::min(a.hi, g.maxFinite());
  double mean = lo / 2 + hi / 2;
  double dn = g.roundDown(mean);
  double up = g.roundUp(mean);
  double m = (mean - dn <= up - mean) ? dn : up;
  if (m <= a.lo) m = g.succ(a.lo);
  if (m >= a.hi) m = g.pred(a.hi);
  if (!(a.lo < m && m < a.hi)) throw std::logic_error("midpoint: no interior grid bound");
  return m;
}

Interval snapOutward(double lo, double hi, const Grid& g) {
  if (lo == kInf) lo = g.maxFinite();   // true value exceeds every finite element
  if (hi == -kInf) hi = g.minFinite();
  return Interval::make(g.roundDown(lo), g.roundUp(hi));
}

std::string boundToString(double b, const Grid& g) {
  if (b == kInf) return "+inf";
  if (b == -kInf) return "-inf";
  if (g.isBinary64()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", b);
    return buf;
  }
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, b);
  (void)ec;
  return std::string(buf, p);
}

std::string toString(const Interval& a, const Grid& g) {
  if (a.empty) return "empty";
  return "[" + boundToString(a.lo, g) + ", " + boundToString(a.hi, g) + "]";
}

int arity(OpKind k) {
  switch (k) {
    case OpKind::Add: case OpKind::Sub: case OpKind::Mul:
    case OpKind::Div: case OpKind::Max:
      return 2;
    default:
      return 1;
  }
}

std::string opName(const Op& op) {
  switch (op.kind) {
    case OpKind::Add: return "+";
    case OpKind::Sub: return "-";
    case OpKind::Mul: return "*";
    case OpKind::Div: return "/";
    case OpKind::Max: return "max";
    case OpKind::Abs: return "abs";
    case OpKind::Pow: return "pow(" + std::to_string(op.exponent) + ")";
    case OpKind::Exp: return "exp";
    case OpKind::Log: return "log";
    case OpKind::Sin: return "sin";
    case OpKind::Cos: return "cos";
    case OpKind::Tan: return "tan";
  }
  return "?";
}

Interval extend(const Op& op, std::span<const Interval> args, const Grid& g) {
  if (static_cast<int>(args.size()) != arity(op.kind))
    throw std::logic_error("extend: arity mismatch");
  for (const Interval& a : args)
    if (a.empty) return Interval::emptySet();

  switch (op.kind) {
    case OpKind::Add: {
      const Interval &a = args[0], &b = args[1];
      return snapOutward(rsum(a.lo, b.lo, FE_DOWNWARD), rsum(a.hi, b.hi, FE_UPWARD), g);
    }
    case OpKind::Sub: {
      const Interval &a = args[0], &b = args[1];
      return snapOutward(rdiff(a.lo, b.hi, FE_DOWNWARD), rdiff(a.hi, b.lo, FE_UPWARD), g);
    }
    case OpKind::Mul: {
      const Interval &a = args[0], &b = args[1];
      double l = minSkipNan({rprod(a.lo, b.lo, FE_DOWNWARD), rprod(a.lo, b.hi, FE_DOWNWARD),
                             rprod(a.hi, b.lo, FE_DOWNWARD), rprod(a.hi, b.hi, FE_DOWNWARD)});
      double u = maxSkipNan({rprod(a.lo, b.lo, FE_UPWARD), rprod(a.lo, b.hi, FE_UPWARD),
                             rprod(a.hi, b.lo, FE_UPWARD), rprod(a.hi, b.hi, FE_UPWARD)});
      return snapOutward(l, u, g);
    }
    case OpKind::Div:
      return divide(args[0], args[1], g);
    case OpKind::Max: {
      const Interval &a = args[0], &b = args[1];
      return snapOutward(std::max(a.lo, b.lo), std::max(a.hi, b.hi), g);
    }
    case OpKind::Abs: {
      const Interval& a = args[0];
      if (a.lo >= 0.0) return snapOutward(a.lo, a.hi, g);
      if (a.hi <= 0.0) return snapOutward(-a.hi, -a.lo, g);
      return snapOutward(0.0, std::max(-a.lo, a.hi), g);
    }
    case OpKind::Pow:
      return powInterval(args[0], op.exponent, g);
    case OpKind::Exp: {
      const Interval& a = args[0];
      double l = (a.lo == -kInf) ? 0.0 : std::max(0.0, wideDown(std::exp(a.lo), g));
      double u = (a.hi == kInf) ? kInf : wideUp(std::exp(a.hi), g);
      return snapOutward(l, u, g);
    }
    case OpKind::Log: {
      const Interval& a = args[0];
      if (a.hi <= 0.0) return Interval::emptySet();
      double l = (a.lo <= 0.0) ? -kInf : wideDown(std::log(a.lo), g);
      double u = (a.hi == kInf) ? kInf : wideUp(std::log(a.hi), g);
      return snapOutward(l, u, g);
    }
    case OpKind::Sin: return sinInterval(args[0], g);
    case OpKind::Cos: return cosInterval(args[0], g);
    case OpKind::Tan: return tanInterval(args[0], g);
  }
  throw std::logic_error("extend: unknown operation");
}

double applyReal(const Op& op, std::span<const double> args) {
  double nan = std::numeric_limits<double>::quiet_NaN();
  switch (op.kind) {
    case OpKind::Add: return args[0] + args[1];
    case OpKind::Sub: return args[0] - args[1];
    case OpKind::Mul: return args[0] * args[1];
    case OpKind::Div: return args[1] == 0.0 ? nan : args[0] / args[1];
    case OpKind::Max: return std::max(args[0], args[1]);
    case OpKind::Abs: return std::fabs(args[0]);
    case OpKind::Pow: {
      if (op.exponent == 0) return 1.0;
      if (op.exponent < 0 && args[0] == 0.0) return nan;
      return std::pow(args[0], op.exponent);
    }
    case OpKind::Exp: return std::exp(args[0]);
    case OpKind::Log: return args[0] <= 0.0 ? nan : std::log(args[0]);
    case OpKind::Sin: return std::sin(args[0]);
    case OpKind::Cos: return std::cos(args[0]);
    case OpKind::Tan: return std::tan(args[0]);
  }
  return nan;
}

}  // namespace boxprune
