#include "boxprune/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace boxprune {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
}  // namespace

Grid Grid::binary64() { return Grid(0.0, -kMax, kMax); }

Grid Grid::uniform(double step, double lo, double hi) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("grid step must be positive and finite");
  if (!(lo <= 0.0 && 0.0 <= hi))
    throw std::invalid_argument("grid range must contain 0");
  // snap the range inward to multiples of the step
  double gl = std::ceil(lo / step) * step;
  while (gl < lo) gl += step;
  double gh = std::floor(hi / step) * step;
  while (gh > hi) gh -= step;
  if (gl > 0.0) gl = 0.0;
  if (gh < 0.0) gh = 0.0;
  return Grid(step, gl, gh);
}

double Grid::succ(double x) const {
  if (std::isnan(x)) throw std::logic_error("succ(nan)");
  if (isBinary64()) {
    if (x == kInf) return kInf;
    return std::nextafter(x, kInf);  // nextafter(-inf) = -DBL_MAX
  }
  if (x == kInf) return kInf;
  if (x == -kInf) return lo_;
  if (x >= hi_) return kInf;
  double g = roundDown(x);
  if (g == -kInf) return lo_;
  double s = g + step_;
  return s > hi_ ? kInf : s;
}

double Grid::pred(double x) const {
  if (std::isnan(x)) throw std::logic_error("pred(nan)");
  if (isBinary64()) {
    if (x == -kInf) return -kInf;
    return std::nextafter(x, -kInf);
  }
  if (x == -kInf) return -kInf;
  if (x == kInf) return hi_;
  if (x <= lo_) return -kInf;
  double g = roundUp(x);
  if (g == kInf) return hi_;
  double s = g - step_;
  return s < lo_ ? -kInf : s;
}

double Grid::roundDown(double r) const {
  if (std::isnan(r)) throw std::logic_error("roundDown(nan)");
  if (isBinary64()) return r;  // every double is on the grid
  if (r == kInf) return kInf;
  if (r < lo_) return -kInf;
  if (r >= hi_) return hi_;
  double g = std::floor(r / step_) * step_;
  while (g > r) g -= step_;
  while (g + step_ <= r) g += step_;
  if (g < lo_) g = lo_;
  return g;
}

double Grid::roundUp(double r) const {
  if (std::isnan(r)) throw std::logic_error("roundUp(nan)");
  if (isBinary64()) return r;
  if (r == -kInf) return -kInf;
  if (r > hi_) return kInf;
  if (r <= lo_) return lo_;
  double g = std::ceil(r / step_) * step_;
  while (g < r) g += step_;
  while (g - step_ >= r) g -= step_;
  if (g > hi_) g = hi_;
  return g;
}

bool Grid::onGrid(double x) const {
  if (x == kInf || x == -kInf) return false;
  if (isBinary64()) return true;
  return roundDown(x) == x;
}

long Grid::pointsIn(double a, double b) const {
  if (a > b) return 0;
  if (isBinary64()) return std::numeric_limits<long>::max();
  double lo = roundUp(std::max(a, lo_));
  double hi = roundDown(std::min(b, hi_));
  if (lo == kInf || hi == -kInf || lo > hi) return 0;
  return static_cast<long>(std::llround((hi - lo) / step_)) + 1;
}

}  // namespace boxprune
