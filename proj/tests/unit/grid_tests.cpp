#include <cfloat>
#include <cmath>
#include <initializer_list>

#include "doctest.h"

#include "boxprune/grid.hpp"

using namespace boxprune;

static const double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("binary64 neighbors are adjacent representable numbers") {
  Grid g = Grid::binary64();
  CHECK(g.isBinary64());
  CHECK(g.succ(1.0) == std::nextafter(1.0, kInf));
  CHECK(g.pred(1.0) == std::nextafter(1.0, -kInf));
  CHECK(g.pred(kInf) == DBL_MAX);
  CHECK(g.succ(-kInf) == -DBL_MAX);
  CHECK(g.succ(kInf) == kInf);
  CHECK(g.pred(-kInf) == -kInf);
  CHECK(g.succ(DBL_MAX) == kInf);
}

TEST_CASE("coarse grid neighbors and rounding") {
  Grid g = Grid::uniform(0.5, -10, 10);
  CHECK(g.succ(1.0) == 1.5);
  CHECK(g.pred(1.0) == 0.5);
  CHECK(g.succ(-kInf) == -10.0);
  CHECK(g.pred(kInf) == 10.0);
  CHECK(g.roundDown(0.3) == 0.0);
  CHECK(g.roundUp(0.3) == 0.5);
  CHECK(g.roundDown(-0.3) == -0.5);
  CHECK(g.roundUp(-0.3) == 0.0);
  CHECK(g.roundDown(0.5) == 0.5);
  CHECK(g.roundUp(0.5) == 0.5);
  CHECK(g.roundDown(-11.0) == -kInf);
  CHECK(g.roundUp(11.0) == kInf);
  CHECK(g.onGrid(2.5));
  CHECK(!g.onGrid(2.3));
  CHECK(g.pointsIn(0, 2) == 5);
  CHECK(g.pointsIn(0.1, 0.4) == 0);
}

TEST_CASE("succ and pred are inverse on interior grid points") {
  for (const Grid& g : {Grid::binary64(), Grid::uniform(0.5, -10, 10)}) {
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.5}) {
      CHECK(g.pred(g.succ(x)) == x);
      CHECK(g.succ(g.pred(x)) == x);
    }
  }
}

TEST_CASE("uniform grid snaps its range to step multiples") {
  Grid g = Grid::uniform(0.5, -10.3, 10.2);
  CHECK(g.minFinite() == -10.0);
  CHECK(g.maxFinite() == 10.0);
  CHECK_THROWS(Grid::uniform(-1, -10, 10));
  CHECK_THROWS(Grid::uniform(0.5, 1, 10));  // grid must contain 0
}
