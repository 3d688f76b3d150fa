#include <cmath>

#include "doctest.h"

#include "boxprune/boxcon.hpp"

using namespace boxprune;

static const Grid f64 = Grid::binary64();
static const Grid coarse = Grid::uniform(0.5, -10, 10);
static const double kInf = std::numeric_limits<double>::infinity();

static EquationSystem quadratic() {
  return parse("var x in [0, 10];\nx * x - 4 = 0;\n");
}

static EquationSystem cross() {
  return parse("var x in [-1, 1];\nvar y in [-1, 1];\nx + y = 0;\nx - y = 0;\n");
}

TEST_CASE("evaluation-based search finds the extreme surviving segments") {
  EquationSystem es = quadratic();
  Box primary = es.initialBox(coarse);
  Interval dom = primary.comps[0];
  CHECK(zero1Left(es, 0, 0, primary, dom, coarse) == Interval::make(1.5, 2));
  CHECK(zero1Right(es, 0, 0, primary, dom, coarse) == Interval::make(2, 2.5));

  EquationSystem line = parse("var x in [-10, 10];\nx = 0;\n");
  Box lb = line.initialBox(coarse);
  CHECK(zero1Left(line, 0, 0, lb, lb.comps[0], coarse) == Interval::make(-0.5, 0));
  CHECK(zero1Right(line, 0, 0, lb, lb.comps[0], coarse) == Interval::make(0, 0.5));

  EquationSystem none = parse("var x in [0, 10];\nx + 1 = 0;\n");
  Box nb = none.initialBox(coarse);
  CHECK(zero1Left(none, 0, 0, nb, nb.comps[0], coarse).empty);
  CHECK(zero1Right(none, 0, 0, nb, nb.comps[0], coarse).empty);
}

TEST_CASE("a width threshold stops the search early") {
  EquationSystem es = quadratic();
  Box primary = es.initialBox(f64);
  CHECK(zero1Left(es, 0, 0, primary, primary.comps[0], f64, 10.0) ==
        Interval::make(0, 10));
  Interval tight = zero1Left(es, 0, 0, primary, primary.comps[0], f64, 1e-3);
  CHECK(width(tight) <= 1e-3);
  CHECK(tight.hi <= 2.0 + 1e-3);
  CHECK(tight.contains(tight.lo));
}

TEST_CASE("coordinate-wise functional narrowing encloses the root tightly") {
  EquationSystem es = quadratic();
  Box primary = es.initialBox(f64);
  ConsistencyConfig cfg;
  Interval got = cwFunctionalBC(es, 0, 0, primary, f64, cfg);
  CHECK(got == Interval::make(f64.pred(2.0), f64.succ(2.0)));
  Interval coarseGot = cwFunctionalBC(es, 0, 0, es.initialBox(coarse), coarse, cfg);
  CHECK(coarseGot == Interval::make(1.5, 2.5));
}

TEST_CASE("functional narrowing of the cross system stops at the unit box") {
  ConsistencyConfig cfg;
  EquationSystem es = cross();
  Box out = functionalBC(es, es.initialBox(coarse), coarse, cfg);
  CHECK(out.comps[0] == Interval::make(-1, 1));
  CHECK(out.comps[1] == Interval::make(-1, 1));
}

TEST_CASE("probes classify trial constraints") {
  ConstraintSystem cs = decompose(quadratic(), coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  NarrowStats stats;
  CHECK(probe(cs, primary, 0, Interval::make(-kInf, 1), ProbePolicy::full(), coarse,
              &stats) == ProbeResult::Failed);
  CHECK(probe(cs, primary, 0, Interval::make(-kInf, 3), ProbePolicy::full(), coarse) ==
        ProbeResult::NonFailed);
  CHECK(probe(cs, primary, 0, Interval::make(-5, -3), ProbePolicy::full(), coarse) ==
        ProbeResult::Failed);  // disjoint from the domain
  CHECK(stats.probes == 1);
}

TEST_CASE("probe failure is monotone in the constraint") {
  ConstraintSystem cs = decompose(quadratic(), coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  for (const ProbePolicy& pol :
       {ProbePolicy::full(), ProbePolicy::functionalOnly(), ProbePolicy::withCycles(2)}) {
    for (double u = 0; u <= 10; u += 0.5) {
      ProbeResult below = probe(cs, primary, 0, Interval::make(-kInf, u), pol, coarse);
      ProbeResult above =
          probe(cs, primary, 0, Interval::make(-kInf, u + 0.5), pol, coarse);
      if (below == ProbeResult::NonFailed) CHECK(above == ProbeResult::NonFailed);
    }
  }
}

TEST_CASE("a conjunction probe fails no easier than its two halves") {
  ConstraintSystem cs = decompose(quadratic(), coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  for (double l = 0; l <= 10; l += 2.5)
    for (double u = l; u <= 10; u += 2.5) {
      if (probe(cs, primary, 0, Interval::make(l, u), ProbePolicy::full(), coarse) ==
          ProbeResult::NonFailed) {
        CHECK(probe(cs, primary, 0, Interval::make(l, kInf), ProbePolicy::full(),
                    coarse) == ProbeResult::NonFailed);
        CHECK(probe(cs, primary, 0, Interval::make(-kInf, u), ProbePolicy::full(),
                    coarse) == ProbeResult::NonFailed);
      }
    }
}

TEST_CASE("probing search on the cross system") {
  ConstraintSystem cs = decompose(cross(), coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  Interval dom = primary.comps[0];
  CHECK(zero2Left(cs, primary, 0, dom, ProbePolicy::full(), coarse) ==
        Interval::make(-0.5, 0));
  CHECK(zero2Right(cs, primary, 0, dom, ProbePolicy::full(), coarse) ==
        Interval::make(0, 0.5));
  CHECK(zero2Left(cs, primary, 0, dom, ProbePolicy::functionalOnly(), coarse) ==
        Interval::make(-1, -0.5));
}

TEST_CASE("probing search agrees with the evaluation-based search under the weak policy") {
  EquationSystem es = quadratic();
  ConstraintSystem cs = decompose(es, coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  Interval dom = primary.comps[0];
  CHECK(zero2Left(cs, primary, 0, dom, ProbePolicy::functionalOnly(), coarse) ==
        zero1Left(es, -1, 0, primary, dom, coarse));
  CHECK(zero2Right(cs, primary, 0, dom, ProbePolicy::functionalOnly(), coarse) ==
        zero1Right(es, -1, 0, primary, dom, coarse));
}

TEST_CASE("relational narrowing of the cross system beats the functional one") {
  ConsistencyConfig cfg;
  EquationSystem es = cross();
  ConstraintSystem cs = decompose(es, coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  CHECK(cwRelationalBC(cs, primary, 0, coarse, cfg) == Interval::make(-0.5, 0.5));
  Box rbc = relationalBC(cs, primary, coarse, cfg);
  CHECK(rbc.comps[0] == Interval::make(-0.5, 0.5));
  CHECK(rbc.comps[1] == Interval::make(-0.5, 0.5));
  Box fbc = functionalBC(es, primary, coarse, cfg);
  CHECK(rbc.isSubsetOf(fbc));
}

TEST_CASE("narrowing operators are idempotent") {
  ConsistencyConfig cfg;
  EquationSystem es = cross();
  ConstraintSystem cs = decompose(es, coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  Box rbc = relationalBC(cs, primary, coarse, cfg);
  CHECK(relationalBC(cs, rbc, coarse, cfg) == rbc);
  Box fbc = functionalBC(es, primary, coarse, cfg);
  CHECK(functionalBC(es, fbc, coarse, cfg) == fbc);
}

TEST_CASE("narrowing respects the sign flip symmetry of the quadratic") {
  ConsistencyConfig cfg;
  EquationSystem pos = parse("var x in [-10, 10];\nx * x - 4 = 0;\n");
  EquationSystem neg = parse("var x in [-10, 10];\n(0 - x) * (0 - x) - 4 = 0;\n");
  Interval a = cwFunctionalBC(pos, 0, 0, pos.initialBox(coarse), coarse, cfg);
  Interval b = cwFunctionalBC(neg, 0, 0, neg.initialBox(coarse), coarse, cfg);
  CHECK(a == Interval::make(-2.5, 2.5));
  CHECK(b == a);
}

TEST_CASE("an infeasible system empties under both narrowings") {
  ConsistencyConfig cfg;
  EquationSystem es = parse("var x in [0, 10];\nx + 1 = 0;\n");
  ConstraintSystem cs = decompose(es, coarse);
  Box primary = cs.primaryPart(cs.initialBox);
  CHECK(functionalBC(es, primary, coarse, cfg).isEmpty());
  CHECK(relationalBC(cs, primary, coarse, cfg).isEmpty());
}
