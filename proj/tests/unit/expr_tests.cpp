#include <cmath>

#include "doctest.h"

#include "boxprune/expr.hpp"
#include "support/corpus.hpp"

using namespace boxprune;

static ExprPtr parseEquation(const std::string& body) {
  EquationSystem es = parse("var x in [0, 1];\nvar y in [0, 1];\n" + body +
                            ";\nx + y = 0;\n");
  REQUIRE(es.equations.size() == 2);
  return es.equations[0];
}

TEST_CASE("printing is a fixpoint of parse then print") {
  for (const auto& entry : corpus::expressions()) {
    EquationSystem es = corpus::load(entry);
    std::string once = print(es);
    EquationSystem again = parse(once);
    CHECK(print(again) == once);
    REQUIRE(again.vars.size() == es.vars.size());
    for (std::size_t i = 0; i < es.vars.size(); ++i)
      CHECK(again.vars[i].name == es.vars[i].name);
  }
}

TEST_CASE("precedence and associativity") {
  CHECK(print(*parseEquation("x + y * x = 0")) == "(x + (y * x))");
  CHECK(print(*parseEquation("x - y - x = 0")) == "((x - y) - x)");
  CHECK(print(*parseEquation("x / y / x = 0")) == "((x / y) / x)");
  CHECK(print(*parseEquation("x * y ^ 2 = 0")) == "(x * (y^2))");
  CHECK(print(*parseEquation("(x + y) * x = 0")) == "((x + y) * x)");
  CHECK(print(*parseEquation("x ^ -2 = 0")) == "(x^-2)");
}

TEST_CASE("unary minus binds tighter than the power operator") {
  CHECK(print(*parseEquation("-x ^ 2 = 0")) == "((0 - x)^2)");
  CHECK(print(*parseEquation("-x + y = 0")) == "((0 - x) + y)");
  CHECK(print(*parseEquation("x - -y = 0")) == "(x - (0 - y))");
}

TEST_CASE("right-hand sides fold into a difference") {
  CHECK(print(*parseEquation("x = y")) == "(x - y)");
  CHECK(print(*parseEquation("x + y = 0")) == "(x + y)");
  CHECK(print(*parseEquation("x = 0 + 0")) == "(x - (0 + 0))");
}

TEST_CASE("function calls") {
  CHECK(print(*parseEquation("max(x, y) = 0")) == "max(x, y)");
  CHECK(print(*parseEquation("sin(x) + cos(y) = 0")) == "(sin(x) + cos(y))");
  CHECK(print(*parseEquation("abs(exp(x)) = 0")) == "abs(exp(x))");
}

static void expectError(const std::string& text, int line, int col,
                        const std::string& needle) {
  try {
    parse(text);
    FAIL("expected ParseError for: ", text);
  } catch (const ParseError& e) {
    CHECK(e.line == line);
    CHECK(e.col == col);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

TEST_CASE("parse errors carry position and message") {
  expectError("var x in [0, 1];\nx @ 2 = 0;\n", 2, 3, "unexpected");
  expectError("var x in [0, 1];\nx + 1;\n", 2, 6, "'='");
  expectError("var x in [0, 1];\nx + z = 0;\n", 2, 5, "undeclared variable 'z'");
  expectError("var x in [0, 1];\nvar x in [0, 2];\nx = 0;\n", 2, 5, "declared twice");
  expectError("var x in [0, 1];\nvar y in [0, 1];\nx = 0;\n", 2, 5,
              "variable 'y' does not occur in any equation");
  expectError("var x in [0, 1];\nx ^ 2.5 = 0;\n", 2, 5, "integer");
  expectError("var x in [0, 1];\nsinh(x) = 0;\n", 2, 1, "unknown function");
  expectError("var x in [0, 1];\nmax(x) = 0;\n", 2, 1, "argument");
  expectError("var x in [0, 1];\nx ^ 5000 = 0;\n", 2, 5, "exponent");
  expectError("", 1, 1, "");
}

TEST_CASE("comments and infinite bounds") {
  EquationSystem es = parse(
      "# free variable\n"
      "var x in [-inf, +inf];  # trailing comment\n"
      "x = 1;\n");
  CHECK(es.vars[0].domain == Interval::entire());
  Grid g = Grid::binary64();
  Box b = es.initialBox(g);
  CHECK(b.comps[0] == Interval::entire());
}

TEST_CASE("interval evaluation matches a hand computation on the coarse grid") {
  Grid coarse = Grid::uniform(0.5, -10, 10);
  EquationSystem es = parse("var x in [0, 10];\nx * x - 4 = 0;\n");
  Interval env[1] = {Interval::make(1.5, 2)};
  CHECK(evalInterval(*es.equations[0], env, coarse) == Interval::make(-2, 0));
  Interval none[1] = {Interval::emptySet()};
  CHECK(evalInterval(*es.equations[0], none, coarse).empty);
}

TEST_CASE("real evaluation propagates undefinedness") {
  EquationSystem es = parse(
      "var x in [-10, 10];\n"
      "x / x + log(x) = 0;\n"
      "x ^ 0 = 1;\n");
  double zero[1] = {0.0};
  CHECK(std::isnan(evalReal(*es.equations[0], zero)));
  CHECK(evalReal(*es.equations[1], zero) == 0.0);  // 0^0 = 1, minus 1
  double two[1] = {2.0};
  CHECK(evalReal(*es.equations[0], two) == doctest::Approx(1.0 + std::log(2.0)));
}

TEST_CASE("variablesOf lists distinct indices in ascending order") {
  EquationSystem es = parse(
      "var x in [0, 1];\nvar y in [0, 1];\nvar z in [0, 1];\n"
      "z * x + z = 0;\ny = 0;\n");
  CHECK(variablesOf(*es.equations[0]) == std::vector<int>{0, 2});
  CHECK(variablesOf(*es.equations[1]) == std::vector<int>{1});
}
