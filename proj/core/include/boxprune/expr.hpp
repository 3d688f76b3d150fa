#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boxprune/box.hpp"
#include "boxprune/interval.hpp"

namespace boxprune {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over admissible operations. Variables carry the
/// index assigned by their declaration so evaluation needs no name lookups.
struct Expr {
  enum class Kind { Constant, Variable, Apply };

  Kind kind = Kind::Constant;
  double value = 0.0;        // Constant
  std::string name;          // Variable
  int varIndex = -1;         // Variable
  Op op{};                   // Apply
  std::vector<ExprPtr> kids; // Apply

  static ExprPtr constant(double v);
  static ExprPtr variable(std::string name, int index);
  static ExprPtr apply(Op op, std::vector<ExprPtr> kids);
};

struct VarDecl {
  std::string name;
  Interval domain;
};

/// A set of real variables with initial intervals plus equations, each
/// stored as a single expression E meaning E = 0.
struct EquationSystem {
  std::vector<VarDecl> vars;
  std::vector<ExprPtr> equations;

  int varIndex(std::string_view name) const;
  /// Initial box over the declared variables, bounds snapped outward.
  Box initialBox(const Grid& g) const;
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line(line), col(col) {}
};

/// Equation file format: `var <name> in [<lo>, <hi>];` declarations followed
/// by `<expr> = <expr>;` equations. `#` starts a line comment; bounds accept
/// -inf/+inf. `lhs = rhs` is stored as the tree of `lhs - rhs` (just `lhs`
/// when rhs is the literal 0). Throws ParseError with line/column.
EquationSystem parse(std::string_view text);

std::string print(const Expr& e);
std::string print(const EquationSystem& es);

/// Natural interval extension: bottom-up `extend` at every node.
/// `env` must cover every variable index occurring in e.
Interval evalInterval(const Expr& e, std::span<const Interval> env, const Grid& g);

/// Real evaluation; NaN when some operation is undefined at the point.
double evalReal(const Expr& e, std::span<const double> env);

/// Distinct variable indices occurring in e, ascending.
std::vector<int> variablesOf(const Expr& e);

}  // namespace boxprune
