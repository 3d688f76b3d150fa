#pragma once

#include <string>
#include <vector>

#include "boxprune/expr.hpp"

namespace boxprune {

enum class VarKind { Primary, Constant, Auxiliary };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Primary;
};

/// Primitive constraint over the decomposed variable set: either
/// `vars[output] = op(vars[inputs...])` or `vars[var] = 0`.
struct Atom {
  enum class Kind { Functional, Relational };

  Kind kind = Kind::Functional;
  Op op{};                  // Functional
  int output = -1;          // Functional
  std::vector<int> inputs;  // Functional
  int var = -1;             // Relational
};

/// Equation system decomposed into primitive constraints. Primary variables
/// keep their declaration indices and come first; constants (deduplicated by
/// bit-exact value) and one auxiliary variable per operation node follow.
/// Functional atoms are listed child-before-parent, relational atoms last.
struct ConstraintSystem {
  std::vector<Variable> vars;
  std::size_t numPrimary = 0;
  Box initialBox;  // one component per variable, snapped outward

  std::vector<Atom> atoms;
  std::vector<int> functionalOrder;  // functional atom indices, topological
  std::vector<int> relationalAtoms;  // relational atom indices
  std::vector<int> rootVars;         // per equation, the root node's variable

  /// Atom indices mentioning each variable (inputs or output).
  std::vector<std::vector<int>> watchers;

  /// Primary components of a full box.
  Box primaryPart(const Box& full) const;
  /// initialBox with the primary components replaced.
  Box withPrimary(const Box& primary) const;
};

ConstraintSystem decompose(const EquationSystem& es, const Grid& g);

/// Deterministic listing of variables and atoms, one per line.
std::string describe(const ConstraintSystem& cs, const Grid& g);

}  // namespace boxprune
