#pragma once

#include <vector>

#include "boxprune/decompose.hpp"

namespace boxprune {

/// Narrows the variables of one atom inside `b`.
///
/// Relational atoms intersect their variable with [0, 0]. Functional atoms
/// with an output interval of (-inf, +inf) at entry run a single forward
/// step that sets the output to `extend(op, inputs)` bit for bit and leave
/// the inputs untouched. Otherwise forward and backward narrowing rounds
/// alternate until the atom's variables stop changing, so the operator is
/// idempotent on the result.
///
/// Narrowed variable indices are appended to `changed` (when non-null).
/// Returns false as soon as some component becomes empty.
bool contractAtom(const Atom& atom, Box& b, const Grid& g,
                  std::vector<int>* changed = nullptr);

}  // namespace boxprune
