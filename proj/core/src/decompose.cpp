#include "boxprune/decompose.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <map>

namespace boxprune {

Box ConstraintSystem::primaryPart(const Box& full) const {
  Box b;
  b.comps.assign(full.comps.begin(), full.comps.begin() + static_cast<long>(numPrimary));
  return b;
}

Box ConstraintSystem::withPrimary(const Box& primary) const {
  Box b = initialBox;
  for (std::size_t i = 0; i < numPrimary; ++i) b.comps[i] = primary.comps[i];
  return b;
}

namespace {

std::string shortName(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

struct Builder {
  const Grid& g;
  ConstraintSystem cs;
  std::map<std::uint64_t, int> constPool;
  int auxCount = 0;

  int constantVar(double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    auto it = constPool.find(bits);
    if (it != constPool.end()) return it->second;
    int idx = static_cast<int>(cs.vars.size());
    cs.vars.push_back({"_c" + shortName(v), VarKind::Constant});
    cs.initialBox.comps.push_back(snapOutward(v, v, g));
    constPool.emplace(bits, idx);
    return idx;
  }

  int auxVar() {
    int idx = static_cast<int>(cs.vars.size());
    cs.vars.push_back({"_v" + std::to_string(auxCount++), VarKind::Auxiliary});
    cs.initialBox.comps.push_back(Interval::entire());
    return idx;
  }

  int emit(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Constant: return constantVar(e.value);
      case Expr::Kind::Variable: return e.varIndex;
      case Expr::Kind::Apply: break;
    }
    Atom a;
    a.kind = Atom::Kind::Functional;
    a.op = e.op;
    for (const ExprPtr& k : e.kids) a.inputs.push_back(emit(*k));
    a.output = auxVar();
    int atomIdx = static_cast<int>(cs.atoms.size());
    cs.atoms.push_back(std::move(a));
    cs.functionalOrder.push_back(atomIdx);
    return cs.atoms.back().output;
  }
};

}  // namespace

ConstraintSystem decompose(const EquationSystem& es, const Grid& g) {
  Builder b{g, {}, {}, 0};
  b.cs.numPrimary = es.vars.size();
  for (const VarDecl& v : es.vars) {
    b.cs.vars.push_back({v.name, VarKind::Primary});
    b.cs.initialBox.comps.push_back(snapOutward(v.domain.lo, v.domain.hi, g));
  }
  for (const ExprPtr& eq : es.equations) b.cs.rootVars.push_back(b.emit(*eq));
  for (int rv : b.cs.rootVars) {
    Atom a;
    a.kind = Atom::Kind::Relational;
    a.var = rv;
    b.cs.relationalAtoms.push_back(static_cast<int>(b.cs.atoms.size()));
    b.cs.atoms.push_back(std::move(a));
  }
  ConstraintSystem cs = std::move(b.cs);
  cs.watchers.assign(cs.vars.size(), {});
  for (std::size_t i = 0; i < cs.atoms.size(); ++i) {
    const Atom& a = cs.atoms[i];
    std::vector<int> mentioned;
    if (a.kind == Atom::Kind::Functional) {
      mentioned = a.inputs;
      mentioned.push_back(a.output);
    } else {
      mentioned.push_back(a.var);
    }
    for (int v : mentioned) {
      std::vector<int>& w = cs.watchers[static_cast<std::size_t>(v)];
      if (w.empty() || w.back() != static_cast<int>(i)) w.push_back(static_cast<int>(i));
    }
  }
  return cs;
}

std::string describe(const ConstraintSystem& cs, const Grid& g) {
  std::string out = "variables:\n";
  for (std::size_t i = 0; i < cs.vars.size(); ++i) {
    const char* kind = cs.vars[i].kind == VarKind::Primary     ? "primary"
                       : cs.vars[i].kind == VarKind::Constant  ? "constant"
                                                               : "auxiliary";
    out += "  " + cs.vars[i].name + " " + kind + " " +
           toString(cs.initialBox.comps[i], g) + "\n";
  }
  out += "atoms:\n";
  for (std::size_t i = 0; i < cs.atoms.size(); ++i) {
    const Atom& a = cs.atoms[i];
    out += "  " + std::to_string(i) + ": ";
    if (a.kind == Atom::Kind::Functional) {
      out += cs.vars[static_cast<std::size_t>(a.output)].name + " = " + opName(a.op) + "(";
      for (std::size_t k = 0; k < a.inputs.size(); ++k) {
        if (k) out += ", ";
        out += cs.vars[static_cast<std::size_t>(a.inputs[k])].name;
      }
      out += ")\n";
    } else {
      out += cs.vars[static_cast<std::size_t>(a.var)].name + " = 0\n";
    }
  }
  return out;
}

}  // namespace boxprune
