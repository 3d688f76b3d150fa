#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "boxprune/bench.hpp"

using namespace boxprune;
using nlohmann::json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Grid parseGrid(const std::string& s) {
  if (s == "f64") return Grid::binary64();
  if (s.rfind("test:", 0) == 0) {
    double step, lo, hi;
    if (std::sscanf(s.c_str() + 5, "%lf,%lf,%lf", &step, &lo, &hi) != 3)
      throw Usage("bad --grid value '" + s + "' (want f64 or test:STEP,LO,HI)");
    return Grid::uniform(step, lo, hi);
  }
  throw Usage("bad --grid value '" + s + "' (want f64 or test:STEP,LO,HI)");
}

EquationSystem loadSystem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Strategy parseStrategy(const std::string& s) {
  if (s == "prop") return Strategy::PropagationOnly;
  if (s == "fbc") return Strategy::FunctionalBC;
  if (s == "rbc") return Strategy::RelationalBC;
  throw Usage("bad strategy '" + s + "' (want prop, fbc or rbc)");
}

ProbePolicy parsePolicy(const std::string& s) {
  if (s == "full") return ProbePolicy::full();
  if (s == "func") return ProbePolicy::functionalOnly();
  if (s.rfind("cycles:", 0) == 0) {
    int k = std::atoi(s.c_str() + 7);
    if (k < 1) throw Usage("bad cycle count in '" + s + "'");
    return ProbePolicy::withCycles(k);
  }
  throw Usage("bad probe policy '" + s + "' (want full, func or cycles:K)");
}

json boundJson(double b) {
  if (b == std::numeric_limits<double>::infinity()) return "+inf";
  if (b == -std::numeric_limits<double>::infinity()) return "-inf";
  return b;
}

json boxJson(const EquationSystem& es, const Box& b) {
  json vars = json::object();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].empty) return json();
    vars[es.vars[i].name] = json::array({boundJson(b[i].lo), boundJson(b[i].hi)});
  }
  return vars;
}

/// "x <= u", "x >= l" or "l <= x <= u".
std::pair<std::string, Interval> parseConstraint(const std::string& text) {
  std::istringstream ss(text);
  std::vector<std::string> tok;
  std::string t;
  while (ss >> t) tok.push_back(t);
  auto number = [](const std::string& w) {
    char* end = nullptr;
    double v = std::strtod(w.c_str(), &end);
    if (end == w.c_str() || *end) throw Usage("bad number '" + w + "' in constraint");
    return v;
  };
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (tok.size() == 3 && tok[1] == "<=") {
    if (std::isdigit(static_cast<unsigned char>(tok[0][0])) || tok[0][0] == '-')
      return {tok[2], Interval::make(number(tok[0]), inf)};
    return {tok[0], Interval::make(-inf, number(tok[2]))};
  }
  if (tok.size() == 3 && tok[1] == ">=")
    return {tok[0], Interval::make(number(tok[2]), inf)};
  if (tok.size() == 5 && tok[1] == "<=" && tok[3] == "<=")
    return {tok[2], Interval::make(number(tok[0]), number(tok[4]))};
  throw Usage("bad constraint '" + text + "' (want 'x <= u', 'x >= l' or 'l <= x <= u')");
}

struct Common {
  std::string gridSpec = "f64";
  std::string format = "text";
  std::uint64_t seed = 0;
  bool seeded = false;
};

int cmdCheck(const Common& c, const std::string& file) {
  Grid g = parseGrid(c.gridSpec);
  EquationSystem es = loadSystem(file);
  ConstraintSystem cs = decompose(es, g);
  if (c.format == "json") {
    json vars = json::array();
    for (std::size_t i = 0; i < cs.vars.size(); ++i) {
      const char* kind = cs.vars[i].kind == VarKind::Primary     ? "primary"
                         : cs.vars[i].kind == VarKind::Constant  ? "constant"
                                                                 : "auxiliary";
      vars.push_back({{"name", cs.vars[i].name},
                      {"kind", kind},
                      {"domain", json::array({boundJson(cs.initialBox[i].lo),
                                              boundJson(cs.initialBox[i].hi)})}});
    }
    json atoms = json::array();
    for (const Atom& a : cs.atoms) {
      if (a.kind == Atom::Kind::Functional) {
        json ins = json::array();
        for (int v : a.inputs) ins.push_back(cs.vars[static_cast<std::size_t>(v)].name);
        atoms.push_back({{"output", cs.vars[static_cast<std::size_t>(a.output)].name},
                         {"op", opName(a.op)},
                         {"inputs", ins}});
      } else {
        atoms.push_back({{"zero", cs.vars[static_cast<std::size_t>(a.var)].name}});
      }
    }
    std::cout << json{{"variables", vars}, {"atoms", atoms}}.dump(2) << "\n";
  } else {
    std::cout << describe(cs, g);
  }
  return 0;
}

int cmdPrune(const Common& c, const std::string& file, const std::string& strategy,
             const std::string& policy, double eps, double adaptive) {
  Grid g = parseGrid(c.gridSpec);
  EquationSystem es = loadSystem(file);
  ConsistencyConfig cfg;
  cfg.eps = eps;
  cfg.policy = parsePolicy(policy);
  if (adaptive > 0) {
    cfg.adaptive = true;
    cfg.lambda = adaptive;
  }
  Box primary = es.initialBox(g);
  Box result;
  switch (parseStrategy(strategy)) {
    case Strategy::PropagationOnly: {
      ConstraintSystem cs = decompose(es, g);
      Box full = propagate(cs, cs.withPrimary(primary), Schedule::fair(), g);
      result = full.isEmpty() ? Box{{Interval::emptySet()}} : cs.primaryPart(full);
      break;
    }
    case Strategy::FunctionalBC:
      result = functionalBC(es, std::move(primary), g, cfg);
      break;
    case Strategy::RelationalBC: {
      ConstraintSystem cs = decompose(es, g);
      result = relationalBC(cs, std::move(primary), g, cfg);
      break;
    }
  }
  if (c.format == "json")
    std::cout << json{{"box", boxJson(es, result)}}.dump(2) << "\n";
  else
    std::cout << toString(result, g) << "\n";
  return result.isEmpty() ? 1 : 0;
}

int cmdProbe(const Common& c, const std::string& file, const std::string& constraint,
             const std::string& policy) {
  Grid g = parseGrid(c.gridSpec);
  EquationSystem es = loadSystem(file);
  auto [var, iv] = parseConstraint(constraint);
  int coord = es.varIndex(var);
  if (coord < 0) throw Usage("unknown variable '" + var + "' in constraint");
  ConstraintSystem cs = decompose(es, g);
  ProbeResult r = probe(cs, es.initialBox(g), coord, iv, parsePolicy(policy), g);
  const char* word = r == ProbeResult::Failed ? "failed" : "nonfailed";
  if (c.format == "json")
    std::cout << json{{"result", word}}.dump(2) << "\n";
  else
    std::cout << word << "\n";
  return 0;
}

int cmdSolve(const Common& c, const std::string& file, const std::string& strategy,
             const std::string& policy, double delta, double eps, double adaptive,
             long maxSplits, long maxBoxes) {
  Grid g = parseGrid(c.gridSpec);
  EquationSystem es = loadSystem(file);
  SolverConfig cfg;
  cfg.strategy = parseStrategy(strategy);
  cfg.consistency.policy = parsePolicy(policy);
  cfg.consistency.eps = eps;
  if (adaptive > 0) {
    cfg.consistency.adaptive = true;
    cfg.consistency.lambda = adaptive;
  }
  cfg.delta = delta;
  cfg.maxSplits = maxSplits;
  cfg.maxBoxes = maxBoxes;
  SolverResult r = solve(es, g, cfg);
  if (c.format == "json") {
    json boxes = json::array();
    for (const SolvedBox& sb : r.boxes)
      boxes.push_back(
          {{"vars", boxJson(es, sb.box)},
           {"status", sb.status == SolvedBox::Status::Converged ? "converged" : "limit"}});
    json stats{{"splits", r.stats.splits},
               {"prunes", r.stats.prunes},
               {"probes", r.stats.probes},
               {"activations", r.stats.activations},
               {"millis", r.stats.millis}};
    std::cout << json{{"boxes", boxes}, {"stats", stats}}.dump(2) << "\n";
  } else {
    for (const SolvedBox& sb : r.boxes)
      std::cout << (sb.status == SolvedBox::Status::Converged ? "converged: " : "limit: ")
                << toString(sb.box, g) << "\n";
    std::cout << "splits=" << r.stats.splits << " prunes=" << r.stats.prunes
              << " probes=" << r.stats.probes << " activations=" << r.stats.activations
              << "\n";
  }
  return r.boxes.empty() ? 1 : 0;
}

int cmdTrace(const Common& c, const std::string& file, const std::string& schedule) {
  Grid g = parseGrid(c.gridSpec);
  EquationSystem es = loadSystem(file);
  ConstraintSystem cs = decompose(es, g);
  Schedule sch = Schedule::fair();
  if (schedule == "fair") {
    if (c.seeded) sch = Schedule::fair(c.seed);
  } else if (schedule == "func") {
    sch = Schedule::functionalSegment();
  } else if (schedule == "inv") {
    sch = Schedule::inverseFunctionalSegment();
  } else if (schedule.rfind("two:", 0) == 0) {
    sch = Schedule::twoPhase(std::atoi(schedule.c_str() + 4));
  } else {
    throw Usage("bad schedule '" + schedule + "' (want fair, func, inv or two:K)");
  }
  Trace tr;
  propagate(cs, cs.initialBox, sch, g, nullptr, &tr);
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const TraceStep& st = tr.steps[i];
    std::cout << "step=" << i << " atom=" << st.atom << " changed=";
    for (std::size_t k = 0; k < st.changed.size(); ++k) {
      if (k) std::cout << ",";
      std::cout << cs.vars[static_cast<std::size_t>(st.changed[k].first)].name << ":"
                << toString(st.changed[k].second, g);
    }
    std::cout << "\n";
  }
  std::cout << "fixpoint=" << toString(tr.final, g) << "\n";
  return 0;
}

int cmdBench(const Common& c, const std::string& range, const std::string& strategies,
             const std::string& csvPath, const std::string& boxSpec, double delta,
             long maxSplits, bool parallel) {
  Grid g = parseGrid(c.gridSpec);
  int a, b;
  if (std::sscanf(range.c_str(), "%d..%d", &a, &b) != 2) {
    if (std::sscanf(range.c_str(), "%d", &a) == 1) b = a;
    else throw Usage("bad --n value '" + range + "' (want A..B)");
  }
  if (a < 1 || b < a) throw Usage("bad --n range");
  std::vector<int> ns;
  for (int n = a; n <= b; ++n) ns.push_back(n);
  std::vector<Strategy> strats;
  std::stringstream ss(strategies);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) strats.push_back(parseStrategy(item));
  double lo = -1, hi = 1;
  if (!boxSpec.empty() && std::sscanf(boxSpec.c_str(), "%lf,%lf", &lo, &hi) != 2)
    throw Usage("bad --box value '" + boxSpec + "' (want LO,HI)");
  SolverConfig base;
  base.delta = delta;
  base.maxSplits = maxSplits;
  std::string csv = toCsv(runBench(ns, strats, base, g, lo, hi, parallel));
  if (csvPath.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(csvPath);
    if (!out) throw Usage("cannot write '" + csvPath + "'");
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigorous nonlinear equation solving by interval constraint propagation"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--grid", c.gridSpec, "f64 or test:STEP,LO,HI")->capture_default_str();
  app.add_option("--format", c.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  auto* seedOpt = app.add_option("--seed", c.seed, "seed for randomized schedules");

  std::string file, strategy = "prop", policy = "full", constraint, schedule = "fair";
  std::string range = "3..8", strategies = "prop,fbc,rbc", csvPath, boxSpec;
  double eps = 0, adaptive = 0, delta = 1e-4;
  long maxSplits = 0, maxBoxes = 0;
  bool parallel = false;

  CLI::App* check = app.add_subcommand("check", "print the decomposition");
  check->fallthrough();
  check->add_option("file", file)->required();

  CLI::App* prune = app.add_subcommand("prune", "narrow the initial box once");
  prune->fallthrough();
  prune->add_option("file", file)->required();
  prune->add_option("--strategy", strategy, "prop, fbc or rbc")->capture_default_str();
  prune->add_option("--probe", policy, "full, func or cycles:K")->capture_default_str();
  prune->add_option("--eps", eps, "width cutoff for the interval searches");
  prune->add_option("--adaptive", adaptive, "adaptive cutoff factor lambda");

  CLI::App* probeCmd = app.add_subcommand("probe", "test one bound constraint");
  probeCmd->fallthrough();
  probeCmd->add_option("file", file)->required();
  probeCmd->add_option("--constraint", constraint, "'x <= u', 'x >= l' or 'l <= x <= u'")
      ->required();
  probeCmd->add_option("--policy", policy, "full, func or cycles:K")->capture_default_str();

  CLI::App* solveCmd = app.add_subcommand("solve", "branch-and-prune search");
  solveCmd->fallthrough();
  solveCmd->add_option("file", file)->required();
  solveCmd->add_option("--strategy", strategy)->capture_default_str();
  solveCmd->add_option("--probe", policy)->capture_default_str();
  solveCmd->add_option("--delta", delta, "target box width")->capture_default_str();
  solveCmd->add_option("--eps", eps);
  solveCmd->add_option("--adaptive", adaptive);
  solveCmd->add_option("--max-splits", maxSplits);
  solveCmd->add_option("--max-boxes", maxBoxes);

  CLI::App* trace = app.add_subcommand("trace", "log one propagation run");
  trace->fallthrough();
  trace->add_option("file", file)->required();
  trace->add_option("--schedule", schedule, "fair, func, inv or two:K")
      ->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench", "Broyden banded comparison");
  bench->fallthrough();
  bench->add_subcommand("broyden", "Broyden banded family")->required()->fallthrough();
  bench->add_option("--n", range, "size range A..B")->capture_default_str();
  bench->add_option("--strategies", strategies)->capture_default_str();
  bench->add_option("--csv", csvPath, "output file (default stdout)");
  bench->add_option("--box", boxSpec, "initial box LO,HI");
  bench->add_option("--delta", delta)->capture_default_str();
  bench->add_option("--max-splits", maxSplits);
  bench->add_flag("--parallel", parallel, "run instances concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits 0; any parse error is a usage error
  }
  c.seeded = seedOpt->count() > 0;

  try {
    if (*check) return cmdCheck(c, file);
    if (*prune) return cmdPrune(c, file, strategy, policy, eps, adaptive);
    if (*probeCmd) return cmdProbe(c, file, constraint, policy);
    if (*solveCmd)
      return cmdSolve(c, file, strategy, policy, delta, eps, adaptive, maxSplits, maxBoxes);
    if (*trace) return cmdTrace(c, file, schedule);
    if (*bench)
      return cmdBench(c, range, strategies, csvPath, boxSpec, delta, maxSplits, parallel);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << file << ":" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
