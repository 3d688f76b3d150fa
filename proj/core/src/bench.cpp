#include "boxprune/bench.hpp"

#include <charconv>
#include <future>

namespace boxprune {

namespace {

std::string num(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace

EquationSystem broydenBanded(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("broydenBanded: n must be positive");
  std::string text;
  for (int i = 1; i <= n; ++i)
    text += "var x" + std::to_string(i) + " in [" + num(lo) + ", " + num(hi) + "];\n";
  for (int i = 1; i <= n; ++i) {
    std::string xi = "x" + std::to_string(i);
    std::string eq = xi + "*(2 + 5*" + xi + "^2) + 1";
    std::string sum;
    for (int j = std::max(1, i - 5); j <= std::min(n, i + 1); ++j) {
      if (j == i) continue;
      std::string xj = "x" + std::to_string(j);
      if (!sum.empty()) sum += " + ";
      sum += xj + "*(1 + " + xj + ")";
    }
    if (!sum.empty()) eq += " - (" + sum + ")";
    text += eq + " = 0;\n";
  }
  return parse(text);
}

std::string strategyName(Strategy s) {
  switch (s) {
    case Strategy::PropagationOnly: return "prop";
    case Strategy::FunctionalBC: return "fbc";
    case Strategy::RelationalBC: return "rbc";
  }
  return "?";
}

std::vector<BenchRecord> runBench(const std::vector<int>& ns,
                                  const std::vector<Strategy>& strategies,
                                  const SolverConfig& base, const Grid& g, double lo,
                                  double hi, bool parallel) {
  struct Job {
    int n;
    Strategy strategy;
  };
  std::vector<Job> jobs;
  for (int n : ns)
    for (Strategy s : strategies) jobs.push_back({n, s});

  auto runOne = [&](const Job& j) {
    EquationSystem es = broydenBanded(j.n, lo, hi);
    SolverConfig cfg = base;
    cfg.strategy = j.strategy;
    SolverResult r = solve(es, g, cfg);
    BenchRecord rec;
    rec.instance = "broyden";
    rec.n = j.n;
    rec.strategy = strategyName(j.strategy);
    rec.splits = r.stats.splits;
    rec.probes = r.stats.probes;
    rec.activations = r.stats.activations;
    rec.millis = r.stats.millis;
    rec.outcome = r.limited ? "limit" : "solved";
    return rec;
  };

  std::vector<BenchRecord> out;
  if (parallel) {
    std::vector<std::future<BenchRecord>> futs;
    for (const Job& j : jobs)
      futs.push_back(std::async(std::launch::async, runOne, j));
    for (auto& f : futs) out.push_back(f.get());
  } else {
    for (const Job& j : jobs) out.push_back(runOne(j));
  }
  return out;
}

std::string toCsv(const std::vector<BenchRecord>& records) {
  std::string out = "instance,n,strategy,splits,probes,activations,millis,outcome\n";
  for (const BenchRecord& r : records) {
    out += r.instance + "," + std::to_string(r.n) + "," + r.strategy + "," +
           std::to_string(r.splits) + "," + std::to_string(r.probes) + "," +
           std::to_string(r.activations) + "," + num(r.millis) + "," + r.outcome + "\n";
  }
  return out;
}

}  // namespace boxprune
