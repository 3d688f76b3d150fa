#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int rc = -1;
  std::string out;
};

RunResult run(const std::string& args, bool mergeStderr = false) {
  std::string cmd = std::string(BOXPRUNE_BIN) + " " + args;
  cmd += mergeStderr ? " 2>&1" : " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string writeFile(const std::string& name, const std::string& text) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

const std::string kQuadratic = writeFile("cli_quadratic.eq",
                                         "var x in [0, 10];\nx * x - 4 = 0;\n");
const std::string kInfeasible = writeFile("cli_infeasible.eq",
                                          "var x in [0, 10];\nx + 1 = 0;\n");
const std::string kBroken = writeFile("cli_broken.eq",
                                      "var x in [0, 10];\nx + = 0;\n");

}  // namespace

TEST_CASE("check prints the decomposition") {
  RunResult r = run("--grid test:0.5,-10,10 check " + kQuadratic);
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "variables:\n"
        "  x primary [0, 10]\n"
        "  _v0 auxiliary [-inf, +inf]\n"
        "  _c4 constant [4, 4]\n"
        "  _v1 auxiliary [-inf, +inf]\n"
        "atoms:\n"
        "  0: _v0 = *(x, x)\n"
        "  1: _v1 = -(_v0, _c4)\n"
        "  2: _v1 = 0\n");
}

TEST_CASE("prune reports the narrowed box or emptiness") {
  RunResult r = run("--grid test:0.5,-10,10 prune " + kQuadratic + " --strategy prop");
  CHECK(r.rc == 0);
  CHECK(r.out == "[2, 2]\n");
  RunResult e = run("prune " + kInfeasible + " --strategy fbc");
  CHECK(e.rc == 1);
  CHECK(e.out == "empty\n");
}

TEST_CASE("probe classifies bound constraints") {
  RunResult f = run("--grid test:0.5,-10,10 probe " + kQuadratic +
                    " --constraint \"x <= 1\"");
  CHECK(f.rc == 0);
  CHECK(f.out == "failed\n");
  RunResult n = run("--grid test:0.5,-10,10 probe " + kQuadratic +
                    " --constraint \"x <= 3\"");
  CHECK(n.rc == 0);
  CHECK(n.out == "nonfailed\n");
}

TEST_CASE("trace logs each narrowing activation") {
  RunResult r = run("--grid test:0.5,-10,10 trace " + kQuadratic);
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "step=0 atom=0 changed=_v0:[0, +inf]\n"
        "step=1 atom=1 changed=_v1:[-4, +inf]\n"
        "step=2 atom=2 changed=_v1:[0, 0]\n"
        "step=3 atom=1 changed=_v0:[4, 4]\n"
        "step=4 atom=0 changed=x:[2, 2]\n"
        "fixpoint=[2, 2] x [4, 4] x [4, 4] x [0, 0]\n");
}

TEST_CASE("solve emits converged boxes and summary statistics") {
  RunResult r = run("solve " + kQuadratic + " --strategy fbc --delta 1e-6");
  CHECK(r.rc == 0);
  CHECK(r.out.find("converged: ") == 0);
  CHECK(r.out.find("splits=0") != std::string::npos);
  RunResult e = run("solve " + kInfeasible + " --strategy prop");
  CHECK(e.rc == 1);
}

TEST_CASE("json output carries the same content") {
  RunResult r = run("--format json solve " + kQuadratic + " --strategy fbc");
  CHECK(r.rc == 0);
  CHECK(r.out.find("\"boxes\"") != std::string::npos);
  CHECK(r.out.find("\"converged\"") != std::string::npos);
  CHECK(r.out.find("\"splits\": 0") != std::string::npos);
  RunResult p = run("--format json probe " + kQuadratic + " --constraint \"x <= 3\"");
  CHECK(p.out.find("\"nonfailed\"") != std::string::npos);
}

TEST_CASE("bench prints CSV records") {
  RunResult r = run("bench broyden --n 1..2 --strategies fbc --delta 1e-4");
  CHECK(r.rc == 0);
  CHECK(r.out.find("instance,n,strategy,splits,probes,activations,millis,outcome\n") == 0);
  CHECK(r.out.find("broyden,1,fbc,") != std::string::npos);
  CHECK(r.out.find("broyden,2,fbc,") != std::string::npos);
}

TEST_CASE("usage and parse failures exit with status 2") {
  CHECK(run("solve " + kQuadratic + " --strategy bogus").rc == 2);
  CHECK(run("prune /no/such/file.eq").rc == 2);
  RunResult broken = run("check " + kBroken, true);
  CHECK(broken.rc == 2);
  CHECK(broken.out.find("error: ") != std::string::npos);
  CHECK(run("probe " + kQuadratic + " --constraint \"x < 1\"").rc == 2);
  CHECK(run("nosuchcommand").rc == 2);
  CHECK(run("--help").rc == 0);
}
