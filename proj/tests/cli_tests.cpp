#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

// End-to-end checks against the installed binary (path injected by the build).

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& tag) {
  std::string out_file = "cli_" + tag + ".out";
  std::string cmd = std::string("'") + MLHS_BIN + "' " + args + " > " + out_file + " 2>&1";
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

void put(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen-hs writes a reusable, reproducible point set") {
  RunResult a = run("gen-hs --class d3 --n 4 --out cli_hs_a.txt", "gen_a");
  CHECK(a.code == 0);
  CHECK(a.out.find("wrote 16 points") != std::string::npos);
  RunResult b = run("gen-hs --class d3 --n 4 --out cli_hs_b.txt", "gen_b");
  CHECK(b.code == 0);
  CHECK(slurp("cli_hs_a.txt") == slurp("cli_hs_b.txt"));
  CHECK(slurp("cli_hs_a.txt").rfind("n=4 p=", 0) == 0);

  RunResult d4 = run("gen-hs --class d4 --n 4 --M 4 --S 64 --out cli_hs_d4.txt", "gen_d4");
  CHECK(d4.code == 0);
  RunResult miss = run("gen-hs --class d4 --n 4", "gen_miss");
  CHECK(miss.code == 1);  // M and S are mandatory for d4
  CHECK(miss.out.find("error:") != std::string::npos);
}

TEST_CASE("pit reports verdicts with witnesses") {
  run("gen-hs --class d3 --n 4 --out cli_hs.txt", "gen_for_pit");
  put("cli_zero.formula", "(x1) + (-1*x1)\n");
  RunResult z = run("pit --formula cli_zero.formula --hs cli_hs.txt", "pit_zero");
  CHECK(z.code == 0);
  CHECK(z.out == "zero-on-H\n");

  put("cli_nz.formula", "(x1*x2 + x3)*(x4)\n");
  RunResult nz = run("pit --formula cli_nz.formula --hs cli_hs.txt", "pit_nz");
  CHECK(nz.code == 0);
  CHECK(nz.out.find("nonzero witness=(0,0,1,1)") != std::string::npos);
  CHECK(nz.out.find("evals=4") != std::string::npos);

  RunResult gone = run("pit --formula cli_missing.formula --hs cli_hs.txt", "pit_gone");
  CHECK(gone.code == 1);
  CHECK(gone.out.find("error: cannot open") != std::string::npos);
}

TEST_CASE("reduce emits a trace and a formula the other commands accept") {
  put("cli_wide.formula", "(x1*x2 + x3)*(x4)\n");
  RunResult r = run("reduce --formula cli_wide.formula --tau 2 --out cli_reduced.formula",
                    "reduce");
  CHECK(r.code == 0);
  CHECK(r.out.find("# reduce class=d4 tau=2") != std::string::npos);
  CHECK(r.out.find("derive x1") != std::string::npos);

  RunResult rb = run("roabp --formula cli_reduced.formula --eval 1,1,1,1", "roabp");
  CHECK(rb.code == 0);
  CHECK(rb.out.find("width=") != std::string::npos);
  CHECK(rb.out.find("value=1") != std::string::npos);  // x2*x4 at the all-ones point

  put("cli_reg.formula", "# class=regular n=4 profile=(1,2,2)\n(x1 + x2)*(x3 + x4)\n");
  RunResult reg = run("roabp --formula cli_reg.formula", "roabp_reg");
  CHECK(reg.code == 1);
  CHECK(reg.out.find("must go through `reduce` first") != std::string::npos);

  RunResult mismatch = run("reduce --formula cli_wide.formula --class d3", "reduce_cls");
  CHECK(mismatch.code == 1);
  CHECK(mismatch.out.find("parsed as class d4") != std::string::npos);
}

TEST_CASE("lowerbound needs a proper subset of the cube") {
  put("cli_subset.points", "n=2 p=5\n0,0\n1,1\n");
  RunResult ok = run("lowerbound --hs cli_subset.points", "lb_ok");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("# vanishing certificate n=2 points=2") != std::string::npos);
  CHECK(ok.out.find("-1*x1 + x2") != std::string::npos);

  run("gen-hs --class d3 --n 2 --out cli_cube.points", "gen_cube");
  RunResult full = run("lowerbound --hs cli_cube.points", "lb_full");
  CHECK(full.code == 1);
  CHECK(full.out.find("error:") != std::string::npos);
}

TEST_CASE("argument errors exit with the parser code") {
  CHECK(run("gen-hs --n 4", "args1").code == 2);          // missing --class
  CHECK(run("frobnicate", "args2").code == 2);            // unknown subcommand
  CHECK(run("", "args3").code == 2);                      // subcommand required
  CHECK(run("--help", "args4").code == 0);
  CHECK(run("gen-hs --class d5 --n 4", "args5").code == 2);  // bad class value
}

TEST_CASE("selftest and bench run clean at desk scale") {
  RunResult one = run("selftest --criterion 10", "self10");
  CHECK(one.code == 0);
  CHECK(one.out.find("[PASS] 10") != std::string::npos);

  RunResult bad = run("selftest --criterion 11", "self11");
  CHECK(bad.code == 1);

  RunResult bench = run("bench --n 4 --reps 1000", "bench");
  CHECK(bench.code == 0);
  CHECK(bench.out.find("field-mul: 1000 ops") != std::string::npos);
  CHECK(bench.out.find("depth3-hs n=4") != std::string::npos);
}
