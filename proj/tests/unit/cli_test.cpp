#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#ifndef PARAGEO_CLI
#error "PARAGEO_CLI must name the command-line tool"
#endif

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(PARAGEO_CLI) + " " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Cli, List) {
  const Outcome r = run("list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("paper-4.1-as-printed"), std::string::npos);
  EXPECT_NE(r.out.find("identity-M1"), std::string::npos);
}

TEST(Cli, VerifyPasses) {
  const Outcome r = run("verify --scenario identity-M1 --samples 8");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("0 unexpected failures"), std::string::npos) << r.out;
}

TEST(Cli, FailingCheckExitsOne) {
  // An expected failure keeps the exit code at 0; an unexpected one does not.
  const Outcome r = run("verify --scenario flat-square-map --suite harmonic --tol 1e-7 --samples 4");
  EXPECT_EQ(r.code, 0) << r.out;
  const std::string cfg = std::string(::testing::TempDir()) + "cli_fail.json";
  std::ofstream(cfg) << R"({"charts": {"P": {"coordinates": ["x","y","z"], "domain": [[-1,1],[-1,1],[-1,1]]}},
    "metrics": {"g": {"chart": "P", "components": [["1","0","0"],["0","-1","0"],["0","0","1"]], "signature": [2,1]}},
    "structures": {"P": {"type": "paracontact", "chart": "P", "metric": "g",
      "phi": [["0","1","0"],["1","0","0"],["0","0","0"]], "xi": ["0","0","1"], "eta": ["0","0","1"]}},
    "suite": ["para-sasakian"], "samples": 4})";
  const Outcome f = run("verify --config " + cfg);
  EXPECT_EQ(f.code, 1) << f.out;
  EXPECT_EQ(f.out.rfind("FAIL", 0), 0u) << f.out;
}

TEST(Cli, UsageAndConfigErrorsExitTwo) {
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("verify --scenario nope").code, 2);
  EXPECT_EQ(run("verify --scenario paper-4.1 --format yaml").code, 2);
  EXPECT_EQ(run("verify --scenario paper-4.1 --suite curvature").code, 2);
  EXPECT_EQ(run("verify --config /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, JsonIsDeterministic) {
  const Outcome a = run("verify --scenario paper-4.1 --seed 42 --samples 8 --format json");
  const Outcome b = run("verify --scenario paper-4.1 --seed 42 --samples 8 --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.front(), '{');
}

TEST(Cli, EvalPrintsJet) {
  const Outcome r = run("eval --scenario paper-4.1 --expr \"(4*x^3+1)/(2*x)\" --at \"x=1,y=0,z=0\"");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("2.5"), std::string::npos) << r.out;
  EXPECT_EQ(run("eval --scenario paper-4.1 --expr \"1/x\" --at \"x=0.25,y=0,z=0\"").code, 0);
  EXPECT_EQ(run("eval --scenario paper-4.1 --expr \"2*/x\" --at \"x=1,y=0,z=0\"").code, 2);
}

}  // namespace
