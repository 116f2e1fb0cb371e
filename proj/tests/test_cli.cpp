#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "flagforms");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = flagforms::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("schur and segre commands") {
  const Result s = invoke({"schur", "--partition", "2,1", "--rank", "3"});
  CHECK(s.code == 0);
  CHECK(s.out == "S(2,1) = c1*c2 - c3\n");
  const Result t = invoke({"segre", "--rank", "2", "--degree", "2"});
  CHECK(t.code == 0);
  CHECK(t.out.find("c1^2 - c2") != std::string::npos);
}

TEST_CASE("pushforward command") {
  const Result r = invoke({"pushforward", "--rho", "0,1,3", "--expr", "c1(Q1)^4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("3*c1^2 - c2\n", 0) == 0);
  const Result both = invoke({"pushforward", "--rho", "0,1,3", "--expr", "c1(Q1)^4", "--route", "both"});
  CHECK(both.code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"schur", "--partition", "1,2", "--rank", "3"}).code == 2);
  CHECK(invoke({"pushforward", "--rho", "0,1,3", "--expr", "c9(Q1)"}).code == 2);
  CHECK(invoke({"pushforward", "--rho", "0,1,3", "--expr", "c1(Q1"}).code == 2);
  CHECK(invoke({"cone", "--family", "nope", "--target", "1,1"}).code == 2);
  CHECK(invoke({"cone", "--family", "fcone-r2", "--target", "0,0"}).code == 2);
}

TEST_CASE("cone expectation drives the exit code") {
  CHECK(invoke({"cone", "--family", "fcone-r2", "--target", "1,3", "--expect", "inside"}).code == 0);
  CHECK(invoke({"cone", "--family", "fcone-r2", "--target", "1,0", "--expect", "outside"}).code == 0);
  const Result r = invoke({"cone", "--family", "fcone-r2", "--target", "1,3", "--expect", "outside"});
  CHECK(r.code == 1);
  CHECK(invoke({"cone", "--family", "fcone-r2", "--target", "1,1", "--expect", "maybe"}).code == 2);
}

TEST_CASE("examples-paper prints four passing lines") {
  const Result r = invoke({"examples-paper"});
  CHECK(r.code == 0);
  CHECK(count_lines_starting(r.out, "PASS ") == 4);
  CHECK(count_lines_starting(r.out, "FAIL ") == 0);
}

TEST_CASE("JSON output is reproducible") {
  const std::vector<std::string> args = {"--json", "verify", "--suite", "oracle", "--seed", "3"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"conventions\"") != std::string::npos);
}

TEST_CASE("curvature command reads a tensor file") {
  const std::string path = "test_cli_tensor.json";
  {
    std::ofstream f(path);
    f << R"({"n": 1, "r": 2, "entries": [{"j": 0, "k": 0, "alpha": 0, "beta": 0, "re": 1.0, "im": 0.0}]})";
  }
  const Result r = invoke({"curvature", "--rho", "0,1,2", "--spec", "1,2", "--tensor", path});
  CHECK(r.code == 0);
  CHECK_FALSE(r.out.empty());
  CHECK(invoke({"curvature", "--rho", "0,1,2", "--spec", "1,2", "--tensor", "missing.json"}).code != 0);
  CHECK(invoke({"curvature", "--rho", "0,1,2", "--spec", "2,1", "--tensor", path}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("stochastic suites need a seed under CI") {
  ::setenv("CI", "1", 1);
  CHECK(invoke({"verify", "--suite", "gysin-numeric", "--samples", "100"}).code == 2);
  CHECK(invoke({"verify", "--suite", "identities"}).code == 0);
  ::unsetenv("CI");
}
