#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef RELFORMS_CLI_PATH
#define RELFORMS_CLI_PATH "relforms"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  std::string cmd = std::string(RELFORMS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

const char* kScenario = R"({
  "particles": [
    {"mass": 1.0, "charge": 0.05, "x0": [0, 0.3, 0, 0.1], "p_spatial": [0.1, 0.05, 0]},
    {"mass": 1.2, "charge": -0.05, "x0": [0, -0.3, 0.1, 0], "p_spatial": [-0.05, 0.1, 0.05]}
  ],
  "lattice": {"dims": [2,2,2,2], "spacing": 0.5, "paired": true,
              "init_q": {"kind": "constant", "amplitude": 0.02, "seed": 7},
              "init_p": {"kind": "constant", "amplitude": 0.02, "seed": 8}},
  "integrator": {"step": 0.005, "tau_span": [0, 0.5]}
})";

struct TempDir {
  std::string path;
  explicit TempDir(const std::string& name) : path("/tmp/relforms_cli_" + name) {
    std::system(("rm -rf " + path + " && mkdir -p " + path).c_str());
  }
};

}  // namespace

TEST_CASE("simulate: free scenario succeeds, repeated runs are byte-identical") {
  TempDir dir("sim");
  std::ofstream(dir.path + "/sc.json") << kScenario;
  int rc1 = run("simulate --scenario " + dir.path + "/sc.json --out " + dir.path);
  CHECK(rc1 == 0);
  std::string first = slurp(dir.path + "/trajectory.csv");
  CHECK(!first.empty());
  int rc2 = run("simulate --scenario " + dir.path + "/sc.json --out " + dir.path);
  CHECK(rc2 == 0);
  CHECK(slurp(dir.path + "/trajectory.csv") == first);
}

TEST_CASE("simulate: invalid scenario exits with the validation code") {
  TempDir dir("bad");
  std::ofstream(dir.path + "/sc.json") << R"({"lattice": {"dims": [3,3,3,3], "offset": 0.0}})";
  CHECK(run("simulate --scenario " + dir.path + "/sc.json --out " + dir.path) == 2);
  std::ofstream(dir.path + "/missing_is_io.json").flush();
  CHECK(run("simulate --scenario " + dir.path + "/nonexistent.json --out " + dir.path) == 5);
}

TEST_CASE("verify distributions passes with exact coefficients") {
  TempDir dir("dist");
  CHECK(run("verify distributions --out " + dir.path) == 0);
  std::string rep = slurp(dir.path + "/verify_distributions.json");
  CHECK(rep.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("verify algebra and currie on a small scenario") {
  TempDir dir("alg");
  std::ofstream(dir.path + "/sc.json") << kScenario;
  CHECK(run("verify algebra --scenario " + dir.path + "/sc.json --points 3 --tol 1e-6 --out " +
            dir.path) == 0);
  CHECK(run("verify currie --scenario " + dir.path + "/sc.json --points 3 --tol 1e-8 --out " +
            dir.path) == 0);
}

TEST_CASE("sweep is deterministic across parallelism degrees") {
  TempDir d1("sweep1"), d8("sweep8");
  CHECK(run("sweep --refine 2 --jobs 1 --out " + d1.path) == 0);
  CHECK(run("sweep --refine 2 --jobs 8 --out " + d8.path) == 0);
  std::string s1 = slurp(d1.path + "/sweep.json");
  CHECK(!s1.empty());
  CHECK(s1 == slurp(d8.path + "/sweep.json"));
}

TEST_CASE("report summarizes an existing run") {
  TempDir dir("rep");
  CHECK(run("verify distributions --out " + dir.path) == 0);
  CHECK(run("report " + dir.path + "/verify_distributions.json") == 0);
  CHECK(run("report " + dir.path + "/absent.json") == 5);
}
