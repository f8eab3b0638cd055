#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nlohmann/json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(STINGRAY_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/stingray_cli_test_") + name;
}

}  // namespace

TEST_CASE("formulas prints exact rationals") {
  RunResult r = run_cli("formulas --e1 2 --e2 2 --q 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("93/256") != std::string::npos);

  RunResult r31 = run_cli("formulas --e1 3 --e2 1 --q 2");
  CHECK(r31.exit_code == 0);
  CHECK(r31.output.find("21/64") != std::string::npos);
  CHECK(r31.output.find("PASS") != std::string::npos);
}

TEST_CASE("formulas normalizes the sides with a notice") {
  RunResult r = run_cli("formulas --e1 1 --e2 2 --q 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("normalized") != std::string::npos);
  CHECK(r.output.find("3/16") != std::string::npos);  // row for (2,1,2)
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("formulas --e1").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("census --q 6 --e1 2 --e2 1 --d 3").exit_code == 2);  // q not a prime power
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("quick verify battery passes") {
  RunResult r = run_cli("verify --max-e 2 --max-q 3 --trial-scale 0.02");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("criterion 1") != std::string::npos);
  CHECK(r.output.find("criterion 8") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("fault injection makes the battery fail loudly") {
  RunResult r =
      run_cli("verify --max-e 2 --max-q 3 --trial-scale 0.02 --inject-fault rank_matrix_count");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("rank_matrix_count") != std::string::npos);
}

TEST_CASE("census skips empty classes with exit 0") {
  RunResult r = run_cli("census --d 3 --q 2 --e1 2 --e2 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("skipped") != std::string::npos);
}

TEST_CASE("census writes verifiable JSON") {
  const std::string path = temp_path("census.json");
  RunResult r = run_cli("census --d 3 --q 3 --e1 2 --e2 1 --format json --out " + path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["schema"] == "stingray-kneser/1");
  CHECK(j["counts"]["reducible_duo"].get<uint64_t>() +
            j["counts"]["irreducible_duo"].get<uint64_t>() ==
        170586);
  std::remove(path.c_str());
}

TEST_CASE("sample emits CSV that re-parses to the exact target") {
  const std::string path = temp_path("sample.csv");
  RunResult r = run_cli(
      "sample --e1 2 --e2 2 --q 2 --trials 4000 --seed 42 --workers 2 --format csv --out " +
      path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.find("exact_target") != std::string::npos);
  CHECK(row.find("93/256") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("sample skips empty classes with exit 0") {
  RunResult r = run_cli("sample --e1 2 --e2 1 --q 2 --trials 100 --seed 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("skipped") != std::string::npos);
}

TEST_CASE("table includes the constant 15/16 bound at q=2") {
  RunResult r = run_cli("table --qs 2 --max-e 3 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("15/16") != std::string::npos);
  CHECK(r.output.find("vacuous") != std::string::npos);  // 17/16 at (d=4, q=2)
}

TEST_CASE("identity subcommand") {
  RunResult r = run_cli("identity --max-e 3 --max-q 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("duo-fraction experiment via the CLI") {
  RunResult r = run_cli(
      "sample --experiment duo-fraction --e1 1 --e2 1 --q 3 --trials 4000 --seed 7 --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["exact_target"] == "3/4");
}
