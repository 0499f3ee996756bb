#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with the given arguments, capturing stdout.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = "cli_test_stdout.tmp";
  const std::string cmd = env + " " + std::string(RHO_LAB_BIN) + " " + args + " > " + out_path +
                          " 2> cli_test_stderr.tmp";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = slurp(out_path);
  return r;
}

}  // namespace

TEST_CASE("measure-solve emits the solved coefficient") {
  const RunResult r = run_cli("measure-solve --N 10 --sigma 0 --nmax 8 --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(doc.at("schema_version") == "1");
  CHECK(doc.at("command") == "measure-solve");
  CHECK(doc.at("overall_pass") == true);
  CHECK(doc.at("params").at("N") == 10.0);
  bool found = false;
  for (const auto& check : doc.at("checks")) {
    if (check.at("name") == "measure_solve/a") {
      found = true;
      CHECK(std::abs(check.at("computed").get<double>() - (-1.0)) <= 1e-8);
      CHECK(check.at("provenance") == "paper");
      CHECK(check.at("pass") == true);
    }
    // Schema: every record carries the full field set.
    for (const char* key :
         {"name", "computed", "reference", "tolerance", "mode", "provenance", "diagnostic",
          "pass", "note"}) {
      CHECK(check.contains(key));
    }
  }
  CHECK(found);
}

TEST_CASE("reports are byte-deterministic") {
  const std::string args = "measure-solve --N 10 --sigma 0 --nmax 8 --format json";
  CHECK(run_cli(args).output == run_cli(args).output);

  // verify-all includes the threaded randomized suite; identical bytes
  // regardless of the worker cap.
  const std::string va = "verify-all --N 10 --format json";
  const std::string one = run_cli(va, "RHO_LAB_THREADS=1").output;
  const std::string four = run_cli(va, "RHO_LAB_THREADS=4").output;
  REQUIRE(!one.empty());
  CHECK(one == four);
}

TEST_CASE("spectrum reports exact vs perturbative energies") {
  const RunResult r = run_cli("spectrum --N 10 --sigma 0 --nmax 5 --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  double exact0 = 0.0, pert0 = 0.0;
  for (const auto& check : doc.at("checks")) {
    if (check.at("name") == "spectrum/exact_rest_subtracted/n=0")
      exact0 = check.at("computed").get<double>();
    if (check.at("name") == "spectrum/perturbative/n=0")
      pert0 = check.at("computed").get<double>();
  }
  CHECK(exact0 == doctest::Approx(0.5124921973).epsilon(1e-9));
  CHECK(pert0 == doctest::Approx(0.5125).epsilon(1e-12));
}

TEST_CASE("gram subcommand and csv matrices") {
  CHECK(run_cli("gram --N 10 --lambda 0 --measure alpha2 --nmax 6 --format json").exit_code == 0);
  const RunResult csv = run_cli("gram --N 10 --lambda 0 --measure alpha2 --nmax 3 --format csv");
  REQUIRE(csv.exit_code == 0);
  int rows = 0;
  for (char c : csv.output) rows += (c == '\n');
  CHECK(rows == 4);
  // Leading diagonal entry is 1 to machine precision.
  CHECK(std::stod(csv.output.substr(0, csv.output.find(','))) == doctest::Approx(1.0));
}

TEST_CASE("verify-all passes end to end") {
  const RunResult r = run_cli("verify-all --N 10 --format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(doc.at("overall_pass") == true);
  CHECK(doc.at("checks").size() > 50);
}

TEST_CASE("exit codes") {
  // 1: a check failed (forced via a tolerance override).
  CHECK(run_cli("measure-solve --N 10 --sigma 0 --nmax 8 --tol measure_solve/a=1e-20")
            .exit_code == 1);
  // 2: invalid input.
  CHECK(run_cli("gram --N 10 --lambda 0 --sigma 0").exit_code == 2);
  CHECK(run_cli("gram --lambda 0").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("spectrum --N 1 --lambda 1.5").exit_code == 2);  // complex spectrum
  CHECK(run_cli("spectrum --N 10 --m 1 --omega 1 --hbar 1 --c 1").exit_code == 2);
  CHECK(run_cli("spectrum --N 10 --m 1").exit_code == 2);  // incomplete quadruple
  CHECK(run_cli("measure-solve --N 10 --nmax 4").exit_code == 2);
  CHECK(run_cli("spectrum --N 10 --format csv").exit_code == 2);  // csv without a matrix
  CHECK(run_cli("spectrum --N 10 --tol no/such/check=1").exit_code == 2);
  // help is not an error
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("physical quadruple resolves to the same model") {
  const RunResult a = run_cli("spectrum --N 16 --lambda 0 --nmax 2 --format json");
  const RunResult b =
      run_cli("spectrum --m 2 --omega 0.5 --hbar 1 --c 2 --lambda 0 --nmax 2 --format json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(nlohmann::json::parse(a.output).at("params") ==
        nlohmann::json::parse(b.output).at("params"));
}

TEST_CASE("states grid emission") {
  const RunResult r = run_cli("states --N 10 --lambda 0 --nmax 2 --points 5 --format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "xi,exact_0,exact_1,exact_2,pert_0,pert_1,pert_2");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 5);
}
