#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef D2DCACHE_CLI_PATH
#error "D2DCACHE_CLI_PATH must be defined"
#endif

namespace {

using json = nlohmann::ordered_json;

std::string temp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

int run_cli(const std::string& args, const std::string& out_file) {
  std::string cmd = std::string("\"") + D2DCACHE_CLI_PATH + "\" " + args +
                    " > " + out_file + " 2> " + out_file + ".err";
  int rc = std::system(cmd.c_str());
#ifdef _WIN32
  return rc;
#else
  return WEXITSTATUS(rc);
#endif
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("simulate golden transcript") {
  std::string f = temp_path("golden.json");
  REQUIRE(run_cli("simulate --n 2 --k 4 --t 2 --demand 1,2,1,1 --seed 7", f) ==
          0);
  json j = json::parse(slurp(f));
  CHECK(j["params"]["N"] == 2);
  CHECK(j["params"]["K"] == 4);
  CHECK(j["params"]["t"] == 2);
  CHECK(j["demand"] == json::array({1, 2, 1, 1}));
  CHECK(j["per_user_codewords"] == json::array({3, 2, 3, 3}));
  CHECK(j["load_exact"] == "11/12");
  CHECK(j["decode_ok"] == true);
  CHECK(j["leaders"].size() == 4);
  double lf = j["load_float"].get<double>();
  CHECK(lf == doctest::Approx(11.0 / 12.0).epsilon(1e-11));
}

TEST_CASE("simulate accepts --m and full caching gives zero load") {
  std::string f = temp_path("full.json");
  REQUIRE(run_cli("simulate --n 2 --k 4 --m 2 --demand 1,2,1,1", f) == 0);
  json j = json::parse(slurp(f));
  CHECK(j["params"]["t"] == 4);
  CHECK(j["load_exact"] == "0/1");
  CHECK(j["total_bits"] == 0);
}

TEST_CASE("simulate is deterministic for a fixed seed") {
  std::string a = temp_path("det_a.json"), b = temp_path("det_b.json");
  std::string args = "simulate --n 3 --k 4 --t 2 --samples 3 --seed 99";
  REQUIRE(run_cli(args, a) == 0);
  REQUIRE(run_cli(args, b) == 0);
  std::string sa = slurp(a);
  CHECK(sa == slurp(b));
  CHECK(json::parse(sa).size() == 3);
}

TEST_CASE("analyze reports exact and float loads") {
  std::string f = temp_path("analyze.json");
  REQUIRE(run_cli("analyze --n 2 --k 4 --t 2 --demand 1,2,1,1", f) == 0);
  json j = json::parse(slurp(f));
  CHECK(j["per_demand_load"]["exact"] == "11/12");
  REQUIRE(run_cli("analyze --n 2 --k 4 --t 2", f) == 0);
  j = json::parse(slurp(f));
  CHECK(j["worst_case_load"]["exact"] == "1/1");
  CHECK(j["ji_d2d_load"]["exact"] == "1/1");
}

TEST_CASE("curve emits the CSV schema") {
  std::string f = temp_path("curve.csv");
  REQUIRE(run_cli("curve --n 2 --k 4 --demand worst --grid-points 9", f) == 0);
  std::istringstream in(slurp(f));
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header ==
        "scheme,demand_mode,N,K,M_num,M_den,t_effective,load_num,load_den,"
        "load_float");
  int rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 3 * 9);
}

TEST_CASE("verify passes at small caps") {
  std::string f = temp_path("verify.json");
  REQUIRE(run_cli("verify --caps 2,3", f) == 0);
  json j = json::parse(slurp(f));
  CHECK(j["pass"] == true);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("exit codes") {
  std::string f = temp_path("err.json");
  CHECK(run_cli("simulate --n 2 --k 4 --t 5 --demand 1,1,1,1", f) == 1);
  CHECK(run_cli("simulate --n 2 --k 4 --t 2 --demand 1,2,3,1", f) == 1);
  CHECK(run_cli("simulate --n 2 --k 4 --t 2 --m 1 --demand 1,1,1,1", f) == 1);
  CHECK(run_cli("simulate --n 2 --k 4 --t 2 --demand 1,2,1,1 "
                "--inject-corruption",
                f) == 2);
  CHECK(run_cli("simulate --n 2 --k 4 --t 2 --demand 1,2,1,1 "
                "--out /nonexistent_dir_zz/x.json",
                f) == 4);
  CHECK(run_cli("curve --n 2 --k 4 --demand sideways", f) == 1);
}
