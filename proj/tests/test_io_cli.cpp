#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qwielandt/io.hpp"

using namespace qwl;
using namespace qwtest;

#ifndef QWL_CLI_PATH
#define QWL_CLI_PATH "qwielandt"
#endif

namespace {

std::string temp_dir() {
  const char* env = std::getenv("TMPDIR");
  return env ? env : "/tmp";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::string& stdout_path) {
  const std::string cmd = std::string(QWL_CLI_PATH) + " " + args + " > " +
                          stdout_path + " 2>" + stdout_path + ".err";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("tolerance override JSON: partial fields and rejection of unknowns") {
  const ToleranceConfig tol =
      tolerances_from_json(Json{{"psd_tol", 1e-7}, {"chain_dim_cap", 6}});
  CHECK(tol.psd_tol == doctest::Approx(1e-7));
  CHECK(tol.chain_dim_cap == 6);
  CHECK(tol.rank_rel_tol == doctest::Approx(1e-8));
  CHECK_THROWS_AS(tolerances_from_json(Json{{"bogus", 1.0}}), Error);
  CHECK_THROWS_AS(tolerances_from_json(Json{{"psd_tol", 0.5}}), Error);
}

TEST_CASE("classical matrix JSON round trip") {
  const MatR w = zoo::wielandt_pattern(3);
  const MatR back = classical_matrix_from_json(classical_matrix_to_json(w));
  CHECK((w - back).norm() == 0.0);
  CHECK_THROWS_AS(classical_matrix_from_json(Json{{"d", 2}}), Error);
}

TEST_CASE("sweep CSV: header is fixed and missing values stay empty") {
  SweepRow row;
  row.instance_id = 3;
  row.family = "mixed_unitary";
  row.d = 2;
  row.seed = 42;
  row.primitive = "Certified";
  row.omega_lower = 1;
  const std::string line = sweep_csv_row(row);
  CHECK(line == "3,mixed_unitary,2,42,Certified,1,,,,,,,,,,");
  CHECK(sweep_csv_header().rfind("instance_id,family,d,seed,primitive", 0) == 0);
}

TEST_CASE("cli: classical subcommand on the extremal pattern") {
  const std::string dir = temp_dir();
  const std::string matrix = dir + "/qwl_w3.json";
  write_file(matrix, classical_matrix_to_json(zoo::wielandt_pattern(3)).dump());
  const std::string out = dir + "/qwl_classical.out";
  const int code = run_cli("classical --matrix " + matrix, out);
  CHECK(code == 0);
  const Json rep = Json::parse(read_file(out));
  CHECK(rep["primitive"].get<bool>());
  CHECK(rep["p"].get<int>() == 5);
  CHECK(rep["bound"]["satisfied"].get<bool>());
}

TEST_CASE("cli: verify exits 0 on the transpose-depolarizing bounds") {
  const std::string dir = temp_dir();
  const std::string chan = dir + "/qwl_m3.json";
  write_file(chan, channel_to_json(zoo::transpose_depolarizing_d3(), "transfer",
                                   "transpose_depolarizing_d3")
                       .dump());
  const std::string out = dir + "/qwl_verify.out";
  const int code = run_cli("verify " + chan + " --bounds main", out);
  CHECK(code == 0);
  const Json rep = Json::parse(read_file(out));
  CHECK(rep["omega_lower"].get<int>() == 2);
  CHECK(rep["omega_upper"].get<int>() == 2);
  bool found_main = false;
  for (const auto& row : rep["bounds"]) {
    if (row["name"] == "main") {
      found_main = true;
      CHECK(row["claimed"].get<int>() == 2);
      CHECK(row["satisfied"].get<bool>());
    }
  }
  CHECK(found_main);
}

TEST_CASE("cli: analyze emits predicates, spectrum, domain and index") {
  const std::string dir = temp_dir();
  const std::string chan = dir + "/qwl_depol.json";
  write_file(chan, channel_to_json(zoo::depolarizing(2, 0.5), "kraus").dump());
  const std::string out = dir + "/qwl_analyze.out";
  const int code = run_cli("analyze " + chan, out);
  CHECK(code == 0);
  const Json rep = Json::parse(read_file(out));
  CHECK(rep["predicates"]["is_cp"]["verdict"] == "Certified");
  CHECK(rep["spectral"]["primitive"]["verdict"] == "Certified");
  CHECK(rep["mult_domain"]["domain"]["dim"].get<int>() == 1);
  CHECK(rep["index"]["omega_upper"].get<int>() == 1);
}

TEST_CASE("cli: malformed input gives exit 1 and machine-readable stderr") {
  const std::string dir = temp_dir();
  const std::string chan = dir + "/qwl_bad.json";
  write_file(chan, "{\"d\": 2, \"repr\": \"transfer\", \"data\": [[1]]}");
  const std::string out = dir + "/qwl_bad.out";
  const int code = run_cli("analyze " + chan, out);
  CHECK(code == 1);
  const Json err = Json::parse(read_file(out + ".err"));
  CHECK(err.contains("error"));
  CHECK(err["error"].contains("code"));
}

TEST_CASE("cli: sweep output is byte-identical across thread counts") {
  const std::string dir = temp_dir();
  const std::string csv1 = dir + "/qwl_sweep1.csv";
  const std::string csv2 = dir + "/qwl_sweep2.csv";
  const std::string out = dir + "/qwl_sweep.out";
  REQUIRE(run_cli("sweep --family mixed_unitary --d 2 --count 6 --seed 7 --out " +
                      csv1,
                  out) == 0);
  REQUIRE(run_cli("--threads 4 sweep --family mixed_unitary --d 2 --count 6 "
                  "--seed 7 --out " +
                      csv2,
                  out) == 0);
  CHECK(read_file(csv1) == read_file(csv2));
  // header + 6 rows
  const std::string content = read_file(csv1);
  CHECK(std::count(content.begin(), content.end(), '\n') == 7);
}

TEST_CASE("cli: zero-error certificate for a unitary channel") {
  const std::string dir = temp_dir();
  const std::string chan = dir + "/qwl_unitary.json";
  Rng rng(5);
  write_file(chan,
             channel_to_json(zoo::unitary_channel(zoo::haar_unitary(2, rng)),
                             "kraus")
                 .dump());
  const std::string out = dir + "/qwl_ze.out";
  const int code = run_cli("certify-zero-error " + chan, out);
  CHECK(code == 0);
  const Json rep = Json::parse(read_file(out));
  CHECK(rep["branch"] == "NonPrimitiveBranch");
  CHECK(rep["max_recovery_residual"].get<double>() < 1e-8);
}

TEST_CASE("cli: contraction report for depolarizing") {
  const std::string dir = temp_dir();
  const std::string chan = dir + "/qwl_depol2.json";
  write_file(chan, channel_to_json(zoo::depolarizing(2, 0.3), "kraus").dump());
  const std::string out = dir + "/qwl_contraction.out";
  const int code = run_cli("contraction " + chan, out);
  CHECK(code == 0);
  const Json rep = Json::parse(read_file(out));
  CHECK(rep["c_lower"].get<double>() == doctest::Approx(0.7).epsilon(1e-4));
  CHECK(rep["strictly_contractive"].get<bool>());
}
