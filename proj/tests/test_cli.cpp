#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "relhh/io.hpp"

using namespace relhh;
using Q = Rational;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("relhh_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run relhh_cli(const std::string& args) {
  const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd = std::string(RELHH_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string write_input(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string corpus(const std::string& file) { return fixtures::corpus_dir() + "/" + file; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("hh on the dual numbers and on the ground field") {
  auto r = relhh_cli("hh --input " + corpus("01_k_in_dual.json") + " --format json");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  // independent bar-complex oracle
  const auto expected = oracles::hochschild_dims(*fixtures::dual_numbers<Q>(), 5);
  CHECK(j["homology"].get<std::vector<int>>() == expected);
  CHECK(j["homology"].get<std::vector<int>>() == std::vector<int>{2, 1, 1, 1, 1});
  CHECK(j["provenance"]["input_sha256"].get<std::string>().size() == 64);
  CHECK(j["provenance"]["tool_version"] == kToolVersion);

  const std::string k = write_input("k.json", R"({"schema_version": 1, "name": "k",
      "algebra": {"labels": ["1"], "mult": [[0, 0, 0, "1"]], "unit": ["1"]}, "subalgebra": [["1"]]})");
  r = relhh_cli("hh --input " + k + " --format json --degree 5");
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["homology"].get<std::vector<int>>() == std::vector<int>{1, 0, 0, 0});
  r = relhh_cli("hh --input " + k);
  CHECK(contains(r.out, "H_m(A,X)"));
}

TEST_CASE("rel-hh over the ground field agrees with hh") {
  auto abs = Json::parse(relhh_cli("hh --format json --input " + corpus("01_k_in_dual.json")).out);
  auto rel = Json::parse(relhh_cli("rel-hh --format json --input " + corpus("01_k_in_dual.json")).out);
  for (int m = 1; m <= 4; ++m) CHECK(abs["homology"][m] == rel["homology"][m]);
}

TEST_CASE("jz reports") {
  auto r = relhh_cli("jz --format json --input " + corpus("02_diag_in_upper.json"));
  REQUIRE(r.code == 0);
  Json rep = Json::parse(r.out)["report"];
  for (const auto& d : rep["degrees"]) CHECK(d["gap"] == 0);
  CHECK(rep["identities_hold"] == true);
  CHECK(rep["flat"]["holds"] == true);

  r = relhh_cli("jz --format json --input " + corpus("04_square_zero.json"));
  REQUIRE(r.code == 0);
  rep = Json::parse(r.out)["report"];
  int nonzero = 0;
  for (const auto& d : rep["degrees"]) nonzero += d["gap"] != 0;
  CHECK(nonzero > 0);
  CHECK(rep["identities_hold"] == true);
  CHECK(report_from_json(rep).identities_hold());

  r = relhh_cli("jz --format json --input " + corpus("06_b_equals_a.json"));
  REQUIRE(r.code == 0);
  for (const auto& d : Json::parse(r.out)["report"]["degrees"]) CHECK(d["h_rel"] == 0);

  r = relhh_cli("jz --input " + corpus("04_square_zero.json") + " --field Fp:3");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "field Fp:3"));
  CHECK(contains(r.out, "identities: hold"));
}

TEST_CASE("jz exits 1 when an identity fails") {
  // the dual numbers inside the upper triangular matrices
  const std::string in = write_input("dual_in_upper.json", R"({"schema_version": 1, "name": "dual_in_upper",
      "algebra": {"quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]}},
      "subalgebra": [["1", "1", "0"], ["0", "0", "1"]], "bounds": {"pmax": 1, "qmax": 1}})");
  auto r = relhh_cli("jz --input " + in);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "identities: FAIL"));
}

TEST_CASE("machine reports are byte-identical across runs") {
  const std::string args = "jz --format json --input " + corpus("05_a3_quiver.json") + " --degree 5";
  const auto a = relhh_cli(args), b = relhh_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto t1 = relhh_cli("tor --format json --input " + corpus("04_square_zero.json"));
  const auto t2 = relhh_cli("tor --format json --input " + corpus("04_square_zero.json"));
  CHECK(t1.out == t2.out);
}

TEST_CASE("tor and nilpotency") {
  auto r = relhh_cli("tor --format json --input " + corpus("02_diag_in_upper.json"));
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["hypothesis"]["holds"] == true);
  CHECK(j["e1"]["cells"].size() == 9);
  r = relhh_cli("tor --input " + corpus("04_square_zero.json"));
  CHECK(contains(r.out, "hypothesis: fails"));

  r = relhh_cli("nilpotency --format json --input " + corpus("02_diag_in_upper.json"));
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["index"] == 2);
  CHECK(j["pd"]["value"] == 0);
  r = relhh_cli("nilpotency --format json --input " + corpus("01_k_in_dual.json") + " --field Fp:5");
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["index"].is_null());
  CHECK(j["pd"].is_null());
}

TEST_CASE("check over the corpus") {
  auto r = relhh_cli("check --corpus");
  CHECK(r.code == 0);
  CHECK_FALSE(contains(r.out, "FAIL"));
  CHECK(contains(r.out, "PASS square_zero jz.gap_identity"));
  CHECK(contains(r.out, "PASS k_in_a3_quiver hh.cross_pipeline"));
  CHECK(contains(r.out, " 0 failed"));

  r = relhh_cli("check --corpus --corrupt-differential");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "FAIL k_in_dual relbar.resolution: d∘d != 0"));

  fs::create_directories(scratch() / "empty");
  r = relhh_cli("check --corpus --corpus-dir " + (scratch() / "empty").string());
  CHECK(r.code == 0);
  CHECK(contains(r.out, "0 checks"));
  r = relhh_cli("check");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "0 checks"));
}

TEST_CASE("input errors exit 2 and name the field") {
  const std::string missing = write_input("missing.json", R"({"schema_version": 1,
      "algebra": {"labels": ["1"], "mult": [[0, 0, 0, "1"]], "unit": ["1"]}})");
  auto r = relhh_cli("hh --input " + missing);
  CHECK(r.code == 2);
  CHECK(contains(r.err, "subalgebra: missing required field"));

  const std::string bad = write_input("bad.json", R"({"schema_version": 1, "algebra": {"labels": ["1", "x", "y"],
      "mult": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[0,2,2,1],[2,0,2,1],[1,1,2,1],[1,2,1,1]], "unit": [1,0,0]},
      "subalgebra": [[1,0,0]]})");
  r = relhh_cli("jz --input " + bad);
  CHECK(r.code == 2);
  CHECK(contains(r.err, "not associative on basis triple"));

  const std::string syntax = write_input("syntax.json", "{\n  \"schema_version\": 1,\n  ]\n");
  r = relhh_cli("hh --input " + syntax);
  CHECK(r.code == 2);
  CHECK(contains(r.err, "line 3"));

  CHECK(relhh_cli("hh --input " + corpus("01_k_in_dual.json") + " --field Fp:6").code == 2);
  CHECK(relhh_cli("hh --input " + corpus("01_k_in_dual.json") + " --format xml").code == 2);
  CHECK(relhh_cli("hh --input " + corpus("01_k_in_dual.json") + " --degree 2").code == 2);
  CHECK(relhh_cli("hh --input /nonexistent.json").code == 2);
  CHECK(relhh_cli("frobnicate").code == 2);
  CHECK(relhh_cli("hh").code == 2);
  CHECK(relhh_cli("--help").code == 0);
}
