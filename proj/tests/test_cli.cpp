#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "treemix/cli.hpp"

using namespace treemix;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_config(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig base_config(Command command, int n) {
  RunConfig cfg;
  cfg.command = command;
  cfg.n = n;
  return cfg;
}

}  // namespace

TEST_CASE("rational and float formatting") {
  CHECK(format_rational(Rational(0)) == "0/1");
  CHECK(format_rational(Rational(1)) == "1/1");
  CHECK(format_rational(make_rational(1, 2)) == "1/2");
  CHECK(format_rational(make_rational(-3, 6)) == "-1/2");

  for (double x : {0.1, 1.0 / 3.0, 0.024572641273329778, 1e-300, 12345.6789}) {
    const std::string s = format_float17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("table dump bytes") {
  std::ostringstream os;
  write_table(os, enumerate_trees(4));
  CHECK(os.str() == "n=4 count=4\n(((())))\n((()()))\n((())())\n(()()())\n");
}

TEST_CASE("count matrix dump bytes") {
  std::ostringstream os;
  write_count_matrix(os, growth_matrix(2));
  CHECK(os.str() == "rows=1 cols=2 nnz=2\n0 0 1\n0 1 1\n");
}

TEST_CASE("kernel csv bytes at size 4") {
  std::ostringstream os;
  write_kernel_csv(os, down_up_kernel(4));
  CHECK(os.str() ==
        ",(((()))),((()())),((())()),(()()())\n"
        "(((()))),1/6,1/3,1/2,0/1\n"
        "((()())),1/6,1/3,1/2,0/1\n"
        "((())()),1/18,1/9,1/2,1/3\n"
        "(()()()),0/1,0/1,1/2,1/2\n");
}

TEST_CASE("measure csv bytes at size 4") {
  std::ostringstream os;
  write_measure_csv(os, plancherel_measure(4));
  CHECK(os.str() ==
        "encoding,probability\n"
        "(((()))),1/18\n"
        "((()())),1/9\n"
        "((())()),1/2\n"
        "(()()()),1/3\n");
}

TEST_CASE("spectrum csv bytes at size 4") {
  std::ostringstream os;
  write_spectrum_csv(os, down_up_spectrum(4));
  CHECK(os.str() ==
        "eigenvalue,multiplicity\n"
        "1/1,1\n"
        "1/2,1\n"
        "0/1,2\n");
}

TEST_CASE("curve csv bytes") {
  const SeparationCurve curve = separation_curve(4, 2, SeparationRoute::kEigenFormula);
  std::ostringstream os;
  write_curves_csv(os, std::span<const SeparationCurve>(&curve, 1));
  CHECK(os.str() ==
        "n,r,s_star,route\n"
        "4,0,1/1,eigen-formula\n"
        "4,1,1/1,eigen-formula\n"
        "4,2,1/2,eigen-formula\n");
}

TEST_CASE("enumerate command emits the table") {
  const RunResult r = run_config(base_config(Command::kEnumerate, 4));
  CHECK(r.code == 0);
  CHECK(r.out == "n=4 count=4\n(((())))\n((()()))\n((())())\n(()()())\n");
  CHECK(r.err.empty());
}

TEST_CASE("json output wraps data in meta") {
  RunConfig cfg = base_config(Command::kMeasure, 4);
  cfg.format = OutputFormat::kJson;
  const RunResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["command"] == "measure");
  CHECK(doc["meta"]["version"] == "0.1.0");
  CHECK(doc["meta"]["config"]["n"] == 4);
  REQUIRE(doc["data"].size() == 4);
  CHECK(doc["data"][2]["encoding"] == "((())())");
  CHECK(doc["data"][2]["probability"]["num"] == "1");
  CHECK(doc["data"][2]["probability"]["den"] == "2");
}

TEST_CASE("exit codes distinguish domain errors from size caps") {
  const RunResult bad_n = run_config(base_config(Command::kEnumerate, 0));
  CHECK(bad_n.code == 2);
  CHECK(bad_n.err.find("error:") == 0);

  const RunResult too_big = run_config(base_config(Command::kEnumerate, 15));
  CHECK(too_big.code == 3);
  CHECK(too_big.err.find("TREEMIX_MAX_N") != std::string::npos);

  const RunResult kernel_cap = run_config(base_config(Command::kKernel, 13));
  CHECK(kernel_cap.code == 3);

  RunConfig wrong_start = base_config(Command::kSample, 4);
  wrong_start.samples = 5;
  wrong_start.start = "()";
  CHECK(run_config(wrong_start).code == 2);
}

TEST_CASE("sample accepts a non-canonical start encoding") {
  RunConfig cfg = base_config(Command::kSample, 4);
  cfg.samples = 3;
  cfg.seed = 11;
  cfg.start = "(()(()))";  // same tree as ((())())
  const RunResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("step,index,encoding\n0,2,((())())\n") == 0);
}

TEST_CASE("sampling output is deterministic for a fixed seed") {
  RunConfig cfg = base_config(Command::kSample, 5);
  cfg.samples = 25;
  cfg.seed = 7;
  const RunResult a = run_config(cfg);
  const RunResult b = run_config(cfg);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  cfg.seed = 8;
  CHECK(run_config(cfg).out != a.out);
}

TEST_CASE("output path writes the same bytes as the stream") {
  const std::string path = "treemix_test_output.csv";
  RunConfig cfg = base_config(Command::kMeasure, 4);
  const RunResult direct = run_config(cfg);

  cfg.output_path = path;
  const RunResult filed = run_config(cfg);
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());

  std::ifstream f(path, std::ios::binary);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("environment variable raises the size caps") {
  unsetenv("TREEMIX_MAX_N");
  const SizeCaps plain = caps_from_env();
  CHECK(plain.kernel == 12);
  CHECK(plain.enumeration == 14);
  CHECK(plain.count == 25);
  CHECK(plain.verify_kernel == 7);
  CHECK(plain.verify_count == 12);

  setenv("TREEMIX_MAX_N", "100", 1);
  const SizeCaps raised = caps_from_env();
  CHECK(raised.kernel == 100);
  CHECK(raised.enumeration == 100);
  CHECK(raised.count == 100);
  CHECK(raised.verify_kernel == 7);
  CHECK(raised.verify_count == 12);

  setenv("TREEMIX_MAX_N", "20", 1);
  CHECK(caps_from_env().count == 25);  // never lowered below the default

  setenv("TREEMIX_MAX_N", "junk", 1);
  CHECK(caps_from_env().kernel == 12);

  setenv("TREEMIX_MAX_N", "99999", 1);
  CHECK(caps_from_env().kernel == 1000);  // hard ceiling

  unsetenv("TREEMIX_MAX_N");
}

TEST_CASE("the verify battery passes at reduced caps") {
  std::ostringstream os;
  CHECK(run_verify(4, 6, os));
  CHECK(os.str().find("[FAIL]") == std::string::npos);
  CHECK(os.str().find("all checks passed") != std::string::npos);
}
