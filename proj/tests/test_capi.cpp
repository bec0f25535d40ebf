#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pxlap.h"

using nlohmann::json;

namespace {

// copies a C-API string and releases it through the library allocator
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  pxlap_string_free(s);
  return out;
}

const char* kMinimal = R"({
  "domain": {"kind": "interval", "length": 1.0},
  "grid": {"nodes": 33},
  "exponents": {"p": 2.0, "q": 4.0},
  "nonlinearity": {"r": 3.0, "s": 2.5},
  "lambda": 5.0,
  "suite": {"pairs": 40, "f2_samples": 32}
})";

struct ProblemHandle {
  pxlap_problem* p = nullptr;
  ~ProblemHandle() { pxlap_problem_destroy(p); }
};

struct ResultHandle {
  pxlap_result* r = nullptr;
  ~ResultHandle() { pxlap_result_destroy(r); }
};

}  // namespace

TEST_CASE("version string is present") {
  const char* v = pxlap_version();
  REQUIRE(v != nullptr);
  CHECK(std::string(v).size() > 0);
}

TEST_CASE("create echoes a normalized config") {
  ProblemHandle h;
  REQUIRE(pxlap_problem_create_from_json(kMinimal, &h.p) == PXLAP_OK);
  REQUIRE(h.p != nullptr);
  const json echo = json::parse(take(pxlap_problem_config_json(h.p)));
  CHECK(echo["lambda"] == 5.0);
  CHECK(echo["grid"]["nodes"] == 33);
  CHECK(echo["sobolev_constant"] == "estimate");
  CHECK(echo["suite"]["pairs"] == 40);
}

TEST_CASE("invalid configs map to the config error code") {
  pxlap_problem* p = nullptr;
  const int rc = pxlap_problem_create_from_json("{\"domain\": 1}", &p);
  CHECK(rc == PXLAP_ERR_CONFIG);
  CHECK(p == nullptr);
  CHECK(std::string(pxlap_last_error()).size() > 0);

  pxlap_problem* q = nullptr;
  CHECK(pxlap_problem_create_from_file("/no/such/file.json", &q) == PXLAP_ERR_CONFIG);
  CHECK(q == nullptr);
}

TEST_CASE("null arguments are rejected") {
  pxlap_problem* p = nullptr;
  CHECK(pxlap_problem_create_from_json(nullptr, &p) == PXLAP_ERR_BAD_ARG);
  CHECK(pxlap_problem_create_from_json(kMinimal, nullptr) == PXLAP_ERR_BAD_ARG);
  CHECK(pxlap_problem_set_lambda(nullptr, 1.0) == PXLAP_ERR_BAD_ARG);
  pxlap_result* r = nullptr;
  CHECK(pxlap_solve(nullptr, &r) == PXLAP_ERR_BAD_ARG);
  CHECK(pxlap_result_success(nullptr) == 0);
  CHECK(pxlap_result_file_count(nullptr) == 0);
  CHECK(pxlap_result_file_name(nullptr, 0) == nullptr);
}

TEST_CASE("setters update the problem and its echo") {
  ProblemHandle h;
  REQUIRE(pxlap_problem_create_from_json(kMinimal, &h.p) == PXLAP_OK);

  CHECK(pxlap_problem_set_lambda(h.p, -1.0) == PXLAP_ERR_BAD_ARG);
  CHECK(json::parse(take(pxlap_problem_config_json(h.p)))["lambda"] == 5.0);

  CHECK(pxlap_problem_set_lambda(h.p, 25.0) == PXLAP_OK);
  CHECK(pxlap_problem_set_rng_seed(h.p, 7) == PXLAP_OK);
  CHECK(pxlap_problem_set_tolerance(h.p, "residual", 1e-5) == PXLAP_OK);
  CHECK(pxlap_problem_set_tolerance(h.p, "bogus", 1e-5) == PXLAP_ERR_BAD_ARG);
  CHECK(pxlap_problem_set_tolerance(h.p, "residual", -1.0) == PXLAP_ERR_BAD_ARG);
  CHECK(std::string(pxlap_last_error()).find("tolerance") != std::string::npos);

  const json echo = json::parse(take(pxlap_problem_config_json(h.p)));
  CHECK(echo["lambda"] == 25.0);
  CHECK(echo["rng_seed"] == 7);
  CHECK(echo["tolerances"]["residual"] == 1e-5);
}

TEST_CASE("fibering sweep through the c api") {
  ProblemHandle h;
  REQUIRE(pxlap_problem_create_from_json(kMinimal, &h.p) == PXLAP_OK);

  const double lambdas[3] = {1.0, 10.0, 100.0};
  ResultHandle res;
  REQUIRE(pxlap_run_fiber(h.p, lambdas, 3, &res.r) == PXLAP_OK);
  CHECK(pxlap_result_success(res.r) == 1);

  const json report = json::parse(take(pxlap_result_report_json(res.r)));
  CHECK(report["pass"] == true);
  CHECK(report["rows"].size() == 3);
  CHECK(report["rows"][0]["t"].get<double>() > report["rows"][2]["t"].get<double>());

  REQUIRE(pxlap_result_file_count(res.r) == 1);
  CHECK(take(pxlap_result_file_name(res.r, 0)) == "fiber.csv");
  CHECK(take(pxlap_result_file_content(res.r, 0)).rfind("lambda,t,phi\n", 0) == 0);
  CHECK(pxlap_result_file_name(res.r, 1) == nullptr);
  CHECK(take(pxlap_result_summary(res.r)).size() > 0);

  ResultHandle empty;
  CHECK(pxlap_run_fiber(h.p, nullptr, 0, &empty.r) == PXLAP_ERR_CONFIG);
  ResultHandle null_list;
  CHECK(pxlap_run_fiber(h.p, nullptr, 2, &null_list.r) == PXLAP_ERR_BAD_ARG);
}

TEST_CASE("space suites through the c api") {
  ProblemHandle h;
  REQUIRE(pxlap_problem_create_from_json(kMinimal, &h.p) == PXLAP_OK);
  ResultHandle res;
  REQUIRE(pxlap_run_spaces(h.p, &res.r) == PXLAP_OK);
  CHECK(pxlap_result_success(res.r) == 1);
  const json report = json::parse(take(pxlap_result_report_json(res.r)));
  CHECK(report["pass"] == true);
  CHECK(report["luxemburg"]["homogeneity"]["violations"] == 0);
  CHECK(report["holder"]["violations"] == 0);
  CHECK(report["poincare"]["violations"] == 0);
}

TEST_CASE("three-solution solve through the c api") {
  ProblemHandle h;
  REQUIRE(pxlap_problem_create_from_json(kMinimal, &h.p) == PXLAP_OK);
  ResultHandle res;
  REQUIRE(pxlap_solve(h.p, &res.r) == PXLAP_OK);
  CHECK(pxlap_result_success(res.r) == 1);

  const json report = json::parse(take(pxlap_result_report_json(res.r)));
  CHECK(report["ok"] == true);
  CHECK(report["distinct"] == true);
  CHECK(report["lambda"] == 5.0);
  CHECK(report["runs"].contains("K1"));
  CHECK(report["runs"].contains("K2"));
  CHECK(report["runs"].contains("K3"));

  REQUIRE(pxlap_result_file_count(res.r) == 3);
  CHECK(take(pxlap_result_file_name(res.r, 0)) == "solution_K1.csv");
  CHECK(take(pxlap_result_file_name(res.r, 1)) == "solution_K2.csv");
  CHECK(take(pxlap_result_file_name(res.r, 2)) == "solution_K3.csv");
}
