#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pxlap.h"

namespace {

// Exit codes: 0 success, 1 run or suite failure, 2 config/usage rejection.
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::string out_dir = ".";
  uint64_t seed = 0;
  bool seed_set = false;
  double tol = 0.0;
  bool tol_set = false;
  std::vector<double> lambdas = {1.0, 10.0, 100.0, 1000.0};
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("config", opt.config, "problem config (JSON)")->required();
  sub->add_option("--out", opt.out_dir, "directory for report.json and CSV output");
  sub->add_option("--seed", opt.seed, "override the config rng_seed")
      ->capture_default_str();
  auto* t = sub->add_option("--tol", opt.tol, "override the residual tolerance");
  t->check(CLI::PositiveNumber);
  sub->parse_complete_callback([sub, &opt] {
    opt.seed_set = sub->count("--seed") > 0;
    opt.tol_set = sub->count("--tol") > 0;
  });
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.string().c_str());
    return false;
  }
  return true;
}

int emit(pxlap_result* res, const Options& opt) {
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", opt.out_dir.c_str(),
                 ec.message().c_str());
    return kExitFailure;
  }
  const std::filesystem::path dir(opt.out_dir);

  char* report = pxlap_result_report_json(res);
  bool wrote = write_file(dir / "report.json", report ? report : "");
  pxlap_string_free(report);

  const int n = pxlap_result_file_count(res);
  for (int i = 0; i < n && wrote; ++i) {
    char* name = pxlap_result_file_name(res, i);
    char* content = pxlap_result_file_content(res, i);
    wrote = name && content && write_file(dir / name, content);
    pxlap_string_free(name);
    pxlap_string_free(content);
  }
  if (!wrote) return kExitFailure;

  char* summary = pxlap_result_summary(res);
  if (summary) std::fputs(summary, stdout);
  pxlap_string_free(summary);
  std::printf("report: %s\n", (dir / "report.json").string().c_str());

  return pxlap_result_success(res) ? 0 : kExitFailure;
}

int dispatch(const std::string& command, const Options& opt) {
  pxlap_problem* prob = nullptr;
  int rc = pxlap_problem_create_from_file(opt.config.c_str(), &prob);
  if (rc != PXLAP_OK) {
    std::fprintf(stderr, "error: %s\n", pxlap_last_error());
    return rc == PXLAP_ERR_CONFIG ? kExitConfig : kExitFailure;
  }
  if (opt.seed_set) pxlap_problem_set_rng_seed(prob, opt.seed);
  if (opt.tol_set) pxlap_problem_set_tolerance(prob, "residual", opt.tol);

  pxlap_result* res = nullptr;
  if (command == "solve") {
    rc = pxlap_solve(prob, &res);
  } else if (command == "spaces") {
    rc = pxlap_run_spaces(prob, &res);
  } else {
    rc = pxlap_run_fiber(prob, opt.lambdas.data(),
                         static_cast<int>(opt.lambdas.size()), &res);
  }
  int code;
  if (rc != PXLAP_OK) {
    std::fprintf(stderr, "error: %s\n", pxlap_last_error());
    code = rc == PXLAP_ERR_CONFIG ? kExitConfig : kExitFailure;
  } else {
    code = emit(res, opt);
  }
  pxlap_result_destroy(res);
  pxlap_problem_destroy(prob);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("p(x)-Laplacian three-solution solver (") +
               pxlap_version() + ")"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "find the three sign-distinct critical points");
  CLI::App* spaces = app.add_subcommand(
      "spaces", "run the randomized variable-exponent space suites");
  CLI::App* fiber = app.add_subcommand(
      "fiber", "sweep the fibering scaling t_lambda over a lambda list");
  add_common(solve, opt);
  add_common(spaces, opt);
  add_common(fiber, opt);
  fiber->add_option("--lambdas", opt.lambdas, "comma separated lambda list")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  return dispatch(app.get_subcommands().front()->get_name(), opt);
}
