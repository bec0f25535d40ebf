#include "pxlap.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "pxlap/config.hpp"
#include "pxlap/runs.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& what) {
  g_last_error = what;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct pxlap_problem {
  pxlap::LoadedConfig cfg;
};

struct pxlap_result {
  pxlap::RunOutput out;
};

namespace {

int create_common(pxlap::LoadedConfig&& cfg, pxlap_problem** out) {
  *out = new (std::nothrow) pxlap_problem{std::move(cfg)};
  if (!*out) return fail(PXLAP_ERR_INTERNAL, "allocation failed");
  return PXLAP_OK;
}

int run_common(pxlap::RunOutput&& run, pxlap_result** out) {
  *out = new (std::nothrow) pxlap_result{std::move(run)};
  if (!*out) return fail(PXLAP_ERR_INTERNAL, "allocation failed");
  return PXLAP_OK;
}

}  // namespace

extern "C" {

const char* pxlap_version(void) { return "0.1.0"; }

const char* pxlap_last_error(void) { return g_last_error.c_str(); }

int pxlap_problem_create_from_json(const char* json_text, pxlap_problem** out) {
  if (!json_text || !out) return fail(PXLAP_ERR_BAD_ARG, "null argument");
  *out = nullptr;
  try {
    return create_common(pxlap::load_config_text(json_text), out);
  } catch (const pxlap::ConfigError& e) {
    return fail(PXLAP_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(PXLAP_ERR_INTERNAL, e.what());
  }
}

int pxlap_problem_create_from_file(const char* path, pxlap_problem** out) {
  if (!path || !out) return fail(PXLAP_ERR_BAD_ARG, "null argument");
  *out = nullptr;
  try {
    return create_common(pxlap::load_config_file(path), out);
  } catch (const pxlap::ConfigError& e) {
    return fail(PXLAP_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(PXLAP_ERR_INTERNAL, e.what());
  }
}

void pxlap_problem_destroy(pxlap_problem* p) { delete p; }

char* pxlap_problem_config_json(const pxlap_problem* p) {
  if (!p) return nullptr;
  return dup_string(p->cfg.normalized.dump(2));
}

int pxlap_problem_set_lambda(pxlap_problem* p, double lambda) {
  if (!p) return fail(PXLAP_ERR_BAD_ARG, "null problem");
  if (!(lambda > 0.0)) return fail(PXLAP_ERR_BAD_ARG, "lambda must be positive");
  p->cfg.problem.lambda = lambda;
  p->cfg.normalized["lambda"] = lambda;
  return PXLAP_OK;
}

int pxlap_problem_set_rng_seed(pxlap_problem* p, uint64_t seed) {
  if (!p) return fail(PXLAP_ERR_BAD_ARG, "null problem");
  p->cfg.problem.rng_seed = seed;
  p->cfg.normalized["rng_seed"] = seed;
  return PXLAP_OK;
}

int pxlap_problem_set_tolerance(pxlap_problem* p, const char* name, double value) {
  if (!p || !name) return fail(PXLAP_ERR_BAD_ARG, "null argument");
  if (!(value > 0.0)) return fail(PXLAP_ERR_BAD_ARG, "tolerance must be positive");
  pxlap::Tolerances& t = p->cfg.problem.tol;
  double* slot = nullptr;
  const std::string key = name;
  if (key == "constraint") slot = &t.constraint;
  else if (key == "residual") slot = &t.residual;
  else if (key == "energy") slot = &t.energy;
  else if (key == "fibering") slot = &t.fibering;
  else if (key == "critical_set") slot = &t.critical_set;
  else if (key == "luxemburg") slot = &t.luxemburg;
  else if (key == "grad_regularization") slot = &t.grad_regularization;
  if (!slot) return fail(PXLAP_ERR_BAD_ARG, "unknown tolerance: " + key);
  *slot = value;
  p->cfg.normalized["tolerances"][key] = value;
  return PXLAP_OK;
}

int pxlap_solve(const pxlap_problem* p, pxlap_result** out) {
  if (!p || !out) return fail(PXLAP_ERR_BAD_ARG, "null argument");
  *out = nullptr;
  try {
    return run_common(pxlap::run_solve(p->cfg), out);
  } catch (const std::exception& e) {
    return fail(PXLAP_ERR_RUN, e.what());
  }
}

int pxlap_run_spaces(const pxlap_problem* p, pxlap_result** out) {
  if (!p || !out) return fail(PXLAP_ERR_BAD_ARG, "null argument");
  *out = nullptr;
  try {
    return run_common(pxlap::run_spaces(p->cfg), out);
  } catch (const std::exception& e) {
    return fail(PXLAP_ERR_RUN, e.what());
  }
}

int pxlap_run_fiber(const pxlap_problem* p, const double* lambdas, int count,
                    pxlap_result** out) {
  if (!p || !out || (count > 0 && !lambdas))
    return fail(PXLAP_ERR_BAD_ARG, "null argument");
  *out = nullptr;
  try {
    std::vector<double> ls(lambdas, lambdas + (count > 0 ? count : 0));
    return run_common(pxlap::run_fiber(p->cfg, ls), out);
  } catch (const pxlap::ConfigError& e) {
    return fail(PXLAP_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(PXLAP_ERR_RUN, e.what());
  }
}

void pxlap_result_destroy(pxlap_result* r) { delete r; }

int pxlap_result_success(const pxlap_result* r) { return r && r->out.ok ? 1 : 0; }

char* pxlap_result_report_json(const pxlap_result* r) {
  if (!r) return nullptr;
  return dup_string(r->out.report.dump(2));
}

char* pxlap_result_summary(const pxlap_result* r) {
  if (!r) return nullptr;
  return dup_string(r->out.summary);
}

int pxlap_result_file_count(const pxlap_result* r) {
  return r ? static_cast<int>(r->out.files.size()) : 0;
}

char* pxlap_result_file_name(const pxlap_result* r, int i) {
  if (!r || i < 0 || i >= static_cast<int>(r->out.files.size())) return nullptr;
  return dup_string(r->out.files[static_cast<size_t>(i)].first);
}

char* pxlap_result_file_content(const pxlap_result* r, int i) {
  if (!r || i < 0 || i >= static_cast<int>(r->out.files.size())) return nullptr;
  return dup_string(r->out.files[static_cast<size_t>(i)].second);
}

void pxlap_string_free(char* s) { std::free(s); }

}  // extern "C"
