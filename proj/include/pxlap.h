#ifndef PXLAP_H
#define PXLAP_H

/* C interface to the p(x)-Laplacian three-solution solver.  All entry
 * points return PXLAP_OK or an error code; pxlap_last_error() describes the
 * most recent failure on the calling thread.  Strings returned as char* are
 * owned by the caller and released with pxlap_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pxlap_problem pxlap_problem;
typedef struct pxlap_result pxlap_result;

enum {
  PXLAP_OK = 0,
  PXLAP_ERR_BAD_ARG = 1,
  PXLAP_ERR_CONFIG = 2, /* config missing, malformed, or rejected by validation */
  PXLAP_ERR_RUN = 3,    /* a run failed outright (no partial result available) */
  PXLAP_ERR_INTERNAL = 4
};

const char* pxlap_version(void);

/* Thread local; valid until the next failing call on the same thread. */
const char* pxlap_last_error(void);

int pxlap_problem_create_from_json(const char* json_text, pxlap_problem** out);
int pxlap_problem_create_from_file(const char* path, pxlap_problem** out);
void pxlap_problem_destroy(pxlap_problem* p);

/* Normalized config echo with all defaults materialized. */
char* pxlap_problem_config_json(const pxlap_problem* p);

int pxlap_problem_set_lambda(pxlap_problem* p, double lambda);
int pxlap_problem_set_rng_seed(pxlap_problem* p, uint64_t seed);
/* name is a tolerance key of the config schema (constraint, residual,
 * energy, fibering, critical_set, luxemburg, grad_regularization). */
int pxlap_problem_set_tolerance(pxlap_problem* p, const char* name, double value);

/* The three-solution solve, the randomized space-property suites, and the
 * fibering sweep.  A completed run with failing verdicts still returns
 * PXLAP_OK; query pxlap_result_success for the exit-code decision. */
int pxlap_solve(const pxlap_problem* p, pxlap_result** out);
int pxlap_run_spaces(const pxlap_problem* p, pxlap_result** out);
int pxlap_run_fiber(const pxlap_problem* p, const double* lambdas, int count,
                    pxlap_result** out);

void pxlap_result_destroy(pxlap_result* r);
int pxlap_result_success(const pxlap_result* r);
char* pxlap_result_report_json(const pxlap_result* r);
char* pxlap_result_summary(const pxlap_result* r);
int pxlap_result_file_count(const pxlap_result* r);
char* pxlap_result_file_name(const pxlap_result* r, int i);
char* pxlap_result_file_content(const pxlap_result* r, int i);

void pxlap_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
