#include <stdio.h>
#include <string.h>

#include "pgz/pgz.h"

static int failures = 0;

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

int main(void) {
  pgz_problem* p = NULL;
  pgz_result* r = NULL;

  CHECK(pgz_problem_create("nope", &p) == PGZ_ERR_ARGUMENT);
  CHECK(p == NULL);
  CHECK(pgz_problem_create(NULL, &p) == PGZ_ERR_NULL);
  CHECK(pgz_solve(NULL, &r) == PGZ_ERR_NULL);

  CHECK(pgz_problem_create("cominj", &p) == PGZ_OK);
  CHECK(pgz_problem_add_input(p, "a -> ab, b -> babb") == PGZ_OK);
  CHECK(pgz_problem_set_budgets(p, 0, 8, 60) == PGZ_ERR_ARGUMENT);
  CHECK(pgz_problem_set_schedule(p, (pgz_schedule)7) == PGZ_ERR_ARGUMENT);
  CHECK(pgz_solve(p, &r) == PGZ_OK);
  CHECK(pgz_result_exit_code(r) == 0);
  CHECK(strstr(pgz_result_report(r), "\"det\": \"2\"") != NULL);
  CHECK(pgz_result_certificate(r) == NULL);
  pgz_result_destroy(r);
  pgz_problem_destroy(p);

  CHECK(pgz_problem_create("zeroness", &p) == PGZ_OK);
  pgz_problem_add_input(p,
                        "params a;\n"
                        "nonterminal S dim 1;\n"
                        "polymap f(s) = (2*s);\n"
                        "S -> f(S);\n"
                        "S -> (0);\n");
  CHECK(pgz_solve(p, &r) == PGZ_OK);
  CHECK(pgz_result_exit_code(r) == 0);
  CHECK(pgz_result_certificate(r) != NULL);
  pgz_result_destroy(r);
  pgz_problem_destroy(p);

  CHECK(pgz_problem_create("zeroness", &p) == PGZ_OK);
  pgz_problem_add_input(p, "nonterminal S dim 1;\nS -> T;\n");
  CHECK(pgz_solve(p, &r) == PGZ_OK);
  CHECK(pgz_result_exit_code(r) == 3);
  CHECK(strstr(pgz_result_report(r), "\"line\": 2") != NULL);
  pgz_result_destroy(r);
  pgz_problem_destroy(p);

  CHECK(strcmp(pgz_status_string(PGZ_OK), "ok") == 0);
  if (failures == 0) printf("capi smoke: ok\n");
  return failures == 0 ? 0 : 1;
}
