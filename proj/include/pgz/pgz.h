#ifndef PGZ_H
#define PGZ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define PGZ_API __attribute__((visibility("default")))
#else
#define PGZ_API
#endif

typedef enum pgz_status {
  PGZ_OK = 0,
  PGZ_ERR_NULL = 1,      /* a required pointer was NULL */
  PGZ_ERR_ARGUMENT = 2,  /* unknown kind, non-positive budget, bad schedule */
  PGZ_ERR_INTERNAL = 3
} pgz_status;

typedef enum pgz_schedule { PGZ_ROUND_ROBIN = 0, PGZ_PARALLEL = 1 } pgz_schedule;

typedef struct pgz_problem pgz_problem;
typedef struct pgz_result pgz_result;

PGZ_API const char* pgz_version(void);
PGZ_API const char* pgz_status_string(pgz_status s);

/* Kinds: encode run equiv zeroness indep-zeroness chain-zeroness cominj
   invert-subst vass-compile vass-reach eqsat. */
PGZ_API pgz_status pgz_problem_create(const char* kind, pgz_problem** out);
PGZ_API void pgz_problem_destroy(pgz_problem* p);

/* Inputs are texts (grammar, transducer, VASS, substitution or word) in
   the order the kind expects. */
PGZ_API pgz_status pgz_problem_add_input(pgz_problem* p, const char* text);
PGZ_API pgz_status pgz_problem_set_alphabet(pgz_problem* p, const char* letters);
PGZ_API pgz_status pgz_problem_set_budgets(pgz_problem* p, size_t tree_size, size_t iterations, double seconds);
PGZ_API pgz_status pgz_problem_set_schedule(pgz_problem* p, pgz_schedule s);
PGZ_API pgz_status pgz_problem_set_min_steps(pgz_problem* p, size_t n);
/* Check this certificate (JSON text) instead of searching. */
PGZ_API pgz_status pgz_problem_set_check_certificate(pgz_problem* p, const char* json);

/* Input errors are reported through the result (exit code 3), not the
   status. */
PGZ_API pgz_status pgz_solve(const pgz_problem* p, pgz_result** out);
PGZ_API void pgz_result_destroy(pgz_result* r);

/* 0 Zero/Equivalent, 1 NonZero/NotEquivalent, 2 Unknown, 3 input error. */
PGZ_API int pgz_result_exit_code(const pgz_result* r);
/* Strings are owned by the result. */
PGZ_API const char* pgz_result_report(const pgz_result* r);
PGZ_API const char* pgz_result_certificate(const pgz_result* r); /* NULL if none */
PGZ_API const char* pgz_result_text(const pgz_result* r);        /* "" if none */

#ifdef __cplusplus
}
#endif

#endif
