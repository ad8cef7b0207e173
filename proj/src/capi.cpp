#include "pgz/pgz.h"

#include <algorithm>
#include <optional>
#include <string>

#include "pgz/problem.hpp"

struct pgz_problem {
  pgz::Problem problem;
};

struct pgz_result {
  int exit_code = 3;
  std::string report;
  std::optional<std::string> certificate;
  std::string text;
};

extern "C" {

const char* pgz_version(void) { return "1.0.0"; }

const char* pgz_status_string(pgz_status s) {
  switch (s) {
    case PGZ_OK: return "ok";
    case PGZ_ERR_NULL: return "null argument";
    case PGZ_ERR_ARGUMENT: return "invalid argument";
    case PGZ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

pgz_status pgz_problem_create(const char* kind, pgz_problem** out) {
  if (!kind || !out) return PGZ_ERR_NULL;
  *out = nullptr;
  const auto& kinds = pgz::problem_kinds();
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) return PGZ_ERR_ARGUMENT;
  try {
    *out = new pgz_problem;
    (*out)->problem.kind = kind;
    return PGZ_OK;
  } catch (...) {
    return PGZ_ERR_INTERNAL;
  }
}

void pgz_problem_destroy(pgz_problem* p) { delete p; }

pgz_status pgz_problem_add_input(pgz_problem* p, const char* text) {
  if (!p || !text) return PGZ_ERR_NULL;
  try {
    p->problem.inputs.emplace_back(text);
    return PGZ_OK;
  } catch (...) {
    return PGZ_ERR_INTERNAL;
  }
}

pgz_status pgz_problem_set_alphabet(pgz_problem* p, const char* letters) {
  if (!p || !letters) return PGZ_ERR_NULL;
  p->problem.alphabet = letters;
  return PGZ_OK;
}

pgz_status pgz_problem_set_budgets(pgz_problem* p, size_t tree_size, size_t iterations, double seconds) {
  if (!p) return PGZ_ERR_NULL;
  if (tree_size == 0 || iterations == 0 || !(seconds > 0)) return PGZ_ERR_ARGUMENT;
  p->problem.budgets = {tree_size, iterations, seconds};
  return PGZ_OK;
}

pgz_status pgz_problem_set_schedule(pgz_problem* p, pgz_schedule s) {
  if (!p) return PGZ_ERR_NULL;
  if (s != PGZ_ROUND_ROBIN && s != PGZ_PARALLEL) return PGZ_ERR_ARGUMENT;
  p->problem.schedule = s == PGZ_PARALLEL ? pgz::Schedule::Parallel : pgz::Schedule::RoundRobin;
  return PGZ_OK;
}

pgz_status pgz_problem_set_min_steps(pgz_problem* p, size_t n) {
  if (!p) return PGZ_ERR_NULL;
  p->problem.min_steps = n;
  return PGZ_OK;
}

pgz_status pgz_problem_set_check_certificate(pgz_problem* p, const char* json) {
  if (!p || !json) return PGZ_ERR_NULL;
  p->problem.check_certificate = std::string(json);
  return PGZ_OK;
}

pgz_status pgz_solve(const pgz_problem* p, pgz_result** out) {
  if (!p || !out) return PGZ_ERR_NULL;
  *out = nullptr;
  try {
    pgz::Outcome o = pgz::solve(p->problem);
    auto* r = new pgz_result;
    r->exit_code = o.exit_code;
    r->report = pgz::dump_report(o.report);
    if (o.certificate) r->certificate = pgz::dump_report(*o.certificate);
    r->text = std::move(o.text);
    *out = r;
    return PGZ_OK;
  } catch (...) {
    return PGZ_ERR_INTERNAL;
  }
}

void pgz_result_destroy(pgz_result* r) { delete r; }

int pgz_result_exit_code(const pgz_result* r) { return r ? r->exit_code : 3; }

const char* pgz_result_report(const pgz_result* r) { return r ? r->report.c_str() : nullptr; }

const char* pgz_result_certificate(const pgz_result* r) {
  return r && r->certificate ? r->certificate->c_str() : nullptr;
}

const char* pgz_result_text(const pgz_result* r) { return r ? r->text.c_str() : nullptr; }

}  // extern "C"
