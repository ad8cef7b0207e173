#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgz/zeroness.hpp"

namespace pgz {

// Problem kinds: encode, run, equiv, zeroness, indep-zeroness,
// chain-zeroness, cominj, invert-subst, vass-compile, vass-reach, eqsat.
//
// `inputs` holds texts, not paths:
//   encode          word
//   run             transducer, word
//   equiv           transducer, transducer
//   zeroness        grammar
//   indep-zeroness  grammar A (over K[X]), grammar B
//   chain-zeroness  grammars A1 .. An
//   cominj          substitution (`a -> ab, b -> babb` or `subst { .. }`)
//   invert-subst    substitution
//   vass-compile    vass
//   vass-reach      vass (run length bounded by budgets.size)
//   eqsat           equation grammar E (dim 2, over K[X]), tested grammar T
struct Problem {
  std::string kind;
  std::vector<std::string> inputs;
  std::string alphabet;  // letters, commas and blanks ignored; empty = default
  Budgets budgets;
  Schedule schedule = Schedule::RoundRobin;
  std::optional<std::string> check_certificate;  // JSON text; check only, no search
  std::size_t min_steps = 0;
};

struct Outcome {
  int exit_code = 3;  // 0 Zero/Equivalent, 1 NonZero/NotEquivalent, 2 Unknown, 3 input error
  nlohmann::json report;
  std::optional<nlohmann::json> certificate;
  std::string text;  // vass-compile: the transducer DSL
};

const std::vector<std::string>& problem_kinds();

// Never throws; input errors become exit code 3 with an "error" object.
Outcome solve(const Problem& p);

// Stable key order, two-space indent, trailing newline.
std::string dump_report(const nlohmann::json& report);

}  // namespace pgz
