#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgz/polynomial.hpp"

namespace pgz {

using QPoly = Polynomial<Rat>;

// One transition of a reset VASS. Either an integer step vector (`step`,
// dim entries) or a reset of the coordinates in `resets`.
struct VassTransition {
  std::size_t from = 0, to = 0;
  bool is_reset = false;
  std::vector<std::int64_t> step;
  std::vector<std::size_t> resets;  // 0-based, ascending
};

struct ResetVass {
  std::size_t dim = 0;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<bool> accepting;
  std::vector<VassTransition> transitions;

  // Every step has a single +-1 entry, or the transition is a reset.
  bool is_normalized() const;
  void validate() const;
};

// Splits steps into +-1 unit steps through fresh non-accepting states:
// increments before decrements, each in coordinate order. Zero steps become
// empty resets.
ResetVass normalize(const ResetVass& v);

struct Reach {
  bool reachable = false;
  std::vector<std::size_t> run;  // transition indices
};

// 0 -> 0 reachability into an accepting state by runs of length in
// [min_steps, max_len]; the run returned is a shortest one.
Reach brute_force_reach(const ResetVass& v, std::size_t max_len, std::size_t min_steps = 0);

// Direct check: `run` starts in the initial state, is connected, never drives
// a counter below zero and ends at the zero vector in an accepting state.
bool is_zero_run(const ResetVass& v, const std::vector<std::size_t>& run);

// Expressions over Z[x]: +, -, *, integer literals, x, registers and a single
// substitution of x.
struct NumExpr {
  enum class Kind { Const, X, Reg, Add, Sub, Mul, SubstX };
  Kind kind = Kind::Const;
  std::int64_t value = 0;
  std::size_t reg = 0;
  std::vector<NumExpr> args;  // SubstX: args[0][x := args[1]]

  static NumExpr constant(std::int64_t c);
  static NumExpr x();
  static NumExpr of_reg(std::size_t r);
  static NumExpr add(NumExpr a, NumExpr b);
  static NumExpr sub(NumExpr a, NumExpr b);
  static NumExpr mul(NumExpr a, NumExpr b);
  static NumExpr subst_x(NumExpr target, NumExpr image);
};

struct NumTransition {
  std::size_t to = 0;
  std::vector<NumExpr> updates;  // simultaneous, one per register
};

// Register transducer over Z[x]. Input letter i is transitions[i] of the
// source VASS; every state has an output (0 when rejecting).
struct NumericTransducer {
  std::string input;
  std::vector<std::string> registers;  // R1, R1aux, R2, S1..Sdim
  std::vector<std::int64_t> init;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<bool> accepting;
  std::vector<NumExpr> output;
  std::vector<std::vector<NumTransition>> delta;  // [state][letter]
  VarTablePtr ring;                               // the single variable x

  std::size_t letter_index(char c) const;
};

// Input letters for the transitions of v, in order.
std::string transition_letters(std::size_t count);

// Throws StructuralError when v is not normalized.
NumericTransducer compile_to_transducer(const ResetVass& v);

QPoly eval_num(const NumericTransducer& t, const NumExpr& e, const std::vector<QPoly>& regs);

struct NumRun {
  std::vector<std::size_t> states;            // after each prefix, states[0] initial
  std::vector<std::vector<QPoly>> registers;  // after each prefix
  QPoly output;
};

NumRun run_numeric(const NumericTransducer& t, const std::string& w);

std::string num_expr_to_string(const NumericTransducer& t, const NumExpr& e);
// Transducer DSL text with numeric literals, `x`, `+`, `-` and `*`.
std::string to_dsl(const NumericTransducer& t);

// `vass dim 2 { state q0 initial accepting; q0 -[+1 on 1]-> q0;
//   q0 -[reset 1 2]-> q0; }`. Coordinates are 1-based; several `k on i`
// entries may share one step.
ResetVass parse_vass(std::string_view text);
std::string vass_to_string(const ResetVass& v);

}  // namespace pgz
