#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgz/encoding.hpp"
#include "pgz/zeroness.hpp"

namespace pgz {

struct RegExpr {
  enum class Kind { Empty, Letter, Reg, Concat, Subst };

  Kind kind = Kind::Empty;
  char letter = 0;
  std::size_t reg = 0;
  // Concat: operands. Subst: parts[0] is the target, parts[i + 1] replaces
  // letters[i].
  std::vector<RegExpr> parts;
  std::string letters;

  static RegExpr empty() { return {}; }
  static RegExpr of_letter(char c);
  static RegExpr of_reg(std::size_t r);
  static RegExpr word(const std::string& w);
  static RegExpr concat(std::vector<RegExpr> parts);
  static RegExpr subst(RegExpr target, std::string letters, std::vector<RegExpr> replacements);
};

struct Transition {
  std::size_t to = 0;
  std::vector<RegExpr> updates;  // one per register, read simultaneously
};

// Deterministic, complete register transducer with substitution.
struct Transducer {
  std::string alphabet;  // every letter that may occur in registers
  std::string input;     // input letters
  std::vector<std::string> registers;
  std::vector<std::string> init;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<bool> accepting;
  std::vector<std::optional<RegExpr>> output;  // per state, set iff accepting
  std::map<std::pair<std::size_t, char>, Transition> delta;

  std::size_t reg_index(const std::string& name) const;
  std::size_t state_index(const std::string& name) const;
  // Throws StructuralError on missing transitions or bad references.
  void validate() const;
};

std::optional<std::string> run(const Transducer& t, const std::string& w);

// Input letters are checked against t.input.
std::string eval_expr(const RegExpr& e, const std::vector<std::string>& regs);
std::string expr_to_string(const Transducer& t, const RegExpr& e);

// Superset of the letters each register can ever hold.
std::vector<std::set<char>> letter_occurrence_analysis(const Transducer& t);

enum class Fragment { NoSubst, SimultaneousComInjective, General };
const char* to_string(Fragment f);

struct Classification {
  Fragment fragment = Fragment::NoSubst;
  std::string reason;  // why the pair is General
};

Classification classify(const Transducer& t1, const Transducer& t2);

// Encoded difference grammar: one nonterminal per reachable state pair with
// tilde and bar coordinates for every register of t1 then t2, and initial S
// producing out1~ - out2~.
struct DifferenceGrammar {
  Grammar grammar;
  Alphabet sigma;
  std::vector<std::optional<char>> letter;  // per production: input letter read
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // per nonterminal except S
};

// Separating word when exactly one transducer accepts it.
std::optional<std::string> acceptance_mismatch(const Transducer& t1, const Transducer& t2);

// Throws StructuralError when the pair is General or the alphabets differ,
// EmptyLanguage when no accepting pair is reachable.
DifferenceGrammar to_difference_grammar(const Transducer& t1, const Transducer& t2);

// Input word read along a derivation of the difference grammar.
std::string decode_word(const DifferenceGrammar& d, const Derivation& deriv);

enum class EquivVerdict { Equivalent, NotEquivalent, Unknown };
const char* to_string(EquivVerdict v);

struct EquivResult {
  EquivVerdict verdict = EquivVerdict::Unknown;
  Fragment fragment = Fragment::NoSubst;
  std::string method;
  std::optional<std::string> witness;
  std::optional<std::string> output1, output2;  // on the witness
  std::optional<DifferenceGrammar> difference;
  std::optional<Certificate> certificate;
  std::vector<std::string> rejected;
};

EquivResult equivalence_check(const Transducer& t1, const Transducer& t2, const ZeroOptions& o = {});

// `transducer { alphabet a b '#'; input a b; registers R = "", S = "";
//   state q0 initial accepting; on * from q0 to q0 { R = @ . R; }
//   output q0 = R; }`. `*` reads every input letter and `@` stands for it.
// A non-empty `input_override` replaces the declared input alphabet.
Transducer parse_transducer(std::string_view text, const std::string& input_override = "");

}  // namespace pgz
