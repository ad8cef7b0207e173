#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pgz/automorphism.hpp"
#include "pgz/lexer.hpp"
#include "pgz/linalg.hpp"
#include "pgz/polynomial.hpp"

namespace pgz {

// Ordered alphabet with its parameter table: for each letter s, the tilde
// variable (ordinary) followed by the bar variable.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::string letters);

  const std::string& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool contains(char c) const { return letters_.find(c) != std::string::npos; }
  std::size_t position(char c) const;
  const VarTablePtr& table() const { return table_; }
  std::size_t tilde(char c) const { return 2 * position(c); }
  std::size_t bar(char c) const { return 2 * position(c) + 1; }

private:
  std::string letters_;
  VarTablePtr table_;
};

struct Encoded {
  QPoly tilde;
  QPoly bar;
};

Encoded encode_word(const Alphabet& sigma, std::string_view w);

using WordSubst = std::map<char, std::string>;

// Identity on letters missing from p.
WordSubst complete_subst(const Alphabet& sigma, const WordSubst& p);
std::string apply_subst(const WordSubst& p, std::string_view w);

// Images of the parameter variables, indexed like sigma.table().
std::vector<QPoly> induced_subst(const Alphabet& sigma, const WordSubst& p);

struct ComInjectivity {
  bool injective = false;
  Matrix<Rat> matrix;  // matrix[t][s] = occurrences of letter t in p(s)
  Rat det;
};

ComInjectivity com_injective_check(const Alphabet& sigma, const WordSubst& p);
bool single_letter_nonvanishing(const Alphabet& sigma, const WordSubst& p, char s);

// Field automorphism induced by p, with its explicit inverse. Throws
// NotComInjective.
FieldAutomorphism invert_substitution(const Alphabet& sigma, const WordSubst& p);

// `subst { a -> aa; b -> b }`; words are identifiers, quoted letters, strings
// or `eps`, concatenated with optional '.'.
WordSubst parse_word_subst(Lexer& lex);
WordSubst parse_word_subst(std::string_view text);
std::string parse_word(Lexer& lex);

std::string format_matrix(const Matrix<Rat>& m);

}  // namespace pgz
