#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pgz/error.hpp"

namespace pgz {

enum class Tok { Ident, Number, String, Char, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Tokenizer shared by the polynomial syntax and all DSL front ends.
// Comments run from '//' or an unquoted '#' to the end of the line.
class Lexer {
public:
  explicit Lexer(std::string_view src);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Tok::End; }

  bool is(std::string_view punct_or_word, std::size_t ahead = 0) const;
  bool accept(std::string_view punct_or_word);
  Token expect(std::string_view punct_or_word);
  Token expect(Tok kind, std::string_view what);

  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg);

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace pgz
