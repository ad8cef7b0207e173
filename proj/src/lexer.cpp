#include "pgz/lexer.hpp"

#include <cctype>

namespace pgz {

Lexer::Lexer(std::string_view src) {
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError("unterminated string", line, col);
      t.kind = Tok::String;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else if (c == '\'') {
      if (i + 2 >= src.size() || src[i + 2] != '\'')
        throw ParseError("malformed letter literal", line, col);
      t.kind = Tok::Char;
      t.text = std::string(1, src[i + 1]);
      advance(3);
    } else {
      static const char* two[] = {"->", ":=", "=="};
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      for (const char* p : two) {
        if (src.substr(i, 2) == p) t.text = p;
      }
      advance(t.text.size());
    }
    toks_.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  toks_.push_back(end);
}

const Token& Lexer::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

Token Lexer::next() {
  Token t = peek();
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool Lexer::is(std::string_view s, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return (t.kind == Tok::Punct || t.kind == Tok::Ident) && t.text == s;
}

bool Lexer::accept(std::string_view s) {
  if (!is(s)) return false;
  next();
  return true;
}

Token Lexer::expect(std::string_view s) {
  if (!is(s)) fail("expected '" + std::string(s) + "'");
  return next();
}

Token Lexer::expect(Tok kind, std::string_view what) {
  if (peek().kind != kind) fail("expected " + std::string(what));
  return next();
}

void Lexer::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(msg + ", got " + got, t.line, t.column);
}

void Lexer::fail_at(const Token& t, const std::string& msg) {
  throw ParseError(msg, t.line, t.column);
}

}  // namespace pgz
