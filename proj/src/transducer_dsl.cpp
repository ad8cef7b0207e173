#include <algorithm>

#include "pgz/lexer.hpp"
#include "pgz/transducer.hpp"

namespace pgz {

namespace {

constexpr char kCurrent = '\0';  // `@` before expansion

struct RawBlock {
  Token at;
  std::string letters;  // empty for `*`
  std::size_t from = 0, to = 0;
  std::vector<std::optional<RegExpr>> updates;
};

RegExpr bind_current(const RegExpr& e, char c) {
  RegExpr out = e;
  if (out.kind == RegExpr::Kind::Letter && out.letter == kCurrent) out.letter = c;
  for (char& l : out.letters)
    if (l == kCurrent) l = c;
  for (auto& p : out.parts) p = bind_current(p, c);
  return out;
}

class TransducerParser {
public:
  TransducerParser(std::string_view text, std::string override) : lex_(text), override_(std::move(override)) {}

  Transducer parse() {
    lex_.expect("transducer");
    if (lex_.peek().kind == Tok::Ident && !lex_.is("{")) lex_.next();
    lex_.expect("{");
    while (!lex_.accept("}")) statement();
    if (!lex_.at_end()) lex_.fail("unexpected input after the transducer");
    return finish();
  }

private:
  void statement() {
    Token kw = lex_.peek();
    if (lex_.accept("alphabet")) {
      for (char c : letters_until(";"))
        if (t_.alphabet.find(c) == std::string::npos) t_.alphabet += c;
    } else if (lex_.accept("input")) {
      declared_input_ = true;
      for (char c : letters_until(";"))
        if (input_.find(c) == std::string::npos) input_ += c;
    } else if (lex_.accept("registers")) {
      do {
        Token name = lex_.expect(Tok::Ident, "register name");
        if (std::find(t_.registers.begin(), t_.registers.end(), name.text) != t_.registers.end())
          Lexer::fail_at(name, "register " + name.text + " declared twice");
        std::string init;
        if (lex_.accept("=")) init = word();
        t_.registers.push_back(name.text);
        t_.init.push_back(init);
      } while (lex_.accept(","));
      lex_.expect(";");
    } else if (lex_.accept("state")) {
      Token name = lex_.expect(Tok::Ident, "state name");
      if (std::find(t_.states.begin(), t_.states.end(), name.text) != t_.states.end())
        Lexer::fail_at(name, "state " + name.text + " declared twice");
      t_.states.push_back(name.text);
      t_.accepting.push_back(false);
      t_.output.emplace_back();
      for (;;) {
        if (lex_.accept("initial")) {
          if (has_initial_) Lexer::fail_at(name, "second initial state");
          has_initial_ = true;
          t_.initial = t_.states.size() - 1;
        } else if (lex_.accept("accepting")) {
          t_.accepting.back() = true;
        } else {
          break;
        }
      }
      lex_.expect(";");
    } else if (lex_.accept("on")) {
      on_block(kw);
    } else if (lex_.accept("output")) {
      std::size_t q = state();
      lex_.expect("=");
      if (t_.output[q]) lex_.fail("second output for state " + t_.states[q]);
      t_.output[q] = expr();
      lex_.expect(";");
    } else {
      lex_.fail("expected alphabet, input, registers, state, on or output");
    }
  }

  void on_block(const Token& at) {
    RawBlock b;
    b.at = at;
    if (!lex_.accept("*")) {
      b.letters = letters_until("from");
      if (b.letters.empty()) lex_.fail("expected input letters or '*'");
    } else {
      lex_.expect("from");
    }
    b.from = state();
    lex_.expect("to");
    b.to = state();
    b.updates.assign(t_.registers.size(), std::nullopt);
    lex_.expect("{");
    while (!lex_.accept("}")) {
      Token name = lex_.expect(Tok::Ident, "register name");
      auto it = std::find(t_.registers.begin(), t_.registers.end(), name.text);
      if (it == t_.registers.end()) Lexer::fail_at(name, "unknown register " + name.text);
      auto r = static_cast<std::size_t>(it - t_.registers.begin());
      if (b.updates[r]) Lexer::fail_at(name, "register " + name.text + " assigned twice");
      lex_.expect("=");
      b.updates[r] = expr();
      lex_.expect(";");
    }
    blocks_.push_back(std::move(b));
  }

  std::size_t state() {
    Token name = lex_.expect(Tok::Ident, "state name");
    auto it = std::find(t_.states.begin(), t_.states.end(), name.text);
    if (it == t_.states.end()) Lexer::fail_at(name, "unknown state " + name.text);
    return static_cast<std::size_t>(it - t_.states.begin());
  }

  // Letters separated by blanks or commas, up to (and consuming) `stop`.
  std::string letters_until(std::string_view stop) {
    std::string out;
    while (!lex_.accept(stop)) {
      if (lex_.accept(",")) continue;
      out += letter();
    }
    return out;
  }

  char letter() {
    Token t = lex_.next();
    if ((t.kind == Tok::Ident || t.kind == Tok::Char || t.kind == Tok::Number) && t.text.size() == 1) return t.text[0];
    if (t.kind == Tok::Punct && t.text == "@") return kCurrent;
    Lexer::fail_at(t, "expected a single letter");
  }

  std::string word() {
    if (lex_.peek().kind == Tok::String) return lex_.next().text;
    return parse_word(lex_);
  }

  RegExpr expr() {
    std::vector<RegExpr> parts{term()};
    while (lex_.accept(".")) parts.push_back(term());
    return RegExpr::concat(std::move(parts));
  }

  RegExpr term() {
    RegExpr e = atom();
    while (lex_.accept("[")) {
      std::string letters;
      std::vector<RegExpr> reps;
      do {
        letters += letter();
        lex_.expect(":=");
        reps.push_back(expr());
      } while (lex_.accept(","));
      lex_.expect("]");
      e = RegExpr::subst(std::move(e), letters, std::move(reps));
    }
    return e;
  }

  RegExpr atom() {
    Token t = lex_.peek();
    if (lex_.accept("(")) {
      RegExpr e = expr();
      lex_.expect(")");
      return e;
    }
    if (lex_.accept("@")) return RegExpr::of_letter(kCurrent);
    if (t.kind == Tok::Ident && t.text == "eps") {
      lex_.next();
      return RegExpr::empty();
    }
    if (t.kind == Tok::Ident) {
      lex_.next();
      auto it = std::find(t_.registers.begin(), t_.registers.end(), t.text);
      if (it != t_.registers.end()) return RegExpr::of_reg(static_cast<std::size_t>(it - t_.registers.begin()));
      return RegExpr::word(t.text);
    }
    if (t.kind == Tok::Char || t.kind == Tok::String || t.kind == Tok::Number) {
      lex_.next();
      return RegExpr::word(t.text);
    }
    lex_.fail("expected a register, letter, string, 'eps', '@' or '('");
  }

  Transducer finish() {
    if (!has_initial_) lex_.fail("no initial state");
    bool star = std::any_of(blocks_.begin(), blocks_.end(), [](const RawBlock& b) { return b.letters.empty(); });
    if (!override_.empty()) {
      t_.input = override_;
    } else if (declared_input_) {
      t_.input = input_;
    } else if (star) {
      t_.input = t_.alphabet;
    } else {
      for (const auto& b : blocks_)
        for (char c : b.letters)
          if (t_.input.find(c) == std::string::npos) t_.input += c;
    }
    for (char c : t_.input)
      if (t_.alphabet.find(c) == std::string::npos) t_.alphabet += c;
    for (const auto& b : blocks_) {
      std::string letters = b.letters.empty() ? t_.input : b.letters;
      for (char c : letters) {
        if (c == kCurrent) Lexer::fail_at(b.at, "'@' cannot name the letters of a transition");
        // Explicit blocks for letters outside an overridden input are dropped.
        if (t_.input.find(c) == std::string::npos) {
          if (override_.empty()) Lexer::fail_at(b.at, std::string("'") + c + "' is not an input letter");
          continue;
        }
        Transition tr;
        tr.to = b.to;
        for (std::size_t r = 0; r < t_.registers.size(); ++r)
          tr.updates.push_back(b.updates[r] ? bind_current(*b.updates[r], c) : RegExpr::of_reg(r));
        if (!t_.delta.emplace(std::make_pair(b.from, c), std::move(tr)).second)
          Lexer::fail_at(b.at, "second transition from " + t_.states[b.from] + " on '" + std::string(1, c) + "'");
      }
    }
    for (const auto& o : t_.output)
      if (o && has_current(*o)) lex_.fail("'@' is only meaningful inside transitions");
    t_.validate();
    return t_;
  }

  static bool has_current(const RegExpr& e) {
    if (e.kind == RegExpr::Kind::Letter && e.letter == kCurrent) return true;
    if (e.letters.find(kCurrent) != std::string::npos) return true;
    return std::any_of(e.parts.begin(), e.parts.end(), has_current);
  }

  Lexer lex_;
  std::string override_;
  Transducer t_;
  std::string input_;
  bool declared_input_ = false;
  bool has_initial_ = false;
  std::vector<RawBlock> blocks_;
};

}  // namespace

Transducer parse_transducer(std::string_view text, const std::string& input_override) {
  return TransducerParser(text, input_override).parse();
}

}  // namespace pgz
