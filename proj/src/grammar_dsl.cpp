#include "pgz/grammar_dsl.hpp"

#include <map>

#include "pgz/parse.hpp"

namespace pgz {

FieldAutomorphism extend_automorphism(const FieldAutomorphism& a, const VarTablePtr& params) {
  std::vector<RatFunc> fwd, inv;
  for (std::size_t i = 0; i < params->size(); ++i) {
    auto j = a.params() ? a.params()->find(params->name(i)) : std::nullopt;
    if (j) {
      fwd.push_back(a.forward()[*j].rebase(params));
      inv.push_back(a.backward()[*j].rebase(params));
    } else {
      RatFunc v(QPoly::variable(params, i));
      fwd.push_back(v);
      inv.push_back(v);
    }
  }
  return FieldAutomorphism(params, std::move(fwd), std::move(inv));
}

namespace {

struct MapDecl {
  PolyMap map;
  std::optional<FieldAutomorphism> twist;
};

class GrammarParser {
public:
  explicit GrammarParser(std::string_view text) : lex_(text) {}

  Grammar run() {
    bool have_initial = false;
    while (!lex_.at_end()) {
      Token t = lex_.peek();
      if (lex_.accept("alphabet")) {
        alphabet();
      } else if (lex_.accept("params")) {
        for (auto& e : decls()) params_.push_back(e);
      } else if (lex_.accept("vars")) {
        for (auto& e : decls()) {
          params_.push_back(e);
          g_.ring_vars.push_back(e.name);
        }
      } else if (lex_.accept("nonterminal")) {
        Token name = lex_.expect(Tok::Ident, "nonterminal name");
        lex_.expect("dim");
        Token d = lex_.expect(Tok::Number, "dimension");
        if (g_.find(name.text)) Lexer::fail_at(name, "duplicate nonterminal " + name.text);
        g_.add_nonterminal(name.text, std::stoul(d.text));
        lex_.expect(";");
      } else if (lex_.accept("initial")) {
        Token name = lex_.expect(Tok::Ident, "nonterminal name");
        if (!g_.find(name.text)) Lexer::fail_at(name, "unknown nonterminal " + name.text);
        g_.initial = g_.index(name.text);
        have_initial = true;
        lex_.expect(";");
      } else if (lex_.accept("polymap")) {
        polymap();
      } else if (lex_.accept("twist")) {
        twist();
      } else if (t.kind == Tok::Ident && lex_.is("->", 1)) {
        production();
      } else {
        lex_.fail("unexpected '" + t.text + "'");
      }
    }
    if (g_.nonterminals.empty()) lex_.fail("no nonterminals declared");
    if (!have_initial) g_.initial = 0;
    g_.params = table();
    g_.validate();
    return std::move(g_);
  }

private:
  VarTablePtr table() {
    if (!frozen_) {
      frozen_ = VarTable::make(params_);
    }
    return frozen_;
  }

  void require_open(const Token& t) {
    if (frozen_) Lexer::fail_at(t, "parameters must be declared before polymaps and productions");
  }

  void alphabet() {
    require_open(lex_.peek());
    std::string letters;
    while (!lex_.accept(";")) {
      Token t = lex_.next();
      if ((t.kind != Tok::Ident && t.kind != Tok::Char) || t.text.size() != 1)
        Lexer::fail_at(t, "expected a letter");
      letters += t.text;
      params_.push_back({tilde_name(t.text[0]), VarClass::Ordinary});
      params_.push_back({bar_name(t.text[0]), VarClass::Bar});
      lex_.accept(",");
    }
    sigma_ = Alphabet(sigma_.letters() + letters);
  }

  std::vector<VarEntry> decls() {
    require_open(lex_.peek());
    std::vector<VarEntry> out;
    while (!lex_.accept(";")) {
      Token n = lex_.expect(Tok::Ident, "variable name");
      VarClass c = VarClass::Ordinary;
      if (lex_.accept(":")) {
        Token k = lex_.expect(Tok::Ident, "variable class");
        if (k.text == "bar")
          c = VarClass::Bar;
        else if (k.text != "ordinary")
          Lexer::fail_at(k, "unknown variable class " + k.text);
      }
      out.push_back({n.text, c});
      lex_.accept(",");
    }
    return out;
  }

  void polymap() {
    Token name = lex_.expect(Tok::Ident, "polymap name");
    if (maps_.count(name.text)) Lexer::fail_at(name, "duplicate polymap " + name.text);
    lex_.expect("(");
    std::vector<std::string> formals;
    if (!lex_.accept(")")) {
      do formals.push_back(lex_.expect(Tok::Ident, "parameter").text);
      while (lex_.accept(","));
      lex_.expect(")");
    }
    lex_.expect("=");
    VarTablePtr slots = VarTable::make_ordinary(formals);
    VarTablePtr all = concat_tables(table(), slots);
    lex_.expect("(");
    std::vector<KPoly> outs;
    do {
      Token at = lex_.peek();
      RatFunc f = parse_ratfunc(lex_, all);
      try {
        outs.push_back(split_coefficients(f, table(), slots));
      } catch (const DomainError& e) {
        Lexer::fail_at(at, e.what());
      }
    } while (lex_.accept(","));
    lex_.expect(")");
    lex_.expect(";");
    maps_[name.text] = MapDecl{PolyMap(slots, outs), std::nullopt};
  }

  void twist() {
    Token name = lex_.expect(Tok::Ident, "polymap name");
    auto it = maps_.find(name.text);
    if (it == maps_.end()) Lexer::fail_at(name, "unknown polymap " + name.text);
    lex_.expect("with");
    if (lex_.is("subst")) {
      Token at = lex_.peek();
      WordSubst p = parse_word_subst(lex_);
      try {
        it->second.twist = extend_automorphism(invert_substitution(sigma_, p), table());
      } catch (const std::exception& e) {
        Lexer::fail_at(at, e.what());
      }
    } else {
      Token at = lex_.expect("map");
      auto fwd = images();
      lex_.expect("inverse");
      auto inv = images();
      FieldAutomorphism a(table(), fwd, inv);
      if (!a.round_trip_ok()) Lexer::fail_at(at, "twist maps are not mutually inverse");
      it->second.twist = a;
    }
    lex_.accept(";");
  }

  std::vector<RatFunc> images() {
    VarTablePtr t = table();
    std::vector<RatFunc> img;
    for (std::size_t i = 0; i < t->size(); ++i) img.emplace_back(QPoly::variable(t, i));
    lex_.expect("{");
    while (!lex_.accept("}")) {
      Token v = lex_.expect(Tok::Ident, "parameter");
      auto idx = t->find(v.text);
      if (!idx) Lexer::fail_at(v, "unknown parameter " + v.text);
      lex_.expect("->");
      img[*idx] = parse_ratfunc(lex_, t);
      if (!lex_.accept(";") && !lex_.is("}")) lex_.fail("expected ';' or '}'");
    }
    return img;
  }

  void production() {
    Token lhs_tok = lex_.next();
    auto lhs = g_.find(lhs_tok.text);
    if (!lhs) Lexer::fail_at(lhs_tok, "unknown nonterminal " + lhs_tok.text);
    lex_.expect("->");
    Production p;
    p.lhs = *lhs;
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && maps_.count(t.text) && lex_.is("(", 1)) {
      Token m = lex_.next();
      lex_.expect("(");
      if (!lex_.accept(")")) {
        do {
          Token r = lex_.expect(Tok::Ident, "nonterminal");
          auto idx = g_.find(r.text);
          if (!idx) Lexer::fail_at(r, "unknown nonterminal " + r.text);
          p.rhs.push_back(*idx);
        } while (lex_.accept(","));
        lex_.expect(")");
      }
      p.label = m.text;
      p.map = maps_[m.text].map;
      p.twist = maps_[m.text].twist;
      std::size_t in = 0;
      for (std::size_t r : p.rhs) in += g_.nonterminals[r].dim;
      if (in != p.map.arity()) Lexer::fail_at(m, "polymap " + m.text + " arity does not match its arguments");
      if (p.map.dim() != g_.nonterminals[p.lhs].dim)
        Lexer::fail_at(m, "polymap " + m.text + " output dimension does not match " + lhs_tok.text);
    } else if (t.kind == Tok::Ident && g_.find(t.text) && lex_.is(";", 1)) {
      Token r = lex_.next();
      std::size_t idx = g_.index(r.text);
      if (g_.nonterminals[idx].dim != g_.nonterminals[p.lhs].dim)
        Lexer::fail_at(r, "dimension mismatch in unit production");
      p.rhs = {idx};
      p.label = "id";
      p.map = PolyMap::identity(g_.nonterminals[idx].dim);
    } else {
      VarTablePtr none = VarTable::make_ordinary({});
      std::vector<KPoly> outs;
      Token at = lex_.peek();
      if (lex_.accept("(")) {
        do outs.push_back(KPoly::constant(parse_ratfunc(lex_, table()), none));
        while (lex_.accept(","));
        lex_.expect(")");
      } else {
        outs.push_back(KPoly::constant(parse_ratfunc(lex_, table()), none));
      }
      if (outs.size() != g_.nonterminals[p.lhs].dim)
        Lexer::fail_at(at, "constant has " + std::to_string(outs.size()) + " coordinates, " + lhs_tok.text +
                               " has dimension " + std::to_string(g_.nonterminals[p.lhs].dim));
      p.map = PolyMap(none, outs);
    }
    lex_.expect(";");
    g_.productions.push_back(std::move(p));
  }

  Lexer lex_;
  Grammar g_;
  std::vector<VarEntry> params_;
  VarTablePtr frozen_;
  Alphabet sigma_{""};
  std::map<std::string, MapDecl> maps_;
};

}  // namespace

Grammar parse_grammar(std::string_view text) { return GrammarParser(text).run(); }

}  // namespace pgz
