#include "pgz/encoding.hpp"

#include <set>

namespace pgz {

Alphabet::Alphabet(std::string letters) : letters_(std::move(letters)) {
  std::set<char> seen;
  std::vector<VarEntry> entries;
  for (char c : letters_) {
    if (!seen.insert(c).second) throw StructuralError(std::string("duplicate letter '") + c + "'");
    entries.push_back({tilde_name(c), VarClass::Ordinary});
    entries.push_back({bar_name(c), VarClass::Bar});
  }
  table_ = VarTable::make(entries);
}

std::size_t Alphabet::position(char c) const {
  auto p = letters_.find(c);
  if (p == std::string::npos) throw StructuralError(std::string("letter '") + c + "' not in alphabet");
  return p;
}

Encoded encode_word(const Alphabet& sigma, std::string_view w) {
  const auto& t = sigma.table();
  Encoded e{QPoly(t), QPoly::constant(Rat(1), t)};
  // Phi(w c) = (w~ * cb + ct, wb * cb)
  for (char c : w) {
    QPoly cb = QPoly::variable(t, sigma.bar(c));
    e.tilde = e.tilde * cb + QPoly::variable(t, sigma.tilde(c));
    e.bar = e.bar * cb;
  }
  return e;
}

WordSubst complete_subst(const Alphabet& sigma, const WordSubst& p) {
  WordSubst full;
  for (const auto& [c, w] : p) {
    if (!sigma.contains(c)) throw StructuralError(std::string("substituted letter '") + c + "' not in alphabet");
    for (char d : w) sigma.position(d);
  }
  for (char c : sigma.letters()) {
    auto it = p.find(c);
    full[c] = it == p.end() ? std::string(1, c) : it->second;
  }
  return full;
}

std::string apply_subst(const WordSubst& p, std::string_view w) {
  std::string out;
  for (char c : w) {
    auto it = p.find(c);
    out += it == p.end() ? std::string(1, c) : it->second;
  }
  return out;
}

std::vector<QPoly> induced_subst(const Alphabet& sigma, const WordSubst& p) {
  WordSubst full = complete_subst(sigma, p);
  std::vector<QPoly> images(sigma.table()->size());
  for (char c : sigma.letters()) {
    Encoded e = encode_word(sigma, full[c]);
    images[sigma.tilde(c)] = e.tilde;
    images[sigma.bar(c)] = e.bar;
  }
  return images;
}

ComInjectivity com_injective_check(const Alphabet& sigma, const WordSubst& p) {
  WordSubst full = complete_subst(sigma, p);
  std::size_t n = sigma.size();
  ComInjectivity r;
  r.matrix.assign(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t s = 0; s < n; ++s)
    for (char d : full[sigma.letters()[s]]) r.matrix[sigma.position(d)][s] += 1;
  r.det = n ? determinant(r.matrix) : Rat(1);
  r.injective = r.det != 0;
  return r;
}

bool single_letter_nonvanishing(const Alphabet& sigma, const WordSubst& p, char s) {
  WordSubst full = complete_subst(sigma, p);
  for (char c : sigma.letters())
    if (c != s && full[c] != std::string(1, c))
      throw StructuralError("substitution is not the identity outside the chosen letter");
  return full[s].find(s) != std::string::npos;
}

FieldAutomorphism invert_substitution(const Alphabet& sigma, const WordSubst& p) {
  ComInjectivity ci = com_injective_check(sigma, p);
  if (!ci.injective) throw NotComInjective("substitution is not com-injective (determinant 0)");
  const auto& t = sigma.table();
  std::size_t n = sigma.size();
  std::vector<QPoly> fwd = induced_subst(sigma, p);

  // Bars: log(s') = sum_t M[t][s] log(t), so t = prod_s s'^((M^T)^-1 [t][s]).
  Matrix<Rat> mt(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mt[i][j] = ci.matrix[j][i];
  Matrix<Rat> inv = *inverse_matrix(mt);
  std::vector<RatFunc> back(t->size());
  std::vector<std::optional<RatFunc>> bar_images(t->size());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial::Entry> e;
    for (std::size_t j = 0; j < n; ++j)
      if (inv[i][j] != 0) e.push_back({static_cast<std::uint32_t>(2 * j + 1), Exp::from_rat(inv[i][j])});
    back[2 * i + 1] = RatFunc::from_laurent(t, Monomial(std::move(e)));
    bar_images[2 * i + 1] = back[2 * i + 1];
  }

  // Tildes: s~' = sum_t C[s][t] t~ with C over the bars. Rewrite C in primed
  // variables and solve the linear system.
  Matrix<RatFunc> c(n, std::vector<RatFunc>(n));
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& [m, coef] : fwd[2 * s].terms()) {
      std::size_t tt = SIZE_MAX;
      std::vector<Monomial::Entry> rest;
      for (const auto& [v, x] : m.entries()) {
        if (v % 2 == 0)
          tt = v / 2;
        else
          rest.push_back({v, x});
      }
      RatFunc mono = RatFunc::from_laurent(t, Monomial(std::move(rest)), coef);
      c[s][tt] = c[s][tt] + substitute(mono, bar_images, t);
    }
  }
  auto cinv = inverse_matrix(c);
  if (!cinv) throw NotComInjective("tilde system is singular");
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc acc;
    for (std::size_t s = 0; s < n; ++s) acc = acc + (*cinv)[i][s] * RatFunc(QPoly::variable(t, 2 * s));
    back[2 * i] = acc;
  }

  std::vector<RatFunc> forward;
  for (const auto& f : fwd) forward.emplace_back(f);
  FieldAutomorphism a(t, std::move(forward), std::move(back));
  if (!a.round_trip_ok()) throw DomainError("inverse automorphism failed its round-trip check");
  return a;
}

std::string parse_word(Lexer& lex) {
  std::string w;
  bool any = false;
  for (;;) {
    const Token& tk = lex.peek();
    if (tk.kind == Tok::Ident && tk.text == "eps") {
      lex.next();
    } else if (tk.kind == Tok::Ident || tk.kind == Tok::Number || tk.kind == Tok::Char ||
               tk.kind == Tok::String) {
      w += lex.next().text;
    } else {
      break;
    }
    any = true;
    if (!lex.accept(".")) break;
  }
  if (!any) lex.fail("expected a word");
  return w;
}

WordSubst parse_word_subst(Lexer& lex) {
  lex.expect("subst");
  lex.expect("{");
  WordSubst p;
  while (!lex.accept("}")) {
    Token from = lex.next();
    if ((from.kind != Tok::Ident && from.kind != Tok::Char) || from.text.size() != 1)
      Lexer::fail_at(from, "expected a single letter");
    lex.expect("->");
    if (!p.emplace(from.text[0], parse_word(lex)).second) Lexer::fail_at(from, "letter substituted twice");
    if (!lex.accept(";") && !lex.is("}")) lex.fail("expected ';' or '}'");
  }
  return p;
}

WordSubst parse_word_subst(std::string_view text) {
  Lexer lex(text);
  WordSubst p = parse_word_subst(lex);
  if (!lex.at_end()) lex.fail("trailing input");
  return p;
}

std::string format_matrix(const Matrix<Rat>& m) {
  std::string s;
  for (const auto& row : m) {
    s += "[";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? ", " : "") + row[j].get_str();
    s += "]";
  }
  return s;
}

}  // namespace pgz
