#include "pgz/parse.hpp"

#include <map>

namespace pgz {

namespace {

class ExprParser {
public:
  ExprParser(Lexer& lex, const VarTablePtr& vars) : lex_(lex), vars_(vars) {}

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (lex_.accept("+"))
        acc = acc + term();
      else if (lex_.is("-") && !lex_.is("[", 1))
        lex_.next(), acc = acc - term();
      else
        return acc;
    }
  }

private:
  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      if (lex_.accept("*")) {
        acc = acc * unary();
      } else if (lex_.accept("/")) {
        Token at = lex_.peek();
        RatFunc d = unary();
        if (d.is_zero()) Lexer::fail_at(at, "division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (lex_.accept("-")) return -unary();
    if (lex_.accept("+")) return unary();
    return power();
  }

  RatFunc power() {
    Token at = lex_.peek();
    RatFunc base = atom();
    if (!lex_.accept("^")) return base;
    Exp e = exponent();
    try {
      return CoeffOps<RatFunc>::power(base, e);
    } catch (const DomainError& err) {
      Lexer::fail_at(at, err.what());
    }
  }

  Exp exponent() {
    if (lex_.peek().kind == Tok::Number) return Exp(to_int(lex_.next()));
    lex_.expect("(");
    bool neg = lex_.accept("-");
    std::int64_t n = to_int(lex_.expect(Tok::Number, "exponent"));
    std::int64_t d = 1;
    if (lex_.accept("/")) d = to_int(lex_.expect(Tok::Number, "exponent denominator"));
    lex_.expect(")");
    if (d == 0) lex_.fail("zero exponent denominator");
    return Exp(neg ? -n : n, d);
  }

  static std::int64_t to_int(const Token& t) {
    if (t.text.size() > 17) Lexer::fail_at(t, "exponent too large");
    return std::stoll(t.text);
  }

  RatFunc atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Number) {
      Token n = lex_.next();
      return RatFunc(Rat(mpz_class(n.text)));
    }
    if (t.kind == Tok::Ident) {
      Token id = lex_.next();
      auto idx = vars_ ? vars_->find(id.text) : std::nullopt;
      if (!idx) Lexer::fail_at(id, "unknown variable '" + id.text + "'");
      return RatFunc(QPoly::variable(vars_, *idx));
    }
    if (lex_.accept("(")) {
      RatFunc e = expr();
      lex_.expect(")");
      return e;
    }
    lex_.fail("expected a number, variable or '('");
  }

  Lexer& lex_;
  VarTablePtr vars_;
};

}  // namespace

RatFunc parse_ratfunc(Lexer& lex, const VarTablePtr& vars) {
  ExprParser p(lex, vars);
  RatFunc r = p.expr();
  return vars ? r.rebase(vars) : r;
}

RatFunc parse_ratfunc(std::string_view text, const VarTablePtr& vars) {
  Lexer lex(text);
  RatFunc r = parse_ratfunc(lex, vars);
  if (!lex.at_end()) lex.fail("unexpected trailing input");
  return r;
}

QPoly parse_poly(std::string_view text, const VarTablePtr& vars) {
  RatFunc r = parse_ratfunc(text, vars);
  auto p = r.as_polynomial();
  if (!p) throw ParseError("expected a polynomial, got a rational function", 1, 1);
  return p->rebase(vars);
}

VarTablePtr concat_tables(const VarTablePtr& a, const VarTablePtr& b) {
  std::vector<VarEntry> e;
  if (a) e = a->entries();
  if (b) e.insert(e.end(), b->entries().begin(), b->entries().end());
  return VarTable::make(std::move(e));
}

KPoly split_coefficients(const RatFunc& f, const VarTablePtr& coeff_vars,
                         const VarTablePtr& poly_vars) {
  VarTablePtr src = f.vars();
  std::size_t n = src ? src->size() : 0;
  // For each source variable: (is_poly, target index).
  std::vector<std::pair<bool, std::uint32_t>> where(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& name = src->name(i);
    if (auto j = poly_vars ? poly_vars->find(name) : std::nullopt)
      where[i] = {true, static_cast<std::uint32_t>(*j)};
    else if (auto k = coeff_vars ? coeff_vars->find(name) : std::nullopt)
      where[i] = {false, static_cast<std::uint32_t>(*k)};
    else
      throw StructuralError("variable " + name + " belongs to neither table");
  }
  for (const auto& [m, c] : f.den().terms()) {
    (void)c;
    for (const auto& [v, e] : m.entries()) {
      (void)e;
      if (where[v].first)
        throw DomainError("variable " + src->name(v) + " occurs in a denominator");
    }
  }
  QPoly den = f.den().rebase(coeff_vars);
  std::map<std::vector<Monomial::Entry>, std::vector<QPoly::Term>> groups;
  std::vector<std::vector<Monomial::Entry>> order;
  for (const auto& [m, c] : f.num().terms()) {
    std::vector<Monomial::Entry> pe, ce;
    for (const auto& [v, e] : m.entries()) (where[v].first ? pe : ce).push_back({where[v].second, e});
    Monomial pm(pe);
    auto key = pm.entries();
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back({Monomial(ce), c});
  }
  std::vector<KPoly::Term> terms;
  for (const auto& key : order) {
    QPoly num = QPoly::from_terms(coeff_vars, groups[key]);
    terms.push_back({Monomial(key), RatFunc(num, den)});
  }
  return KPoly::from_terms(poly_vars, std::move(terms));
}

RatFunc flatten_coefficients(const KPoly& p, const VarTablePtr& combined) {
  RatFunc acc;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Entry> e;
    for (const auto& [v, x] : m.entries())
      e.push_back({static_cast<std::uint32_t>(combined->index(p.vars()->name(v))), x});
    acc += RatFunc(QPoly::monomial(combined, Monomial(e))) * c.rebase(combined);
  }
  return acc.rebase(combined);
}

KPoly parse_kpoly(std::string_view text, const VarTablePtr& coeff_vars, const VarTablePtr& poly_vars) {
  VarTablePtr combined = concat_tables(coeff_vars, poly_vars);
  return split_coefficients(parse_ratfunc(text, combined), coeff_vars, poly_vars);
}

}  // namespace pgz
