#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pgz/error.hpp"
#include "pgz/monomial.hpp"
#include "pgz/rational.hpp"
#include "pgz/vartable.hpp"

namespace pgz {

// Coefficient-field adapter. Specialized for Rat here and for RatFunc in
// ratfunc.hpp.
template <class F>
struct CoeffOps;

template <>
struct CoeffOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& a) { return sgn(a) == 0; }
  static bool is_one(const Rat& a) { return a == 1; }
  static bool is_negative_literal(const Rat& a) { return sgn(a) < 0; }
  static bool is_atomic(const Rat&) { return true; }
  static std::string to_string(const Rat& a) { return a.get_str(); }
  static Rat inverse(const Rat& a) {
    if (sgn(a) == 0) throw DomainError("division by zero");
    return 1 / a;
  }
  // a^e for rational e; exact or DomainError.
  static Rat power(const Rat& a, const Exp& e);
};

inline Rat rat_root(const Rat& a, std::int64_t k) {
  if (k == 1) return a;
  if (sgn(a) < 0 && k % 2 == 0) throw DomainError("even root of a negative rational");
  mpz_class n = abs(a.get_num()), d = a.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k)) ||
      !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(k)))
    throw DomainError("fractional power is not rational");
  if (sgn(a) < 0) rn = -rn;
  return Rat(rn, rd);
}

inline Rat CoeffOps<Rat>::power(const Rat& a, const Exp& e) {
  Rat base = rat_root(a, e.den());
  std::int64_t n = e.num();
  if (n < 0) {
    base = inverse(base);
    n = -n;
  }
  Rat r(1);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(n));
  r = Rat(num, den);
  r.canonicalize();
  return r;
}

// Sparse multivariate polynomial with coefficients in F. Terms are kept in
// strictly descending lexicographic order (variable 0 most significant) with
// nonzero coefficients, which makes the representation canonical.
template <class F>
class Polynomial {
public:
  using Coeff = F;
  using Term = std::pair<Monomial, F>;

  Polynomial() = default;
  explicit Polynomial(VarTablePtr vars) : vars_(std::move(vars)) {}

  static Polynomial constant(const F& c, VarTablePtr vars = nullptr) {
    Polynomial p(std::move(vars));
    if (!CoeffOps<F>::is_zero(c)) p.terms_.push_back({Monomial(), c});
    return p;
  }

  static Polynomial variable(const VarTablePtr& vars, std::size_t idx, Exp e = Exp(1)) {
    if (!vars || idx >= vars->size()) throw StructuralError("variable index out of range");
    Polynomial p(vars);
    p.terms_.push_back({Monomial::var(static_cast<std::uint32_t>(idx), e), CoeffOps<F>::one()});
    p.validate();
    return p;
  }

  static Polynomial variable(const VarTablePtr& vars, const std::string& name, Exp e = Exp(1)) {
    return variable(vars, vars->index(name), e);
  }

  static Polynomial monomial(const VarTablePtr& vars, Monomial m, F c = CoeffOps<F>::one()) {
    Polynomial p(vars);
    if (!CoeffOps<F>::is_zero(c)) p.terms_.push_back({std::move(m), std::move(c)});
    p.validate();
    return p;
  }

  static Polynomial from_terms(VarTablePtr vars, std::vector<Term> terms) {
    Polynomial p(std::move(vars));
    p.terms_ = std::move(terms);
    p.canonicalize();
    p.validate();
    return p;
  }

  const VarTablePtr& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  F constant_value() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return CoeffOps<F>::zero();
  }
  bool is_unit_monomial() const {
    return terms_.size() == 1 && CoeffOps<F>::is_one(terms_[0].second);
  }
  const Term& leading_term() const { return terms_.front(); }

  F coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.first == m) return t.second;
    return CoeffOps<F>::zero();
  }

  bool uses_var(std::size_t v) const {
    for (const auto& t : terms_)
      if (!t.first.exponent(static_cast<std::uint32_t>(v)).is_zero()) return true;
    return false;
  }

  bool all_integer_exponents() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.first.all_integer(); });
  }

  Exp degree(std::size_t v) const {
    Exp d(0);
    for (const auto& t : terms_) d = std::max(d, t.first.exponent(static_cast<std::uint32_t>(v)));
    return d;
  }

  Exp total_degree() const {
    Exp d(0);
    for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
    return d;
  }

  // Same polynomial viewed over a compatible (extending) table.
  Polynomial with_table(const VarTablePtr& t) const {
    Polynomial p = *this;
    p.vars_ = common_table(vars_, t);
    if (p.vars_ != t) throw StructuralError("target table does not extend the source table");
    return p;
  }

  // Re-index variables by name into another table.
  Polynomial rebase(const VarTablePtr& target) const {
    if (vars_ == target || terms_.empty() || is_constant()) {
      Polynomial p = *this;
      p.vars_ = target;
      return p;
    }
    std::vector<std::uint32_t> map(vars_->size());
    for (std::size_t i = 0; i < vars_->size(); ++i)
      map[i] = static_cast<std::uint32_t>(target->find(vars_->name(i)).value_or(SIZE_MAX));
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      std::vector<Monomial::Entry> e;
      for (const auto& [v, x] : m.entries()) {
        if (map[v] == static_cast<std::uint32_t>(SIZE_MAX))
          throw StructuralError("variable " + vars_->name(v) + " missing from target table");
        e.push_back({map[v], x});
      }
      out.push_back({Monomial(std::move(e)), c});
    }
    return from_terms(target, std::move(out));
  }

  template <class G, class Fn>
  Polynomial<G> map_coefficients(Fn&& fn) const {
    std::vector<typename Polynomial<G>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      G g = fn(c);
      if (!CoeffOps<G>::is_zero(g)) out.push_back({m, std::move(g)});
    }
    return Polynomial<G>::from_terms(vars_, std::move(out));
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  Polynomial operator+(const Polynomial& o) const { return add(o, false); }
  Polynomial operator-(const Polynomial& o) const { return add(o, true); }
  Polynomial& operator+=(const Polynomial& o) { return *this = add(o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = add(o, true); }

  Polynomial operator*(const Polynomial& o) const {
    Polynomial r(common_table(vars_, o.vars_));
    if (terms_.empty() || o.terms_.empty()) return r;
    if (o.is_constant()) return scale(o.terms_[0].second).retag(r.vars_);
    if (is_constant()) return o.scale(terms_[0].second).retag(r.vars_);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) prod.push_back({m1 * m2, c1 * c2});
    r.terms_ = std::move(prod);
    r.canonicalize();
    r.validate();
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scale(const F& c) const {
    if (CoeffOps<F>::is_zero(c)) return Polynomial(vars_);
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second = t.second * c;
    return p;
  }

  Polynomial mul_term(const Monomial& m, const F& c) const {
    if (CoeffOps<F>::is_zero(c)) return Polynomial(vars_);
    Polynomial p(vars_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.first * m, t.second * c});
    return p;  // multiplying by a monomial preserves the lex order
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(CoeffOps<F>::one(), vars_);
    Polynomial base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].first == o.terms_[i].first)) return false;
      if (!(terms_[i].second == o.terms_[i].second)) return false;
    }
    if (!terms_.empty() && !is_constant()) (void)common_table(vars_, o.vars_);
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = CoeffOps<F>::to_string(c);
      bool neg = CoeffOps<F>::is_negative_literal(c);
      bool atomic = CoeffOps<F>::is_atomic(c);
      std::string body;
      if (m.is_one()) {
        body = atomic ? (neg ? cs.substr(1) : cs) : "(" + cs + ")";
      } else {
        std::string ms = m.to_string(vars_.get());
        if (atomic) {
          std::string mag = neg ? cs.substr(1) : cs;
          body = mag == "1" ? ms : mag + "*" + ms;
        } else {
          body = "(" + cs + ")*" + ms;
        }
      }
      bool minus = atomic && neg;
      if (first)
        s += (minus ? "-" : "") + body;
      else
        s += (minus ? " - " : " + ") + body;
      first = false;
    }
    return s;
  }

private:
  Polynomial retag(const VarTablePtr& t) const {
    Polynomial p = *this;
    p.vars_ = t;
    return p;
  }

  Polynomial add(const Polynomial& o, bool negate) const {
    Polynomial r(common_table(vars_, o.vars_));
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int cmp;
      if (i == terms_.size())
        cmp = -1;
      else if (j == o.terms_.size())
        cmp = 1;
      else
        cmp = terms_[i].first.lex_compare(o.terms_[j].first);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        const auto& t = o.terms_[j++];
        r.terms_.push_back({t.first, negate ? F(-t.second) : t.second});
      } else {
        F c = negate ? F(terms_[i].second - o.terms_[j].second)
                     : F(terms_[i].second + o.terms_[j].second);
        if (!CoeffOps<F>::is_zero(c)) r.terms_.push_back({terms_[i].first, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first.lex_compare(b.first) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second = out.back().second + t.second;
      } else {
        if (!out.empty() && CoeffOps<F>::is_zero(out.back().second)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && CoeffOps<F>::is_zero(out.back().second)) out.pop_back();
    terms_ = std::move(out);
  }

  void validate() const {
    for (const auto& [m, c] : terms_) {
      for (const auto& [v, e] : m.entries()) {
        if (!vars_ || v >= vars_->size()) throw StructuralError("monomial uses unknown variable");
        if (e.is_negative())
          throw DomainError("negative exponent on " + vars_->name(v) + " in a polynomial");
        if (vars_->cls(v) == VarClass::Ordinary && !e.is_integer())
          throw DomainError("fractional exponent on ordinary variable " + vars_->name(v));
      }
    }
  }

  VarTablePtr vars_;
  std::vector<Term> terms_;
};

// Simultaneous substitution. images[v] replaces variable v of p; nullopt keeps
// the variable (it must exist under the same index in `target`). A variable
// carrying a fractional exponent must be mapped to a coefficient-one monomial.
template <class F>
Polynomial<F> substitute(const Polynomial<F>& p, const std::vector<std::optional<Polynomial<F>>>& images,
                         const VarTablePtr& target) {
  using P = Polynomial<F>;
  P result(target);
  if (p.is_zero()) return result;
  const VarTablePtr& src = p.vars();
  std::map<std::pair<std::uint32_t, Exp>, P> cache;
  auto power_of = [&](std::uint32_t v, const Exp& e) -> P {
    auto key = std::make_pair(v, e);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    P value(target);
    if (v >= images.size() || !images[v]) {
      if (!target || v >= target->size() || target->name(v) != src->name(v) ||
          target->cls(v) != src->cls(v))
        throw StructuralError("kept variable " + src->name(v) + " missing from target table");
      value = P::variable(target, v, e);
    } else {
      const P& img = *images[v];
      if (e.is_integer()) {
        value = img.rebase(target).pow(static_cast<unsigned>(e.num()));
      } else {
        if (img.size() != 1 || !CoeffOps<F>::is_one(img.terms()[0].second))
          throw DomainError("variable " + src->name(v) +
                            " has a fractional exponent but its image is not a monomial");
        value = P::monomial(target, img.rebase(target).terms()[0].first.pow(e));
      }
    }
    cache.emplace(key, value);
    return value;
  };
  for (const auto& [m, c] : p.terms()) {
    P term = P::constant(c, target);
    for (const auto& [v, e] : m.entries()) term = term * power_of(v, e);
    result += term;
  }
  return result;
}

// Substitution within one table: images[v] (same table) or keep.
template <class F>
Polynomial<F> substitute(const Polynomial<F>& p, const std::vector<std::optional<Polynomial<F>>>& images) {
  return substitute(p, images, p.vars());
}

template <class F>
F evaluate(const Polynomial<F>& p, std::span<const F> point) {
  if (p.vars() && point.size() < p.vars()->size())
    throw StructuralError("evaluation point has too few coordinates");
  F acc = CoeffOps<F>::zero();
  for (const auto& [m, c] : p.terms()) {
    F t = c;
    for (const auto& [v, e] : m.entries()) t = t * CoeffOps<F>::power(point[v], e);
    acc = acc + t;
  }
  return acc;
}

using QPoly = Polynomial<Rat>;

}  // namespace pgz
