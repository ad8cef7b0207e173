#include "pgz/ratfunc.hpp"

#include <algorithm>

namespace pgz {

namespace {

// Common monomial factor of all terms of a and b.
Monomial common_monomial(const QPoly& a, const QPoly& b) {
  std::optional<Monomial> g;
  for (const QPoly* p : {&a, &b}) {
    for (const auto& t : p->terms()) {
      g = g ? g->gcd(t.first) : t.first;
      if (g->is_one()) return *g;
    }
  }
  return g.value_or(Monomial());
}

QPoly divide_monomial(const QPoly& p, const Monomial& m) {
  std::vector<QPoly::Term> t;
  t.reserve(p.size());
  for (const auto& [mm, c] : p.terms()) t.push_back({mm / m, c});
  return QPoly::from_terms(p.vars(), std::move(t));
}

}  // namespace

std::optional<QPoly> exact_divide(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  VarTablePtr vars = common_table(a.vars(), b.vars());
  if (a.is_zero()) return QPoly(vars);
  if (b.is_constant()) return a.scale(Rat(1) / b.constant_value()).rebase(vars);
  if (a.size() < 1) return std::nullopt;
  for (const auto& [v, e] : b.leading_term().first.entries()) {
    (void)e;
    if (a.degree(v) < b.degree(v)) return std::nullopt;
  }
  const auto& [lm, lc] = b.leading_term();
  std::vector<QPoly::Term> quotient;
  QPoly r = a.rebase(vars);
  QPoly bb = b.rebase(vars);
  std::size_t guard = 0;
  while (!r.is_zero()) {
    if (++guard > 20000) return std::nullopt;
    const auto& [rm, rc] = r.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    Monomial m = rm / lm;
    Rat c = rc / lc;
    quotient.push_back({m, c});
    r -= bb.mul_term(m, c);
  }
  return QPoly::from_terms(vars, std::move(quotient));
}

RatFunc::RatFunc(QPoly num) : num_(std::move(num)), den_(QPoly::constant(Rat(1), num_.vars())) {}

RatFunc::RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::from_laurent(const VarTablePtr& vars, const Monomial& m, const Rat& c) {
  std::vector<Monomial::Entry> pos, neg;
  for (const auto& [v, e] : m.entries()) {
    if (e.is_negative())
      neg.push_back({v, -e});
    else
      pos.push_back({v, e});
  }
  return RatFunc(QPoly::monomial(vars, Monomial(std::move(pos)), c),
                 QPoly::monomial(vars, Monomial(std::move(neg))));
}

Rat RatFunc::constant_value() const { return num_.constant_value() / den_.constant_value(); }

std::optional<QPoly> RatFunc::as_polynomial() const {
  if (!den_.is_constant()) return std::nullopt;
  return num_.scale(Rat(1) / den_.constant_value());
}

std::optional<std::pair<Monomial, Rat>> RatFunc::as_laurent() const {
  if (num_.size() != 1 || den_.size() != 1) return std::nullopt;
  return std::make_pair(num_.terms()[0].first / den_.terms()[0].first,
                        Rat(num_.terms()[0].second / den_.terms()[0].second));
}

void RatFunc::normalize() {
  VarTablePtr vars = common_table(num_.vars(), den_.vars());
  if (num_.is_zero()) {
    num_ = QPoly(vars);
    den_ = QPoly::constant(Rat(1), vars);
    return;
  }
  if (!den_.is_constant()) {
    Monomial g = common_monomial(num_, den_);
    if (!g.is_one()) {
      num_ = divide_monomial(num_, g);
      den_ = divide_monomial(den_, g);
    }
  }
  Rat lc = den_.leading_term().second;
  if (lc != 1) {
    Rat inv = Rat(1) / lc;
    num_ = num_.scale(inv);
    den_ = den_.scale(inv);
  }
  if (!den_.is_constant()) {
    if (auto q = exact_divide(num_, den_)) {
      num_ = std::move(*q);
      den_ = QPoly::constant(Rat(1), vars);
    } else if (num_.size() <= den_.size() && !num_.is_constant()) {
      if (auto q2 = exact_divide(den_, num_)) {
        Rat c = q2->leading_term().second;
        num_ = QPoly::constant(Rat(1) / c, vars);
        den_ = q2->scale(Rat(1) / c);
      }
    }
  }
  num_ = num_.rebase(vars);
  den_ = den_.rebase(vars);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_.is_constant() && o.den_.is_constant()) {
    RatFunc r;
    r.num_ = num_.scale(Rat(1) / den_.constant_value()) +
             o.num_.scale(Rat(1) / o.den_.constant_value());
    r.den_ = QPoly::constant(Rat(1), r.num_.vars());
    r.normalize();
    return r;
  }
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  if (den_.size() >= o.den_.size()) {
    if (auto q = exact_divide(den_, o.den_)) return RatFunc(num_ + o.num_ * *q, den_);
  } else if (auto q = exact_divide(o.den_, den_)) {
    return RatFunc(num_ * *q + o.num_, o.den_);
  }
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc();
  if (is_constant()) {
    RatFunc r = o;
    r.num_ = r.num_.scale(constant_value());
    return r;
  }
  if (o.is_constant()) {
    RatFunc r = *this;
    r.num_ = r.num_.scale(o.constant_value());
    return r;
  }
  QPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant()) {
    if (auto q = exact_divide(a, d)) {
      a = *q;
      d = QPoly::constant(Rat(1), d.vars());
    }
  }
  if (!b.is_constant()) {
    if (auto q = exact_divide(c, b)) {
      c = *q;
      b = QPoly::constant(Rat(1), b.vars());
    }
  }
  return RatFunc(a * c, b * d);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  RatFunc r(Rat(1)), b = *this;
  auto n = static_cast<unsigned long>(k);
  while (n) {
    if (n & 1u) r = r * b;
    n >>= 1u;
    if (n) b = b * b;
  }
  return r;
}

bool RatFunc::operator==(const RatFunc& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

RatFunc RatFunc::rebase(const VarTablePtr& target) const {
  RatFunc r;
  r.num_ = num_.rebase(target);
  r.den_ = den_.rebase(target);
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string();
  if (den_.is_constant()) return num_.scale(Rat(1) / den_.constant_value()).to_string();
  std::string n = num_.to_string(), d = den_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  if (den_.size() > 1 || den_.leading_term().second != 1 ||
      den_.leading_term().first.entries().size() > 1)
    d = "(" + d + ")";
  return n + "/" + d;
}

RatFunc CoeffOps<RatFunc>::power(const RatFunc& a, const Exp& e) {
  if (e.is_integer()) return a.pow(e.num());
  auto l = a.as_laurent();
  if (!l) throw DomainError("fractional power of a non-monomial rational function");
  Rat c = CoeffOps<Rat>::power(l->second, e);
  return RatFunc::from_laurent(a.vars(), l->first.pow(e), c);
}

namespace {

RatFunc substitute_poly(const QPoly& p, const std::vector<std::optional<RatFunc>>& images,
                        const VarTablePtr& target) {
  RatFunc acc;
  if (p.is_zero()) return acc;
  const VarTablePtr& src = p.vars();
  std::map<std::pair<std::uint32_t, Exp>, RatFunc> cache;
  auto power_of = [&](std::uint32_t v, const Exp& e) -> RatFunc {
    auto key = std::make_pair(v, e);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    RatFunc value;
    if (v >= images.size() || !images[v]) {
      if (!target || v >= target->size() || target->name(v) != src->name(v))
        throw StructuralError("kept variable " + src->name(v) + " missing from target table");
      value = RatFunc(QPoly::variable(target, v, e));
    } else if (e.is_integer()) {
      value = images[v]->rebase(target).pow(e.num());
    } else {
      auto l = images[v]->as_laurent();
      if (!l || l->second != 1)
        throw DomainError("variable " + src->name(v) +
                          " has a fractional exponent but its image is not a monomial");
      value = RatFunc::from_laurent(target, l->first.pow(e));
    }
    cache.emplace(key, value);
    return value;
  };
  // Group terms over a shared denominator when all images are polynomial.
  for (const auto& [m, c] : p.terms()) {
    RatFunc t(c);
    for (const auto& [v, e] : m.entries()) t = t * power_of(v, e);
    acc += t;
  }
  return acc;
}

}  // namespace

RatFunc substitute(const RatFunc& f, const std::vector<std::optional<RatFunc>>& images,
                   const VarTablePtr& target) {
  RatFunc n = substitute_poly(f.num(), images, target);
  if (f.den().is_constant()) return n * RatFunc(Rat(1) / f.den().constant_value());
  return n / substitute_poly(f.den(), images, target);
}

Rat evaluate_at(const RatFunc& f, std::span<const Rat> point) {
  Rat d = evaluate(f.den(), point);
  if (sgn(d) == 0) throw DomainError("evaluation at a pole");
  return evaluate(f.num(), point) / d;
}

}  // namespace pgz
