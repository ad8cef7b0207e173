#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgz/polynomial.hpp"

namespace pgz {

enum class OrderKind { Lex, GrevLex };

// Term order on integer exponent vectors. A block-elimination order compares
// the `front` variables first (graded reverse lex within the block), then the
// remaining variables by `kind`.
struct MonomialOrder {
  OrderKind kind = OrderKind::GrevLex;
  std::vector<bool> front;

  static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
  static MonomialOrder grevlex() { return {OrderKind::GrevLex, {}}; }
  static MonomialOrder block_elim(std::size_t nvars, const std::vector<std::size_t>& drop,
                                  OrderKind back = OrderKind::GrevLex) {
    MonomialOrder o{back, std::vector<bool>(nvars, false)};
    for (std::size_t v : drop) o.front.at(v) = true;
    return o;
  }

  bool is_block() const { return std::find(front.begin(), front.end(), true) != front.end(); }

  std::string key() const {
    std::string k = kind == OrderKind::Lex ? "lex" : "grevlex";
    if (is_block()) {
      k += ":";
      for (bool b : front) k += b ? '1' : '0';
    }
    return k;
  }
};

namespace gb_detail {

struct DMono {
  std::vector<std::int32_t> e;
  std::int32_t deg = 0;

  bool operator==(const DMono& o) const { return e == o.e; }
  bool divides(const DMono& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  DMono lcm(const DMono& o) const {
    DMono r;
    r.e.resize(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      r.e[i] = std::max(e[i], o.e[i]);
      r.deg += r.e[i];
    }
    return r;
  }
  DMono operator*(const DMono& o) const {
    DMono r;
    r.e.resize(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] + o.e[i];
    r.deg = deg + o.deg;
    return r;
  }
  DMono operator/(const DMono& o) const {
    DMono r;
    r.e.resize(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] - o.e[i];
    r.deg = deg - o.deg;
    return r;
  }
  bool coprime(const DMono& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] && o.e[i]) return false;
    return true;
  }
};

inline int grevlex_cmp(const DMono& a, const DMono& b, const std::vector<bool>* mask, bool want) {
  std::int32_t da = 0, db = 0;
  for (std::size_t i = 0; i < a.e.size(); ++i) {
    if (mask && (*mask)[i] != want) continue;
    da += a.e[i];
    db += b.e[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.e.size(); i-- > 0;) {
    if (mask && (*mask)[i] != want) continue;
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

inline int lex_cmp(const DMono& a, const DMono& b, const std::vector<bool>* mask, bool want) {
  for (std::size_t i = 0; i < a.e.size(); ++i) {
    if (mask && (*mask)[i] != want) continue;
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  }
  return 0;
}

inline int compare(const MonomialOrder& o, const DMono& a, const DMono& b) {
  if (o.is_block()) {
    int c = grevlex_cmp(a, b, &o.front, true);
    if (c) return c;
    return o.kind == OrderKind::Lex ? lex_cmp(a, b, &o.front, false)
                                    : grevlex_cmp(a, b, &o.front, false);
  }
  return o.kind == OrderKind::Lex ? lex_cmp(a, b, nullptr, false) : grevlex_cmp(a, b, nullptr, false);
}

template <class F>
struct GPoly {
  std::vector<std::pair<DMono, F>> terms;  // descending in the active order
  std::int32_t sugar = 0;

  bool is_zero() const { return terms.empty(); }
  const DMono& lm() const { return terms.front().first; }
};

template <class F>
class Engine {
public:
  Engine(const VarTablePtr& vars, MonomialOrder order) : vars_(vars), order_(std::move(order)) {
    n_ = vars_ ? vars_->size() : 0;
    if (order_.front.empty()) order_.front.assign(n_, false);
  }

  GPoly<F> from_poly(const Polynomial<F>& p) const {
    GPoly<F> g;
    for (const auto& [m, c] : p.terms()) {
      DMono d;
      d.e.assign(n_, 0);
      for (const auto& [v, e] : m.entries()) {
        if (!e.is_integer())
          throw DomainError("Groebner basis input has a fractional exponent; rescale first");
        d.e.at(v) = static_cast<std::int32_t>(e.num());
        d.deg += d.e[v];
      }
      g.terms.push_back({std::move(d), c});
    }
    sort(g);
    for (const auto& t : g.terms) g.sugar = std::max(g.sugar, t.first.deg);
    return g;
  }

  Polynomial<F> to_poly(const GPoly<F>& g) const {
    std::vector<typename Polynomial<F>::Term> terms;
    terms.reserve(g.terms.size());
    for (const auto& [d, c] : g.terms) {
      std::vector<Monomial::Entry> e;
      for (std::size_t i = 0; i < n_; ++i)
        if (d.e[i]) e.push_back({static_cast<std::uint32_t>(i), Exp(d.e[i])});
      terms.push_back({Monomial(std::move(e)), c});
    }
    return Polynomial<F>::from_terms(vars_, std::move(terms));
  }

  void sort(GPoly<F>& g) const {
    std::sort(g.terms.begin(), g.terms.end(),
              [&](const auto& a, const auto& b) { return compare(order_, a.first, b.first) > 0; });
  }

  void make_monic(GPoly<F>& g) const {
    if (g.is_zero()) return;
    F inv = CoeffOps<F>::inverse(g.terms.front().second);
    if (CoeffOps<F>::is_one(inv)) return;
    for (auto& t : g.terms) t.second = t.second * inv;
    g.terms.front().second = CoeffOps<F>::one();
  }

  // a - c*m*b, both sorted.
  GPoly<F> sub_mul(const GPoly<F>& a, const F& c, const DMono& m, const GPoly<F>& b) const {
    GPoly<F> r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    r.sugar = std::max(a.sugar, b.sugar + m.deg);
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
      int cmp;
      DMono bm;
      if (j < b.terms.size()) bm = b.terms[j].first * m;
      if (i == a.terms.size())
        cmp = -1;
      else if (j == b.terms.size())
        cmp = 1;
      else
        cmp = compare(order_, a.terms[i].first, bm);
      if (cmp > 0) {
        r.terms.push_back(a.terms[i++]);
      } else if (cmp < 0) {
        r.terms.push_back({std::move(bm), F(-(c * b.terms[j].second))});
        ++j;
      } else {
        F v = a.terms[i].second - c * b.terms[j].second;
        if (!CoeffOps<F>::is_zero(v)) r.terms.push_back({a.terms[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  // Full reduction of f modulo the (monic) polynomials in basis.
  GPoly<F> reduce(GPoly<F> f, const std::vector<const GPoly<F>*>& basis) const {
    GPoly<F> rest;
    rest.sugar = f.sugar;
    while (!f.is_zero()) {
      const auto& lt = f.terms.front();
      const GPoly<F>* div = nullptr;
      for (const GPoly<F>* g : basis) {
        if (g->lm().divides(lt.first)) {
          div = g;
          break;
        }
      }
      if (div) {
        F c = lt.second * CoeffOps<F>::inverse(div->terms.front().second);
        DMono m = lt.first / div->lm();
        f = sub_mul(f, c, m, *div);
      } else {
        rest.terms.push_back(std::move(f.terms.front()));
        f.terms.erase(f.terms.begin());
      }
      rest.sugar = std::max(rest.sugar, f.sugar);
    }
    return rest;
  }

  GPoly<F> spoly(const GPoly<F>& a, const GPoly<F>& b) const {
    DMono l = a.lm().lcm(b.lm());
    DMono ma = l / a.lm(), mb = l / b.lm();
    GPoly<F> left;
    left.sugar = a.sugar + ma.deg;
    for (const auto& t : a.terms) left.terms.push_back({t.first * ma, t.second});
    F c = a.terms.front().second * CoeffOps<F>::inverse(b.terms.front().second);
    return sub_mul(left, c, mb, b);
  }

  std::vector<GPoly<F>> buchberger(const std::vector<Polynomial<F>>& gens) const {
    struct Pair {
      std::size_t i, j;
      DMono lcm;
      std::int32_t sugar;
    };
    std::vector<GPoly<F>> pool;
    std::vector<std::size_t> active;
    std::vector<Pair> pairs;

    auto add = [&](GPoly<F> h) {
      make_monic(h);
      std::size_t hi = pool.size();
      pool.push_back(std::move(h));
      const DMono& lh = pool[hi].lm();
      // Gebauer-Moeller update.
      std::vector<Pair> c;
      for (std::size_t g : active) {
        DMono l = pool[g].lm().lcm(lh);
        std::int32_t s = std::max(pool[g].sugar + (l.deg - pool[g].lm().deg),
                                  pool[hi].sugar + (l.deg - lh.deg));
        c.push_back({g, hi, std::move(l), s});
      }
      std::vector<Pair> d;
      for (std::size_t k = 0; k < c.size(); ++k) {
        bool keep = pool[c[k].i].lm().coprime(lh);
        if (!keep) {
          bool dominated = false;
          for (std::size_t q = k + 1; q < c.size() && !dominated; ++q)
            dominated = c[q].lcm.divides(c[k].lcm);
          for (const Pair& p : d)
            dominated = dominated || p.lcm.divides(c[k].lcm);
          keep = !dominated;
        }
        if (keep) d.push_back(c[k]);
      }
      std::vector<Pair> kept;
      for (auto& p : pairs) {
        const DMono& l = p.lcm;
        bool drop = lh.divides(l) && !(pool[p.i].lm().lcm(lh) == l) && !(pool[p.j].lm().lcm(lh) == l);
        if (!drop) kept.push_back(std::move(p));
      }
      for (auto& p : d)
        if (!pool[p.i].lm().coprime(lh)) kept.push_back(std::move(p));
      pairs = std::move(kept);
      std::vector<std::size_t> next;
      for (std::size_t g : active)
        if (!lh.divides(pool[g].lm())) next.push_back(g);
      next.push_back(hi);
      active = std::move(next);
    };

    auto basis_ptrs = [&]() {
      std::vector<const GPoly<F>*> b;
      for (std::size_t g : active) b.push_back(&pool[g]);
      return b;
    };

    // Seed with inter-reduced inputs, lowest leading monomial first.
    std::vector<GPoly<F>> seeds;
    for (const auto& p : gens) {
      if (p.is_zero()) continue;
      seeds.push_back(from_poly(p));
    }
    std::sort(seeds.begin(), seeds.end(),
              [&](const GPoly<F>& a, const GPoly<F>& b) { return compare(order_, a.lm(), b.lm()) < 0; });
    for (auto& s : seeds) {
      GPoly<F> r = reduce(std::move(s), basis_ptrs());
      if (!r.is_zero()) add(std::move(r));
    }

    while (!pairs.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs.size(); ++k) {
        const Pair& a = pairs[k];
        const Pair& b = pairs[best];
        if (a.sugar < b.sugar || (a.sugar == b.sugar && compare(order_, a.lcm, b.lcm) < 0)) best = k;
      }
      Pair p = pairs[best];
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
      GPoly<F> s = spoly(pool[p.i], pool[p.j]);
      s.sugar = std::max(s.sugar, p.sugar);
      GPoly<F> r = reduce(std::move(s), basis_ptrs());
      if (!r.is_zero()) {
        if (r.lm().deg == 0) {  // unit ideal
          GPoly<F> one;
          one.terms.push_back({r.lm(), CoeffOps<F>::one()});
          return {one};
        }
        add(std::move(r));
      }
    }

    // Reduced basis.
    std::vector<GPoly<F>> g;
    for (std::size_t i : active) g.push_back(pool[i]);
    std::vector<GPoly<F>> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
        if (i == j) continue;
        if (g[j].lm().divides(g[i].lm()) && (!(g[j].lm() == g[i].lm()) || j < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(g[i]);
    }
    std::vector<GPoly<F>> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<const GPoly<F>*> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(&minimal[j]);
      GPoly<F> head;
      head.terms.push_back(minimal[i].terms.front());
      GPoly<F> tail = minimal[i];
      tail.terms.erase(tail.terms.begin());
      GPoly<F> rt = reduce(std::move(tail), others);
      for (auto& t : rt.terms) head.terms.push_back(std::move(t));
      make_monic(head);
      reduced.push_back(std::move(head));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const GPoly<F>& a, const GPoly<F>& b) { return compare(order_, a.lm(), b.lm()) > 0; });
    return reduced;
  }

  std::size_t nvars() const { return n_; }
  const MonomialOrder& order() const { return order_; }

private:
  VarTablePtr vars_;
  MonomialOrder order_;
  std::size_t n_ = 0;
};

}  // namespace gb_detail

// Reduced Groebner basis (monic, sorted by descending leading monomial).
template <class F>
std::vector<Polynomial<F>> buchberger(const VarTablePtr& vars, const std::vector<Polynomial<F>>& gens,
                                      const MonomialOrder& order) {
  gb_detail::Engine<F> eng(vars, order);
  std::vector<Polynomial<F>> rebased;
  for (const auto& g : gens) rebased.push_back(g.rebase(vars));
  std::vector<Polynomial<F>> out;
  for (const auto& g : eng.buchberger(rebased)) out.push_back(eng.to_poly(g));
  return out;
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const std::vector<Polynomial<F>>& basis,
                          const VarTablePtr& vars, const MonomialOrder& order) {
  gb_detail::Engine<F> eng(vars, order);
  std::vector<gb_detail::GPoly<F>> b;
  for (const auto& g : basis) b.push_back(eng.from_poly(g.rebase(vars)));
  std::vector<const gb_detail::GPoly<F>*> ptrs;
  for (const auto& g : b) ptrs.push_back(&g);
  return eng.to_poly(eng.reduce(eng.from_poly(f.rebase(vars)), ptrs));
}

// Finitely generated ideal with a lazily computed, cached reduced basis per
// order. Copies share the cache; the cache is filled under a mutex.
template <class F>
class Ideal {
public:
  using Poly = Polynomial<F>;

  Ideal() : cache_(std::make_shared<Cache>()) {}
  Ideal(VarTablePtr vars, std::vector<Poly> gens) : vars_(std::move(vars)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      if (!g.is_zero()) gens_.push_back(g.rebase(vars_));
    }
  }

  const VarTablePtr& vars() const { return vars_; }
  const std::vector<Poly>& generators() const { return gens_; }

  const std::vector<Poly>& groebner(const MonomialOrder& order = MonomialOrder::grevlex()) const {
    std::string key = order.key();
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->bases.find(key);
    if (it == cache_->bases.end()) it = cache_->bases.emplace(key, buchberger<F>(vars_, gens_, order)).first;
    return it->second;
  }

  Poly reduce(const Poly& f) const {
    return normal_form(f, groebner(), vars_, MonomialOrder::grevlex());
  }
  bool contains(const Poly& f) const { return reduce(f).is_zero(); }

  bool is_unit() const {
    const auto& g = groebner();
    return g.size() == 1 && g[0].is_constant();
  }
  bool is_zero_ideal() const { return gens_.empty(); }

  Ideal with_table(const VarTablePtr& t) const {
    std::vector<Poly> g;
    for (const auto& p : gens_) g.push_back(p.rebase(t));
    return Ideal(t, std::move(g));
  }

  Ideal plus(const std::vector<Poly>& extra) const {
    std::vector<Poly> g = gens_;
    for (const auto& p : extra) g.push_back(p.rebase(vars_));
    return Ideal(vars_, std::move(g));
  }

private:
  struct Cache {
    std::mutex mu;
    std::map<std::string, std::vector<Poly>> bases;
  };

  VarTablePtr vars_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

namespace gb_detail {

inline VarTablePtr with_fresh(const VarTablePtr& vars, const std::string& stem, std::size_t& idx) {
  std::string name = stem;
  for (int k = 0; vars && vars->find(name); ++k) name = stem + std::to_string(k);
  idx = vars ? vars->size() : 0;
  return vars ? vars->extend({{name, VarClass::Ordinary}}) : VarTable::make({{name, VarClass::Ordinary}});
}

}  // namespace gb_detail

template <class F>
bool ideal_member(const Polynomial<F>& f, const Ideal<F>& I) {
  return I.contains(f);
}

// f in sqrt(I) iff 1 in I + <1 - t f>.
template <class F>
bool radical_member(const Polynomial<F>& f, const Ideal<F>& I) {
  if (f.is_zero()) return true;
  if (I.contains(f)) return true;
  std::size_t t = 0;
  VarTablePtr ext = gb_detail::with_fresh(I.vars(), "_rad_t", t);
  using P = Polynomial<F>;
  std::vector<P> gens;
  for (const auto& g : I.generators()) gens.push_back(g.with_table(ext));
  gens.push_back(P::constant(CoeffOps<F>::one(), ext) - P::variable(ext, t) * f.rebase(ext));
  auto basis = buchberger<F>(ext, gens, MonomialOrder::grevlex());
  return basis.size() == 1 && basis[0].is_constant();
}

template <class F>
bool quotient_zero_test(const Polynomial<F>& f, const Ideal<F>& I) {
  return I.contains(f);
}

template <class F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<std::size_t>& drop) {
  if (drop.empty()) return I;
  std::size_t n = I.vars() ? I.vars()->size() : 0;
  MonomialOrder o = MonomialOrder::block_elim(n, drop);
  std::vector<Polynomial<F>> kept;
  for (const auto& g : I.groebner(o)) {
    bool uses = false;
    for (std::size_t v : drop) uses = uses || g.uses_var(v);
    if (!uses) kept.push_back(g);
  }
  return Ideal<F>(I.vars(), std::move(kept));
}

template <class F>
Ideal<F> ideal_intersect(const Ideal<F>& I, const Ideal<F>& J) {
  VarTablePtr vars = common_table(I.vars(), J.vars());
  if (I.is_zero_ideal() || J.is_zero_ideal()) return Ideal<F>(vars, {});
  std::size_t t = 0;
  VarTablePtr ext = gb_detail::with_fresh(vars, "_int_t", t);
  using P = Polynomial<F>;
  P tv = P::variable(ext, t);
  P one_minus = P::constant(CoeffOps<F>::one(), ext) - tv;
  std::vector<P> gens;
  for (const auto& g : I.generators()) gens.push_back(tv * g.rebase(ext));
  for (const auto& g : J.generators()) gens.push_back(one_minus * g.rebase(ext));
  Ideal<F> big(ext, std::move(gens));
  Ideal<F> e = eliminate(big, {t});
  std::vector<P> back;
  for (const auto& g : e.generators()) back.push_back(g.rebase(vars));
  return Ideal<F>(vars, std::move(back));
}

template <class F>
bool ideal_equal(const Ideal<F>& I, const Ideal<F>& J) {
  VarTablePtr vars = common_table(I.vars(), J.vars());
  const auto& a = I.groebner();
  const auto& b = J.groebner();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].rebase(vars) != b[i].rebase(vars)) return false;
  return true;
}

// Ideal of the finite point set (intersection of the maximal ideals).
template <class F>
Ideal<F> vanishing_ideal_of_points(const VarTablePtr& vars, const std::vector<std::vector<F>>& pts) {
  using P = Polynomial<F>;
  if (pts.empty()) return Ideal<F>(vars, {P::constant(CoeffOps<F>::one(), vars)});
  std::optional<Ideal<F>> acc;
  for (const auto& pt : pts) {
    if (pt.size() != vars->size()) throw StructuralError("point dimension mismatch");
    std::vector<P> gens;
    for (std::size_t i = 0; i < pt.size(); ++i) gens.push_back(P::variable(vars, i) - P::constant(pt[i], vars));
    Ideal<F> m(vars, std::move(gens));
    acc = acc ? ideal_intersect(*acc, m) : m;
  }
  return *acc;
}

}  // namespace pgz
