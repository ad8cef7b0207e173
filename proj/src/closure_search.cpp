#include <map>

#include "pgz/linalg.hpp"
#include "pgz/parse.hpp"
#include "pgz/zeroness.hpp"

namespace pgz {

std::pair<std::size_t, std::size_t> closure_degrees(std::size_t i) {
  static const std::pair<std::size_t, std::size_t> table[] = {{1, 1}, {2, 1}, {1, 2}, {2, 2},
                                                              {3, 1}, {3, 2}, {4, 2}, {4, 3}};
  if (i >= 1 && i <= 8) return table[i - 1];
  return {i / 2, i / 2};
}

namespace {

using ExpVec = std::vector<unsigned>;

void exponent_vectors_rec(std::size_t n, std::size_t left, ExpVec& cur, std::vector<ExpVec>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t e = 0; e <= left; ++e) {
    cur.push_back(static_cast<unsigned>(e));
    exponent_vectors_rec(n, left - e, cur, out);
    cur.pop_back();
  }
}

std::vector<ExpVec> exponent_vectors(std::size_t n, std::size_t maxdeg) {
  std::vector<ExpVec> out;
  ExpVec cur;
  exponent_vectors_rec(n, maxdeg, cur, out);
  std::stable_sort(out.begin(), out.end(), [](const ExpVec& a, const ExpVec& b) {
    unsigned da = 0, db = 0;
    for (unsigned x : a) da += x;
    for (unsigned x : b) db += x;
    return da < db;
  });
  return out;
}

Monomial to_monomial(const ExpVec& e) {
  std::vector<Monomial::Entry> m;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) m.push_back({static_cast<std::uint32_t>(i), Exp(e[i])});
  return Monomial(std::move(m));
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.lex_compare(b) < 0; }
};

struct PairLess {
  bool operator()(const std::pair<Monomial, Monomial>& a, const std::pair<Monomial, Monomial>& b) const {
    int c = a.first.lex_compare(b.first);
    if (c) return c < 0;
    return a.second.lex_compare(b.second) < 0;
  }
};

// Incrementally maintained independent rows over Q.
class RowSpace {
public:
  explicit RowSpace(std::size_t ncols) : n_(ncols) {}

  bool insert(std::vector<Rat> r) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::size_t pc = pivots_[k];
      if (sgn(r[pc]) == 0) continue;
      Rat f = r[pc];
      const auto& row = rows_[k];
      for (std::size_t c = pc; c < n_; ++c)
        if (sgn(row[c]) != 0) r[c] -= f * row[c];
    }
    std::size_t pc = 0;
    while (pc < n_ && sgn(r[pc]) == 0) ++pc;
    if (pc == n_) return false;
    Rat inv = 1 / r[pc];
    for (std::size_t c = pc; c < n_; ++c) r[c] *= inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(pc);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  Matrix<Rat> rows() const { return rows_; }

private:
  std::size_t n_;
  Matrix<Rat> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

RatFunc substitute_ring(const Grammar& g, const RatFunc& v, const std::vector<RatFunc>& x,
                        const VarTablePtr& coeff) {
  if (v.is_constant()) return v;
  std::vector<std::optional<RatFunc>> images;
  for (std::size_t i = 0; i < g.params->size(); ++i) {
    const std::string& name = g.params->name(i);
    auto r = std::find(g.ring_vars.begin(), g.ring_vars.end(), name);
    if (r != g.ring_vars.end())
      images.push_back(x.at(static_cast<std::size_t>(r - g.ring_vars.begin())).rebase(coeff));
    else
      images.push_back(RatFunc(QPoly::variable(coeff, coeff->index(name))));
  }
  return substitute(v.rebase(g.params), images, coeff);
}

namespace {

// Q-basis of {c : sum_j c_j v_j = 0} for polynomial vectors over Q(coeff).
std::optional<Matrix<Rat>> rational_relations(const std::vector<KPoly>& v, const VarTablePtr& coeff) {
  std::vector<QPoly> dens;
  for (const auto& p : v)
    for (const auto& [m, c] : p.terms()) {
      QPoly d = c.den().rebase(coeff);
      if (std::find(dens.begin(), dens.end(), d) == dens.end()) dens.push_back(d);
    }
  QPoly l = QPoly::constant(Rat(1), coeff);
  for (const auto& d : dens) l = l * d;
  std::map<std::pair<Monomial, Monomial>, std::vector<Rat>, PairLess> eqs;
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (const auto& [m, c] : v[j].terms()) {
      auto q = exact_divide(l, c.den().rebase(coeff));
      if (!q) return std::nullopt;
      QPoly scaled = c.num().rebase(coeff) * *q;
      for (const auto& [nu, r] : scaled.terms()) {
        auto& row = eqs[{m, nu}];
        if (row.empty()) row.assign(v.size(), Rat(0));
        row[j] += r;
      }
    }
  }
  Matrix<Rat> rows;
  for (auto& [k, r] : eqs) rows.push_back(std::move(r));
  return nullspace(rows, v.size());
}

}  // namespace

ClosureSearch::ClosureSearch(const Grammar& g, ClosureOptions opts) : g_(g), opts_(std::move(opts)) {
  coeff_ = g_.coefficient_table();
  productive_ = productive_nonterminals(g_);
  std::string stem = "y";
  while (g_.params && (g_.params->find(stem + "1") || g_.params->find(stem + "2"))) stem = "_" + stem;
  for (const auto& nt : g_.nonterminals) {
    coords_.push_back(default_coords(nt.dim, stem));
    frames_.push_back(frame_table(g_, coords_.back()));
  }
}

void ClosureSearch::ensure_samples(const StopToken& stop) {
  if (sampled_) return;
  sampled_ = true;
  std::size_t nn = g_.nonterminals.size();
  Enumerator en(g_, opts_.sample_cap);
  while (en.size() < opts_.sample_size && !stop.stop()) {
    if (!en.step(stop)) break;
    bool all_full = true;
    for (std::size_t n = 0; n < nn; ++n)
      if (productive_[n] && en.count(n) < opts_.sample_cap) all_full = false;
    if (all_full) break;
  }
  std::vector<std::vector<RatFunc>> xs = opts_.ring_points;
  std::size_t nr = g_.ring_vars.size();
  if (nr == 0) {
    xs = {{}};
  } else if (xs.empty()) {
    for (long i = 0; i < 6; ++i) {
      std::vector<RatFunc> x;
      for (std::size_t j = 0; j < nr; ++j) x.emplace_back(i + 2 * static_cast<long>(j) + 2);
      xs.push_back(x);
    }
  }
  samples_.assign(nn, {});
  std::size_t limit = opts_.sample_cap * std::max<std::size_t>(1, std::min<std::size_t>(xs.size(), 4));
  for (std::size_t n = 0; n < nn; ++n) {
    for (const auto& e : en.all(n)) {
      for (const auto& x : xs) {
        if (samples_[n].size() >= limit) break;
        try {
          std::vector<RatFunc> pt = x;
          for (const auto& c : e.value) pt.push_back(substitute_ring(g_, c, x, coeff_));
          samples_[n].push_back(std::move(pt));
        } catch (const DomainError&) {
          // pole at this ring point
        }
      }
    }
  }
}

std::vector<KPoly> ClosureSearch::interpolate(std::size_t nt, std::size_t d, std::size_t e, const StopToken& stop) {
  return interpolate_vanishing(samples_[nt], frames_[nt], coeff_, d, e, opts_.max_unknowns, stop);
}

std::vector<KPoly> interpolate_vanishing(const std::vector<std::vector<RatFunc>>& samples, const VarTablePtr& frame,
                                         const VarTablePtr& coeff_, std::size_t d, std::size_t e,
                                         std::size_t max_unknowns, const StopToken& stop) {
  std::size_t nf = frame->size();
  auto fm = exponent_vectors(nf, d);
  auto pm = exponent_vectors(coeff_->size(), e);
  std::size_t u = fm.size() * pm.size();
  if (u > max_unknowns || samples.empty()) return {};
  std::vector<Monomial> pmono;
  for (const auto& v : pm) pmono.push_back(to_monomial(v));

  RowSpace space(u);
  std::size_t stale = 0, processed = 0;
  for (const auto& s : samples) {
    if (stop.stop()) return {};
    std::vector<std::vector<QPoly>> npow(nf), dpow(nf);
    for (std::size_t i = 0; i < nf; ++i) {
      QPoly num = s[i].num().rebase(coeff_), den = s[i].den().rebase(coeff_);
      npow[i].push_back(QPoly::constant(Rat(1), coeff_));
      dpow[i].push_back(QPoly::constant(Rat(1), coeff_));
      for (std::size_t k = 1; k <= d; ++k) {
        npow[i].push_back(npow[i].back() * num);
        dpow[i].push_back(dpow[i].back() * den);
      }
    }
    std::map<Monomial, std::vector<Rat>, MonoLess> eqs;
    for (std::size_t a = 0; a < fm.size(); ++a) {
      QPoly poly = QPoly::constant(Rat(1), coeff_);
      for (std::size_t i = 0; i < nf; ++i) poly = poly * npow[i][fm[a][i]] * dpow[i][d - fm[a][i]];
      for (std::size_t b = 0; b < pm.size(); ++b) {
        for (const auto& [nu, q] : poly.terms()) {
          auto& row = eqs[pmono[b] * nu];
          if (row.empty()) row.assign(u, Rat(0));
          row[a * pm.size() + b] += q;
        }
      }
    }
    bool added = false;
    for (auto& [k, r] : eqs) added = space.insert(std::move(r)) || added;
    ++processed;
    stale = added ? 0 : stale + 1;
    if (space.rank() == u) return {};
    if (stale >= 6 && processed >= 8) break;
  }

  std::vector<KPoly> out;
  for (const auto& v : nullspace(space.rows(), u)) {
    std::vector<KPoly::Term> terms;
    for (std::size_t a = 0; a < fm.size(); ++a) {
      QPoly c(coeff_);
      for (std::size_t b = 0; b < pm.size(); ++b)
        if (sgn(v[a * pm.size() + b]) != 0) c += QPoly::monomial(coeff_, pmono[b], v[a * pm.size() + b]);
      if (!c.is_zero()) terms.push_back({to_monomial(fm[a]), RatFunc(c)});
    }
    out.push_back(KPoly::from_terms(frame, std::move(terms)));
  }
  return out;
}

void ClosureSearch::refine(std::vector<std::vector<KPoly>>& basis, const StopToken& stop) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g_.productions) {
      if (stop.stop()) return;
      bool live = productive_[p.lhs];
      for (std::size_t r : p.rhs) live = live && productive_[r];
      auto& b = basis[p.lhs];
      if (!live || b.empty()) continue;
      auto pf = cert_detail::production_frame(g_, p);
      std::vector<KPoly> j;
      for (const auto& a : opts_.ambient) j.push_back(a.rebase(pf.table));
      for (std::size_t c = 0; c < p.rhs.size(); ++c) {
        NtIdeal child{coords_[p.rhs[c]], basis[p.rhs[c]]};
        for (auto& f : cert_detail::move_ideal(g_, child, pf.table, pf.child_offset[c])) j.push_back(std::move(f));
      }
      MembershipOracle oracle(pf.table, j);
      std::vector<KPoly> h;
      for (const auto& f : b) {
        KPoly x = substitute(f.rebase(frames_[p.lhs]), pf.images, pf.table);
        h.push_back(p.twist ? p.twist->apply_inverse(x) : x);
      }
      std::vector<KPoly> nf;
      for (const auto& x : h) {
        auto r = oracle.normal_form_scaled(x);
        if (!r) {
          oracle.rescale_for(h);
          nf.clear();
          for (const auto& y : h) nf.push_back(*oracle.normal_form_scaled(y));
          break;
        }
        nf.push_back(*r);
      }
      auto rel = rational_relations(nf, coeff_);
      if (!rel) {
        b.clear();
        changed = true;
        continue;
      }
      if (rel->size() == b.size()) continue;
      std::vector<KPoly> next;
      for (const auto& c : *rel) {
        KPoly acc(frames_[p.lhs]);
        for (std::size_t k = 0; k < c.size(); ++k)
          if (sgn(c[k]) != 0) acc += b[k].scale(RatFunc(c[k]));
        next.push_back(acc);
      }
      b = std::move(next);
      changed = true;
    }
  }
}

Certificate ClosureSearch::to_certificate(const std::vector<std::vector<KPoly>>& basis) const {
  Certificate c;
  c.ambient = opts_.ambient;
  for (std::size_t n = 0; n < g_.nonterminals.size(); ++n)
    c.ideals[g_.nonterminals[n].name] = NtIdeal{coords_[n], basis[n]};
  return c;
}

std::optional<Certificate> ClosureSearch::attempt(std::size_t iteration, const StopToken& stop) {
  if (!productive_[g_.initial]) return std::nullopt;
  ensure_samples(stop);
  auto [d, e] = closure_degrees(iteration);
  std::vector<std::vector<KPoly>> basis(g_.nonterminals.size());
  for (std::size_t n = 0; n < basis.size(); ++n) {
    if (stop.stop()) return std::nullopt;
    if (productive_[n]) basis[n] = interpolate(n, d, e, stop);
  }
  if (basis[g_.initial].empty()) return std::nullopt;
  refine(basis, stop);
  if (stop.stop() || basis[g_.initial].empty()) return std::nullopt;
  Certificate c = to_certificate(basis);
  if (!check_certificate(g_, c).ok()) return std::nullopt;
  return c;
}

std::optional<Certificate> forward_closure(const Grammar& g, std::size_t max_iters, const StopToken& stop,
                                           const ClosureOptions& opts) {
  ClosureSearch cs(g, opts);
  for (std::size_t i = 1; i <= max_iters && !stop.stop(); ++i)
    if (auto c = cs.attempt(i, stop)) return c;
  return std::nullopt;
}

}  // namespace pgz
