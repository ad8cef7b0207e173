#pragma once

#include <vector>

#include "pgz/automorphism.hpp"
#include "pgz/groebner.hpp"
#include "pgz/polymap.hpp"

namespace pgz {

template <class F>
struct Rescaled {
  std::vector<Polynomial<F>> polys;
  std::vector<std::int64_t> scale;  // per variable; 1 for unscaled variables
};

// Maps exponents e -> e*D (forward) or e -> e/D (undo).
template <class F>
Polynomial<F> apply_scale(const Polynomial<F>& p, const std::vector<std::int64_t>& scale, bool undo) {
  std::vector<typename Polynomial<F>::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Entry> e;
    for (const auto& [v, x] : m.entries()) {
      Exp d(v < scale.size() ? scale[v] : 1);
      e.push_back({v, undo ? x / d : x * d});
    }
    terms.push_back({Monomial(std::move(e)), c});
  }
  return Polynomial<F>::from_terms(p.vars(), std::move(terms));
}

// Multiplies every exponent of each Bar variable by the lcm D of its exponent
// denominators, so that all exponents become integers. The new variable stands
// for old^(1/D).
template <class F>
Rescaled<F> rescale_exponents(const std::vector<Polynomial<F>>& polys, const VarTablePtr& vars) {
  Rescaled<F> r;
  std::size_t n = vars ? vars->size() : 0;
  r.scale.assign(n, 1);
  for (const auto& p : polys) {
    Polynomial<F> q = p.rebase(vars);
    for (const auto& [m, c] : q.terms())
      for (const auto& [v, e] : m.entries()) r.scale[v] = lcm_checked(r.scale[v], e.den());
  }
  for (const auto& p : polys) r.polys.push_back(apply_scale(p.rebase(vars), r.scale, false));
  return r;
}

// Ideal over `ytable` whose variety is the Zariski closure of the image of
// V(I) under f. With alpha, I's coefficients are first mapped by alpha^-1.
inline Ideal<RatFunc> image_closure(const Ideal<RatFunc>& I, const PolyMap& f, const VarTablePtr& ytable,
                                    const FieldAutomorphism* alpha = nullptr) {
  if (f.dim() != ytable->size()) throw StructuralError("image_closure: output dimension mismatch");
  VarTablePtr x = f.slots;
  std::vector<VarEntry> all;
  for (std::size_t i = 0; i < x->size(); ++i) all.push_back(x->entry(i));
  for (std::size_t i = 0; i < ytable->size(); ++i) {
    if (x->find(ytable->name(i))) throw StructuralError("image_closure: slot and output names overlap");
    all.push_back(ytable->entry(i));
  }
  VarTablePtr xy = VarTable::make(all);
  std::vector<KPoly> gens;
  for (const auto& g : I.generators()) {
    KPoly h = alpha ? alpha->apply_inverse(g) : g;
    gens.push_back(h.rebase(xy));
  }
  for (std::size_t j = 0; j < f.dim(); ++j)
    gens.push_back(KPoly::variable(xy, x->size() + j) - f.outputs[j].rebase(xy));
  // Bar-variable exponents may be fractional: rescale before Buchberger.
  auto rs = rescale_exponents(gens, xy);
  std::vector<std::size_t> drop;
  for (std::size_t i = 0; i < x->size(); ++i) drop.push_back(i);
  Ideal<RatFunc> e = eliminate(Ideal<RatFunc>(xy, rs.polys), drop);
  std::vector<KPoly> out;
  for (const auto& g : e.generators()) out.push_back(apply_scale(g, rs.scale, true).rebase(ytable));
  return Ideal<RatFunc>(ytable, std::move(out));
}

}  // namespace pgz

namespace pgz {

// Membership tests against a fixed ideal whose generators may carry
// fractional bar exponents. The basis is computed once on rescaled
// generators; a query needing a finer scale triggers a rescaled copy.
class MembershipOracle {
public:
  MembershipOracle(VarTablePtr vars, std::vector<KPoly> gens) : vars_(std::move(vars)), gens_(std::move(gens)) {
    build({});
  }

  const VarTablePtr& vars() const { return vars_; }
  const std::vector<KPoly>& generators() const { return gens_; }

  bool contains(const KPoly& f) { return query(f, false); }
  bool radical_contains(const KPoly& f) { return query(f, true); }
  bool is_unit() { return ideal_->is_unit(); }

  // Adjusts the exponent scale so that the hint polynomials become integral.
  void rescale_for(const std::vector<KPoly>& hints) {
    std::vector<KPoly> h;
    for (const auto& f : hints) h.push_back(f.rebase(vars_));
    build(h);
  }

  // Normal form of f (scaled coordinates); used for linear algebra over
  // candidate invariants. Returns nullopt if f needs a finer scale.
  std::optional<KPoly> normal_form_scaled(const KPoly& f) const {
    KPoly g = apply_scale(f.rebase(vars_), scale_, false);
    if (!g.all_integer_exponents()) return std::nullopt;
    return ideal_->reduce(g);
  }

private:
  void build(const std::vector<KPoly>& extra) {
    std::vector<KPoly> all = gens_;
    all.insert(all.end(), extra.begin(), extra.end());
    auto rs = rescale_exponents(all, vars_);
    scale_ = rs.scale;
    rs.polys.resize(gens_.size());
    ideal_ = std::make_shared<Ideal<RatFunc>>(vars_, rs.polys);
  }

  bool query(const KPoly& f, bool radical) {
    KPoly g = apply_scale(f.rebase(vars_), scale_, false);
    if (!g.all_integer_exponents()) {
      build({f.rebase(vars_)});
      g = apply_scale(f.rebase(vars_), scale_, false);
    }
    if (ideal_->contains(g)) return true;
    return radical && radical_member(g, *ideal_);
  }

  VarTablePtr vars_;
  std::vector<KPoly> gens_;
  std::vector<std::int64_t> scale_;
  std::shared_ptr<Ideal<RatFunc>> ideal_;
};

}  // namespace pgz
