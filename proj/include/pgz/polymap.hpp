#pragma once

#include <string>
#include <vector>

#include "pgz/parse.hpp"
#include "pgz/polynomial.hpp"
#include "pgz/ratfunc.hpp"

namespace pgz {

// Polynomial function F^n -> F^k; outputs are written over the slot table.
template <class F>
struct PolyMapT {
  using Poly = Polynomial<F>;

  VarTablePtr slots;
  std::vector<Poly> outputs;

  PolyMapT() = default;
  PolyMapT(VarTablePtr s, std::vector<Poly> outs) : slots(std::move(s)) {
    for (auto& o : outs) outputs.push_back(o.rebase(slots));
  }

  std::size_t arity() const { return slots ? slots->size() : 0; }
  std::size_t dim() const { return outputs.size(); }

  static VarTablePtr slot_table(std::size_t n, const std::string& stem = "x") {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
    return VarTable::make_ordinary(names);
  }

  static PolyMapT identity(std::size_t n) {
    auto t = slot_table(n);
    std::vector<Poly> outs;
    for (std::size_t i = 0; i < n; ++i) outs.push_back(Poly::variable(t, i));
    return PolyMapT(t, std::move(outs));
  }

  // Substitutes args (polynomials over `target`) for the slots.
  std::vector<Poly> apply(const std::vector<Poly>& args, const VarTablePtr& target) const {
    if (args.size() != arity()) throw StructuralError("polymap arity mismatch");
    std::vector<std::optional<Poly>> images(arity());
    for (std::size_t i = 0; i < arity(); ++i) images[i] = args[i].rebase(target);
    std::vector<Poly> out;
    for (const auto& o : outputs) {
      out.push_back(substitute(o, images, target));
    }
    return out;
  }

  std::vector<F> evaluate(const std::vector<F>& point) const {
    if (point.size() != arity()) throw StructuralError("polymap arity mismatch");
    std::vector<F> out;
    for (const auto& o : outputs) out.push_back(pgz::evaluate(o, std::span<const F>(point)));
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < outputs.size(); ++i) s += (i ? ", " : "") + outputs[i].to_string();
    return s + ")";
  }
};

using QPolyMap = PolyMapT<Rat>;
using PolyMap = PolyMapT<RatFunc>;

// (f o g)(v) = f(g(v)).
template <class F>
PolyMapT<F> polymap_compose(const PolyMapT<F>& f, const PolyMapT<F>& g) {
  if (f.arity() != g.dim()) throw StructuralError("polymap_compose: arity mismatch");
  return PolyMapT<F>(g.slots, f.apply(g.outputs, g.slots));
}

// (x1, x2, y1, y2) -> (x1*y2 + y1, x2*y2)
inline PolyMap concat_map() {
  auto t = PolyMap::slot_table(4);
  using P = KPoly;
  P x1 = P::variable(t, 0), x2 = P::variable(t, 1), y1 = P::variable(t, 2), y2 = P::variable(t, 3);
  return PolyMap(t, {x1 * y2 + y1, x2 * y2});
}

}  // namespace pgz
