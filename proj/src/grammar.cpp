#include "pgz/grammar.hpp"

#include <algorithm>

namespace pgz {

std::optional<std::size_t> Grammar::find(const std::string& name) const {
  for (std::size_t i = 0; i < nonterminals.size(); ++i)
    if (nonterminals[i].name == name) return i;
  return std::nullopt;
}

std::size_t Grammar::index(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw StructuralError("unknown nonterminal " + name);
}

std::size_t Grammar::add_nonterminal(const std::string& name, std::size_t dim) {
  if (find(name)) throw StructuralError("duplicate nonterminal " + name);
  nonterminals.push_back({name, dim});
  return nonterminals.size() - 1;
}

void Grammar::validate() const {
  if (nonterminals.empty()) throw StructuralError("grammar has no nonterminals");
  if (initial >= nonterminals.size()) throw StructuralError("initial nonterminal out of range");
  for (const auto& r : ring_vars)
    if (!params || !params->find(r)) throw StructuralError("ring variable " + r + " is not a parameter");
  for (const auto& p : productions) {
    const auto& lhs = nonterminals.at(p.lhs);
    std::size_t in = 0;
    for (std::size_t r : p.rhs) in += nonterminals.at(r).dim;
    if (p.map.arity() != in)
      throw StructuralError("production for " + lhs.name + ": map arity " + std::to_string(p.map.arity()) +
                            " does not match rhs dimension " + std::to_string(in));
    if (p.map.dim() != lhs.dim)
      throw StructuralError("production for " + lhs.name + ": map output dimension " +
                            std::to_string(p.map.dim()) + " does not match " + std::to_string(lhs.dim));
    if (p.twist && !ring_vars.empty())
      throw StructuralError("twisted productions are not supported in grammars with ring variables");
  }
}

VarTablePtr Grammar::coefficient_table() const {
  std::vector<VarEntry> e;
  for (std::size_t i = 0; params && i < params->size(); ++i)
    if (std::find(ring_vars.begin(), ring_vars.end(), params->name(i)) == ring_vars.end())
      e.push_back(params->entry(i));
  return VarTable::make(e);
}

VarTablePtr Grammar::ring_table() const {
  std::vector<VarEntry> e;
  for (const auto& r : ring_vars) e.push_back(params->entry(params->index(r)));
  return VarTable::make(e);
}

std::vector<bool> productive_nonterminals(const Grammar& g) {
  std::vector<bool> prod(g.nonterminals.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (prod[p.lhs]) continue;
      if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](std::size_t r) { return prod[r]; })) {
        prod[p.lhs] = true;
        changed = true;
      }
    }
  }
  return prod;
}

Value apply_production(const Grammar& g, const Production& p, const std::vector<const Value*>& kids) {
  std::vector<RatFunc> args;
  for (const Value* v : kids)
    for (const auto& c : *v) args.push_back(p.twist ? p.twist->apply(c) : c);
  Value out;
  out.reserve(p.map.dim());
  for (const auto& o : p.map.outputs) {
    RatFunc acc = evaluate(o, std::span<const RatFunc>(args));
    out.push_back(acc.is_constant() ? acc : acc.rebase(g.params));
  }
  return out;
}

Grammar attach_polymap(const PolyMap& f, const Grammar& g, const std::string& name) {
  if (f.arity() != g.start().dim) throw StructuralError("attach_polymap: arity mismatch");
  Grammar h = g;
  std::string fresh = name;
  for (int k = 0; h.find(fresh); ++k) fresh = name + std::to_string(k);
  std::size_t s = h.add_nonterminal(fresh, f.dim());
  Production p;
  p.lhs = s;
  p.label = "f";
  p.map = f;
  p.rhs = {g.initial};
  h.productions.push_back(std::move(p));
  h.initial = s;
  return h;
}

Value replay(const Grammar& g, const Derivation& d) {
  const Production& p = g.productions.at(d.production);
  std::vector<Value> kids;
  for (const auto& c : d.children) kids.push_back(replay(g, *c));
  std::vector<const Value*> ptrs;
  for (const auto& k : kids) ptrs.push_back(&k);
  return apply_production(g, p, ptrs);
}

std::string derivation_to_string(const Grammar& g, const Derivation& d) {
  const Production& p = g.productions.at(d.production);
  std::string s = g.nonterminals[p.lhs].name + "#" + std::to_string(d.production);
  if (d.children.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < d.children.size(); ++i)
    s += (i ? ", " : "") + derivation_to_string(g, *d.children[i]);
  return s + ")";
}

StopToken::StopToken(double seconds, const std::atomic<bool>* cancel) : cancel_(cancel) {
  if (seconds > 0)
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
}

bool StopToken::stop() const {
  if (cancel_ && cancel_->load(std::memory_order_relaxed)) return true;
  if (extra_ && extra_->load(std::memory_order_relaxed)) return true;
  return deadline_ && std::chrono::steady_clock::now() >= *deadline_;
}

StopToken StopToken::with_cancel(const std::atomic<bool>* extra) const {
  StopToken t = *this;
  if (t.extra_) throw StructuralError("StopToken: only one extra cancel flag");
  t.extra_ = extra;
  return t;
}

std::string value_key(const Value& v) {
  std::string k;
  for (const auto& c : v) k += c.to_string() + ";";
  return k;
}

bool is_zero_value(const Value& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& c) { return c.is_zero(); });
}

Enumerator::Enumerator(const Grammar& g, std::size_t cap) : g_(g), cap_(cap) {
  layers_.assign(g.nonterminals.size(), std::vector<std::vector<Entry>>(1));
  seen_.assign(g.nonterminals.size(), {});
}

void Enumerator::combine(std::size_t prod, std::size_t k, std::size_t remaining, std::vector<const Entry*>& pick,
                         std::vector<Entry>& out, const StopToken& stop, bool& stopped) {
  if (stopped) return;
  const Production& p = g_.productions[prod];
  std::size_t left = p.rhs.size() - k;
  if (left == 0) {
    if (remaining != 0) return;
    std::vector<const Value*> vals;
    auto d = std::make_shared<Derivation>();
    d->production = prod;
    for (const Entry* e : pick) {
      vals.push_back(&e->value);
      d->children.push_back(e->deriv);
      d->size += e->deriv->size;
    }
    Value v = apply_production(g_, p, vals);
    if (full(p.lhs)) return;
    if (seen_[p.lhs].insert(value_key(v)).second) out.push_back({std::move(v), std::move(d)});
    if (stop.stop()) stopped = true;
    return;
  }
  std::size_t child = p.rhs[k];
  for (std::size_t s = 1; s + (left - 1) <= remaining; ++s) {
    if (s >= layers_[child].size()) break;
    if (left == 1 && s != remaining) continue;
    for (const Entry& e : layers_[child][s]) {
      pick.push_back(&e);
      combine(prod, k + 1, remaining - s, pick, out, stop, stopped);
      pick.pop_back();
      if (stopped || full(p.lhs)) return;
    }
  }
}

bool Enumerator::step(const StopToken& stop) {
  std::size_t s = size_ + 1;
  std::vector<std::vector<Entry>> next(g_.nonterminals.size());
  bool stopped = false;
  for (std::size_t i = 0; i < g_.productions.size() && !stopped; ++i) {
    const Production& p = g_.productions[i];
    if (full(p.lhs)) continue;
    if (p.rhs.empty()) {
      if (s != 1) continue;
      Value v = apply_production(g_, p, {});
      auto d = std::make_shared<Derivation>();
      d->production = i;
      if (seen_[p.lhs].insert(value_key(v)).second) next[p.lhs].push_back({std::move(v), std::move(d)});
      continue;
    }
    std::vector<const Entry*> pick;
    combine(i, 0, s - 1, pick, next[p.lhs], stop, stopped);
  }
  for (std::size_t n = 0; n < next.size(); ++n) layers_[n].push_back(std::move(next[n]));
  size_ = s;
  return !stopped;
}

std::vector<Entry> Enumerator::all(std::size_t nt) const {
  std::vector<Entry> out;
  for (const auto& l : layers_.at(nt))
    for (const auto& e : l) out.push_back(e);
  return out;
}

std::vector<Entry> enumerate_values(const Grammar& g, std::size_t max_size, const StopToken& stop) {
  Enumerator en(g);
  while (en.size() < max_size && en.step(stop)) {
  }
  return en.all(g.initial);
}

std::optional<Witness> nonzero_search(const Grammar& g, std::size_t max_size, const StopToken& stop) {
  Enumerator en(g);
  while (en.size() < max_size) {
    bool done = en.step(stop);
    for (const auto& e : en.layer(g.initial, en.size()))
      if (!is_zero_value(e.value)) return Witness{e.value, e.deriv};
    if (!done) break;
  }
  return std::nullopt;
}

}  // namespace pgz
