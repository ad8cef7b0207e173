#include <functional>
#include <set>
#include <thread>

#include "pgz/parse.hpp"
#include "pgz/zeroness.hpp"

namespace pgz {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::NonZero: return "NonZero";
    case Verdict::Unknown: break;
  }
  return "Unknown";
}

namespace {

template <class R>
struct Task {
  std::function<std::optional<R>(const StopToken&)> step;
  std::function<bool()> exhausted;
};

// First verdict wins; `prove` wins ties.
template <class R>
std::optional<R> interleave(Task<R>& refute, Task<R>& prove, Schedule s, const StopToken& stop) {
  if (s == Schedule::RoundRobin) {
    while (!stop.stop() && (!refute.exhausted() || !prove.exhausted())) {
      if (!refute.exhausted())
        if (auto r = refute.step(stop)) return r;
      if (stop.stop()) break;
      if (!prove.exhausted())
        if (auto r = prove.step(stop)) return r;
    }
    return std::nullopt;
  }
  std::atomic<bool> done{false};
  StopToken local = stop.with_cancel(&done);
  std::optional<R> refuted, proved;
  auto run = [&](Task<R>& t, std::optional<R>& out) {
    while (!local.stop() && !t.exhausted()) {
      if (auto r = t.step(local)) {
        out = std::move(r);
        done = true;
        return;
      }
    }
  };
  std::thread worker(run, std::ref(refute), std::ref(refuted));
  run(prove, proved);
  worker.join();
  if (proved) return proved;
  return refuted;
}

void require_productive(const Grammar& g) {
  if (!productive_nonterminals(g)[g.initial])
    throw EmptyLanguage("initial nonterminal " + g.start().name + " derives no value");
}

std::size_t sample_depth(const ZeroOptions& o) {
  return std::max<std::size_t>(1, std::min(o.closure.sample_size, o.budgets.size));
}

}  // namespace

ZeroResult zeroness(const Grammar& g, const ZeroOptions& o) {
  return zeroness(g, o, StopToken(o.budgets.seconds, o.cancel));
}

ZeroResult zeroness(const Grammar& g, const ZeroOptions& o, const StopToken& stop) {
  require_productive(g);
  ZeroResult res;
  for (const auto& c : o.certificates) {
    CertCheck ck;
    try {
      ck = check_certificate(g, c);
    } catch (const StructuralError& e) {
      ck = {CertVerdict::ClosureViolation, e.what()};
    }
    if (ck.ok()) {
      res.verdict = Verdict::Zero;
      res.certificate = c;
      res.method = "certificate";
      return res;
    }
    res.rejected.push_back(std::string(to_string(ck.verdict)) + ": " + ck.detail);
  }

  Enumerator en(g);
  bool enumerate = o.closure.ambient.empty() && o.budgets.size > 0;
  Task<ZeroResult> refute{
      [&](const StopToken& st) -> std::optional<ZeroResult> {
        if (!en.step(st)) return std::nullopt;
        for (const auto& e : en.layer(g.initial, en.size())) {
          if (is_zero_value(e.value)) continue;
          ZeroResult r;
          r.verdict = Verdict::NonZero;
          r.witness = Witness{e.value, e.deriv};
          r.method = "enumeration";
          return r;
        }
        return std::nullopt;
      },
      [&] { return !enumerate || en.size() >= o.budgets.size; }};

  ClosureOptions co = o.closure;
  co.sample_size = sample_depth(o);
  ClosureSearch cs(g, co);
  std::size_t iter = 0;
  Task<ZeroResult> prove{
      [&](const StopToken& st) -> std::optional<ZeroResult> {
        auto c = cs.attempt(++iter, st);
        if (!c) return std::nullopt;
        ZeroResult r;
        r.verdict = Verdict::Zero;
        r.certificate = std::move(c);
        r.method = "closure";
        return r;
      },
      [&] { return iter >= o.budgets.iters; }};

  if (auto r = interleave(refute, prove, o.schedule, stop)) {
    r->rejected = std::move(res.rejected);
    return *r;
  }
  return res;
}

void validate_chain(const GrammarChain& gs) {
  if (gs.empty()) throw StructuralError("empty grammar chain");
  for (const Grammar* g : gs) g->validate();
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
    const Grammar& h = *gs[i];
    const Grammar& t = *gs[i + 1];
    std::string at = "grammars " + std::to_string(i + 1) + " and " + std::to_string(i + 2);
    if (h.ring_vars.size() != t.start().dim)
      throw StructuralError(at + ": " + std::to_string(h.ring_vars.size()) + " ring variables but dimension " +
                            std::to_string(t.start().dim));
    VarTablePtr hc = h.coefficient_table(), tc = t.coefficient_table();
    for (std::size_t j = 0; tc && j < tc->size(); ++j)
      if (!hc || !hc->find(tc->name(j)))
        throw StructuralError(at + ": parameter " + tc->name(j) + " is not a coefficient parameter of the outer grammar");
  }
  if (gs.size() > 1 && !gs.back()->ring_vars.empty())
    throw StructuralError("the innermost grammar of a chain must not have ring variables");
}

Value chain_value(const GrammarChain& gs, const std::vector<const Value*>& vals) {
  Value v = *vals.back();
  for (std::size_t i = gs.size() - 1; i-- > 0;) {
    VarTablePtr coeff = gs[i]->coefficient_table();
    Value next;
    for (const auto& c : *vals[i]) next.push_back(substitute_ring(*gs[i], c, v, coeff));
    v = std::move(next);
  }
  return v;
}

Grammar invariant_grammar(const Grammar& head, const Grammar& next, const std::vector<KPoly>& invariant) {
  VarTablePtr slots = PolyMap::slot_table(next.start().dim);
  VarTablePtr ring = head.ring_table();
  std::vector<std::optional<KPoly>> images;
  for (std::size_t j = 0; j < slots->size(); ++j) images.push_back(KPoly::variable(slots, j));
  std::vector<KPoly> outs;
  for (const auto& f : invariant) {
    KPoly moved = substitute(f.rebase(ring), images, slots);
    outs.push_back(moved.map_coefficients<RatFunc>([&](const RatFunc& c) { return c.rebase(next.params); }));
  }
  return attach_polymap(PolyMap(slots, std::move(outs)), next, "Inv");
}

CertCheck check_chain_certificate(const GrammarChain& gs, const ChainCertificate& c) {
  validate_chain(gs);
  CertCheck ck = check_certificate(*gs[0], c.head);
  if (!ck.ok()) {
    ck.detail = gs[0]->start().name + ": " + ck.detail;
    return ck;
  }
  if (c.head.ambient.empty()) return ck;
  if (gs.size() == 1)
    return {CertVerdict::ConclusionViolation, "ambient ideal restricts the ring variables of a single grammar"};
  if (!c.tail) return {CertVerdict::ConclusionViolation, "no proof that the inner values lie in the ambient variety"};
  Grammar t;
  try {
    t = invariant_grammar(*gs[0], *gs[1], c.head.ambient);
  } catch (const StructuralError& e) {
    return {CertVerdict::ConclusionViolation, std::string("ambient ideal: ") + e.what()};
  }
  GrammarChain rest{&t};
  rest.insert(rest.end(), gs.begin() + 2, gs.end());
  CertCheck sub = check_chain_certificate(rest, *c.tail);
  if (!sub.ok()) sub.detail = "inner: " + sub.detail;
  return sub;
}

nlohmann::json chain_certificate_to_json(const GrammarChain& gs, const ChainCertificate& c) {
  nlohmann::json j;
  j["format"] = "pgz-chain-certificate/1";
  j["head"] = certificate_to_json(*gs.at(0), c.head);
  if (c.tail && gs.size() > 1) {
    Grammar t = invariant_grammar(*gs[0], *gs[1], c.head.ambient);
    GrammarChain rest{&t};
    rest.insert(rest.end(), gs.begin() + 2, gs.end());
    j["tail"] = chain_certificate_to_json(rest, *c.tail);
  } else {
    j["tail"] = nullptr;
  }
  return j;
}

ChainCertificate chain_certificate_from_json(const GrammarChain& gs, const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", std::string()) != "pgz-chain-certificate/1")
    throw StructuralError("not a pgz chain certificate (format field)");
  if (!j.contains("head")) throw StructuralError("malformed chain certificate: missing head");
  ChainCertificate c;
  c.head = certificate_from_json(*gs.at(0), j.at("head"));
  if (j.contains("tail") && !j.at("tail").is_null()) {
    if (gs.size() < 2) throw StructuralError("chain certificate is longer than the chain");
    Grammar t = invariant_grammar(*gs[0], *gs[1], c.head.ambient);
    GrammarChain rest{&t};
    rest.insert(rest.end(), gs.begin() + 2, gs.end());
    c.tail = std::make_shared<ChainCertificate>(chain_certificate_from_json(rest, j.at("tail")));
  }
  return c;
}

namespace {

constexpr std::size_t kPairCap = 200;     // enumerated values kept per grammar
constexpr std::size_t kTailSamples = 200;

// Calls fn on index tuples below `sizes`, skipping tuples below `old` in
// every coordinate. Stops when fn returns true.
template <class Fn>
bool for_new_tuples(const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& old, Fn&& fn) {
  std::size_t n = sizes.size();
  for (std::size_t s : sizes)
    if (s == 0) return false;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    bool fresh = false;
    for (std::size_t i = 0; i < n; ++i) fresh = fresh || idx[i] >= old[i];
    if (fresh && fn(idx)) return true;
    std::size_t k = n;
    while (k-- > 0) {
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) return false;
  }
}

std::string ideal_key(const std::vector<KPoly>& gens) {
  std::string k;
  for (const auto& f : gens) k += f.to_string() + ";";
  return k;
}

ChainResult chain_impl(const GrammarChain& gs, const ZeroOptions& o, const std::vector<ChainCertificate>& user,
                       const StopToken& stop) {
  for (const Grammar* g : gs) require_productive(*g);
  ChainResult res;
  for (const auto& u : user) {
    CertCheck ck;
    try {
      ck = check_chain_certificate(gs, u);
    } catch (const StructuralError& e) {
      ck = {CertVerdict::ClosureViolation, e.what()};
    }
    if (ck.ok()) {
      res.verdict = Verdict::Zero;
      res.certificate = u;
      res.method = "certificate";
      return res;
    }
    res.rejected.push_back(std::string(to_string(ck.verdict)) + ": " + ck.detail);
  }
  std::size_t n = gs.size();
  if (n == 1) {
    ZeroResult z = zeroness(*gs[0], o, stop);
    res.verdict = z.verdict;
    res.method = z.method;
    res.rejected.insert(res.rejected.end(), z.rejected.begin(), z.rejected.end());
    if (z.certificate) res.certificate = ChainCertificate{*z.certificate, nullptr};
    if (z.witness) res.witness = ChainWitness{{*z.witness}, z.witness->value};
    return res;
  }

  std::vector<std::unique_ptr<Enumerator>> ens;
  for (const Grammar* g : gs) ens.push_back(std::make_unique<Enumerator>(*g, kPairCap));
  std::vector<std::vector<Entry>> seen(n);
  Task<ChainResult> refute{
      [&](const StopToken& st) -> std::optional<ChainResult> {
        std::vector<std::size_t> old(n);
        for (std::size_t i = 0; i < n; ++i) {
          old[i] = seen[i].size();
          if (ens[i]->size() >= o.budgets.size) continue;
          if (!ens[i]->step(st)) return std::nullopt;
          for (const auto& e : ens[i]->layer(gs[i]->initial, ens[i]->size()))
            if (seen[i].size() < kPairCap) seen[i].push_back(e);
        }
        std::vector<std::size_t> sizes(n);
        for (std::size_t i = 0; i < n; ++i) sizes[i] = seen[i].size();
        std::optional<ChainResult> found;
        for_new_tuples(sizes, old, [&](const std::vector<std::size_t>& idx) {
          if (st.stop()) return true;
          std::vector<const Value*> vals;
          for (std::size_t i = 0; i < n; ++i) vals.push_back(&seen[i][idx[i]].value);
          Value v;
          try {
            v = chain_value(gs, vals);
          } catch (const DomainError&) {
            return false;
          }
          if (is_zero_value(v)) return false;
          ChainResult r;
          r.verdict = Verdict::NonZero;
          r.method = "enumeration";
          ChainWitness w;
          for (std::size_t i = 0; i < n; ++i) w.parts.push_back(Witness{seen[i][idx[i]].value, seen[i][idx[i]].deriv});
          w.value = std::move(v);
          r.witness = std::move(w);
          found = std::move(r);
          return true;
        });
        return found;
      },
      [&] {
        if (o.closure.ambient.size() || o.budgets.size == 0) return true;
        for (const auto& e : ens)
          if (e->size() < o.budgets.size) return false;
        return true;
      }};

  // Sampled values of A2(A3(...)) for guessing the invariant.
  GrammarChain tail(gs.begin() + 1, gs.end());
  std::vector<std::vector<RatFunc>> tail_pts;
  bool sampled = false;
  auto sample_tail = [&](const StopToken& st) {
    sampled = true;
    std::vector<std::vector<Entry>> vals;
    for (const Grammar* g : tail) {
      Enumerator en(*g, o.closure.sample_cap);
      while (en.size() < sample_depth(o) && en.count(g->initial) < o.closure.sample_cap && en.step(st)) {
      }
      vals.push_back(en.all(g->initial));
    }
    std::vector<std::size_t> sizes, old(tail.size(), 0);
    for (const auto& v : vals) sizes.push_back(v.size());
    std::set<std::string> keys;
    for_new_tuples(sizes, old, [&](const std::vector<std::size_t>& idx) {
      std::vector<const Value*> ptrs;
      for (std::size_t i = 0; i < idx.size(); ++i) ptrs.push_back(&vals[i][idx[i]].value);
      try {
        Value v = chain_value(tail, ptrs);
        if (keys.insert(value_key(v)).second) tail_pts.push_back(std::move(v));
      } catch (const DomainError&) {
      }
      return tail_pts.size() >= kTailSamples || st.stop();
    });
  };

  std::size_t iter = 0;
  std::set<std::string> tried;
  VarTablePtr ring = gs[0]->ring_table();
  VarTablePtr tail_coeff = gs[1]->coefficient_table();
  VarTablePtr head_coeff = gs[0]->coefficient_table();
  Task<ChainResult> prove{
      [&](const StopToken& st) -> std::optional<ChainResult> {
        if (!sampled) sample_tail(st);
        auto [d, e] = closure_degrees(++iter);
        auto lin = interpolate_vanishing(tail_pts, ring, tail_coeff, d, e, o.closure.max_unknowns, st);
        if (lin.empty() || st.stop()) return std::nullopt;
        std::vector<KPoly> inv;
        Ideal<RatFunc> span(ring, lin);
        for (const auto& f : span.groebner())
          inv.push_back(f.map_coefficients<RatFunc>([&](const RatFunc& c) { return c.rebase(head_coeff); }));
        if (!tried.insert(ideal_key(inv)).second) return std::nullopt;

        Grammar t = invariant_grammar(*gs[0], *gs[1], inv);
        GrammarChain rest{&t};
        rest.insert(rest.end(), gs.begin() + 2, gs.end());
        ZeroOptions so;
        so.budgets = o.budgets;
        so.closure.sample_size = o.closure.sample_size;
        so.closure.sample_cap = o.closure.sample_cap;
        so.closure.max_unknowns = o.closure.max_unknowns;
        ChainResult sub = chain_impl(rest, so, {}, st);
        if (sub.verdict != Verdict::Zero) return std::nullopt;

        ClosureOptions co = o.closure;
        co.ambient = inv;
        co.ring_points = tail_pts;
        co.sample_size = sample_depth(o);
        auto cert = forward_closure(*gs[0], o.budgets.iters, st, co);
        if (!cert) return std::nullopt;
        ChainResult r;
        r.verdict = Verdict::Zero;
        r.method = "invariant";
        r.certificate = ChainCertificate{std::move(*cert), std::make_shared<ChainCertificate>(*sub.certificate)};
        return r;
      },
      [&] { return iter >= o.budgets.iters; }};

  if (auto r = interleave(refute, prove, o.schedule, stop)) {
    r->rejected = std::move(res.rejected);
    return *r;
  }
  return res;
}

}  // namespace

ChainResult chain_zeroness(const GrammarChain& gs, const ZeroOptions& o, const std::vector<ChainCertificate>& user) {
  validate_chain(gs);
  return chain_impl(gs, o, user, StopToken(o.budgets.seconds, o.cancel));
}

ChainResult indep_zeroness(const Grammar& a, const Grammar& b, const ZeroOptions& o,
                           const std::vector<ChainCertificate>& user) {
  return chain_zeroness({&a, &b}, o, user);
}

}  // namespace pgz
