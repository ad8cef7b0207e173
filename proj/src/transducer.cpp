#include "pgz/transducer.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace pgz {

RegExpr RegExpr::of_letter(char c) {
  RegExpr e;
  e.kind = Kind::Letter;
  e.letter = c;
  return e;
}

RegExpr RegExpr::of_reg(std::size_t r) {
  RegExpr e;
  e.kind = Kind::Reg;
  e.reg = r;
  return e;
}

RegExpr RegExpr::word(const std::string& w) {
  std::vector<RegExpr> parts;
  for (char c : w) parts.push_back(of_letter(c));
  return concat(std::move(parts));
}

RegExpr RegExpr::concat(std::vector<RegExpr> parts) {
  std::vector<RegExpr> flat;
  for (auto& p : parts) {
    if (p.kind == Kind::Empty) continue;
    if (p.kind == Kind::Concat)
      for (auto& q : p.parts) flat.push_back(std::move(q));
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) return empty();
  if (flat.size() == 1) return std::move(flat[0]);
  RegExpr e;
  e.kind = Kind::Concat;
  e.parts = std::move(flat);
  return e;
}

RegExpr RegExpr::subst(RegExpr target, std::string letters, std::vector<RegExpr> replacements) {
  if (letters.size() != replacements.size()) throw StructuralError("subst: letters and replacements differ in number");
  RegExpr e;
  e.kind = Kind::Subst;
  e.letters = std::move(letters);
  e.parts.push_back(std::move(target));
  for (auto& r : replacements) e.parts.push_back(std::move(r));
  return e;
}

std::size_t Transducer::reg_index(const std::string& name) const {
  auto it = std::find(registers.begin(), registers.end(), name);
  if (it == registers.end()) throw StructuralError("unknown register " + name);
  return static_cast<std::size_t>(it - registers.begin());
}

std::size_t Transducer::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw StructuralError("unknown state " + name);
  return static_cast<std::size_t>(it - states.begin());
}

namespace {

void check_expr(const Transducer& t, const RegExpr& e) {
  switch (e.kind) {
    case RegExpr::Kind::Empty: return;
    case RegExpr::Kind::Letter:
      if (t.alphabet.find(e.letter) == std::string::npos)
        throw StructuralError(std::string("letter '") + e.letter + "' is not in the alphabet");
      return;
    case RegExpr::Kind::Reg:
      if (e.reg >= t.registers.size()) throw StructuralError("register index out of range");
      return;
    case RegExpr::Kind::Subst:
      for (char c : e.letters)
        if (t.alphabet.find(c) == std::string::npos)
          throw StructuralError(std::string("substituted letter '") + c + "' is not in the alphabet");
      [[fallthrough]];
    case RegExpr::Kind::Concat:
      for (const auto& p : e.parts) check_expr(t, p);
  }
}

}  // namespace

void Transducer::validate() const {
  if (states.empty()) throw StructuralError("transducer has no states");
  if (initial >= states.size()) throw StructuralError("initial state out of range");
  if (accepting.size() != states.size() || output.size() != states.size())
    throw StructuralError("acceptance table size mismatch");
  if (init.size() != registers.size()) throw StructuralError("register initial values missing");
  for (const auto& w : init)
    for (char c : w)
      if (alphabet.find(c) == std::string::npos)
        throw StructuralError(std::string("initial value uses letter '") + c + "' outside the alphabet");
  for (char c : input)
    if (alphabet.find(c) == std::string::npos)
      throw StructuralError(std::string("input letter '") + c + "' is not in the alphabet");
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (accepting[q] != output[q].has_value())
      throw StructuralError("state " + states[q] + (accepting[q] ? " is accepting but has no output"
                                                                  : " has an output but is not accepting"));
    if (output[q]) check_expr(*this, *output[q]);
    for (char c : input) {
      auto it = delta.find({q, c});
      if (it == delta.end())
        throw StructuralError("no transition from " + states[q] + " on '" + std::string(1, c) + "'");
      if (it->second.to >= states.size()) throw StructuralError("transition target out of range");
      if (it->second.updates.size() != registers.size()) throw StructuralError("transition update count mismatch");
      for (const auto& u : it->second.updates) check_expr(*this, u);
    }
  }
  for (const auto& [key, tr] : delta)
    if (input.find(key.second) == std::string::npos)
      throw StructuralError("transition on '" + std::string(1, key.second) + "' which is not an input letter");
}

std::string eval_expr(const RegExpr& e, const std::vector<std::string>& regs) {
  switch (e.kind) {
    case RegExpr::Kind::Empty: return {};
    case RegExpr::Kind::Letter: return std::string(1, e.letter);
    case RegExpr::Kind::Reg: return regs.at(e.reg);
    case RegExpr::Kind::Concat: {
      std::string s;
      for (const auto& p : e.parts) s += eval_expr(p, regs);
      return s;
    }
    case RegExpr::Kind::Subst: {
      WordSubst p;
      for (std::size_t i = 0; i < e.letters.size(); ++i) p[e.letters[i]] = eval_expr(e.parts[i + 1], regs);
      return apply_subst(p, eval_expr(e.parts[0], regs));
    }
  }
  return {};
}

std::optional<std::string> run(const Transducer& t, const std::string& w) {
  std::size_t q = t.initial;
  std::vector<std::string> regs = t.init;
  for (char c : w) {
    auto it = t.delta.find({q, c});
    if (it == t.delta.end()) throw StructuralError("'" + std::string(1, c) + "' is not an input letter");
    std::vector<std::string> next;
    next.reserve(regs.size());
    for (const auto& u : it->second.updates) next.push_back(eval_expr(u, regs));
    regs = std::move(next);
    q = it->second.to;
  }
  if (!t.accepting[q]) return std::nullopt;
  return eval_expr(*t.output[q], regs);
}

std::string expr_to_string(const Transducer& t, const RegExpr& e) {
  switch (e.kind) {
    case RegExpr::Kind::Empty: return "eps";
    case RegExpr::Kind::Letter: return "'" + std::string(1, e.letter) + "'";
    case RegExpr::Kind::Reg: return t.registers.at(e.reg);
    case RegExpr::Kind::Concat: {
      std::string s;
      for (std::size_t i = 0; i < e.parts.size(); ++i) {
        bool wrap = e.parts[i].kind == RegExpr::Kind::Concat;
        s += (i ? " . " : "") + std::string(wrap ? "(" : "") + expr_to_string(t, e.parts[i]) + (wrap ? ")" : "");
      }
      return s;
    }
    case RegExpr::Kind::Subst: {
      const RegExpr& target = e.parts[0];
      bool atom = target.kind == RegExpr::Kind::Reg || target.kind == RegExpr::Kind::Letter ||
                  target.kind == RegExpr::Kind::Empty;
      std::string s = atom ? expr_to_string(t, target) : "(" + expr_to_string(t, target) + ")";
      s += "[";
      for (std::size_t i = 0; i < e.letters.size(); ++i)
        s += (i ? ", '" : "'") + std::string(1, e.letters[i]) + "' := " + expr_to_string(t, e.parts[i + 1]);
      return s + "]";
    }
  }
  return {};
}

namespace {

std::set<char> expr_letters(const RegExpr& e, const std::vector<std::set<char>>& regs) {
  switch (e.kind) {
    case RegExpr::Kind::Empty: return {};
    case RegExpr::Kind::Letter: return {e.letter};
    case RegExpr::Kind::Reg: return regs.at(e.reg);
    case RegExpr::Kind::Concat: {
      std::set<char> s;
      for (const auto& p : e.parts) {
        auto q = expr_letters(p, regs);
        s.insert(q.begin(), q.end());
      }
      return s;
    }
    case RegExpr::Kind::Subst: {
      std::set<char> in = expr_letters(e.parts[0], regs), out;
      for (char c : in) {
        auto k = e.letters.find(c);
        if (k == std::string::npos) {
          out.insert(c);
        } else {
          auto q = expr_letters(e.parts[k + 1], regs);
          out.insert(q.begin(), q.end());
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<std::set<char>> letter_occurrence_analysis(const Transducer& t) {
  std::vector<std::set<char>> l(t.registers.size());
  for (std::size_t r = 0; r < t.registers.size(); ++r) l[r].insert(t.init[r].begin(), t.init[r].end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [key, tr] : t.delta) {
      for (std::size_t r = 0; r < tr.updates.size(); ++r) {
        for (char c : expr_letters(tr.updates[r], l)) changed = l[r].insert(c).second || changed;
      }
    }
  }
  return l;
}

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::NoSubst: return "NoSubst";
    case Fragment::SimultaneousComInjective: return "SimultaneousComInjective";
    case Fragment::General: break;
  }
  return "General";
}

const char* to_string(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::Equivalent: return "Equivalent";
    case EquivVerdict::NotEquivalent: return "NotEquivalent";
    case EquivVerdict::Unknown: break;
  }
  return "Unknown";
}

namespace {

std::string letter_set(const std::string& s) {
  std::string t = s;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

Alphabet joint_alphabet(const Transducer& t1, const Transducer& t2) {
  std::string s;
  for (const std::string* a : {&t1.alphabet, &t1.input, &t2.alphabet, &t2.input})
    for (char c : *a)
      if (s.find(c) == std::string::npos) s += c;
  return Alphabet(s);
}

struct Product {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::string> word;  // shortest word reaching each pair
};

Product reachable_pairs(const Transducer& t1, const Transducer& t2) {
  Product p;
  auto add = [&](std::pair<std::size_t, std::size_t> q, std::string w) {
    if (p.index.count(q)) return;
    p.index[q] = p.pairs.size();
    p.pairs.push_back(q);
    p.word.push_back(std::move(w));
  };
  add({t1.initial, t2.initial}, "");
  for (std::size_t i = 0; i < p.pairs.size(); ++i)
    for (char c : t1.input) {
      auto [a, b] = p.pairs[i];
      add({t1.delta.at({a, c}).to, t2.delta.at({b, c}).to}, p.word[i] + c);
    }
  return p;
}

// Substitutions used by one expression; refs collects registers read
// outside any substitution. Returns an error message for General shapes.
std::optional<std::string> collect_substs(const RegExpr& e, bool inside, std::vector<WordSubst>& found,
                                          std::vector<std::size_t>& refs) {
  switch (e.kind) {
    case RegExpr::Kind::Empty:
    case RegExpr::Kind::Letter: return std::nullopt;
    case RegExpr::Kind::Reg:
      if (!inside) refs.push_back(e.reg);
      return std::nullopt;
    case RegExpr::Kind::Concat:
      for (const auto& p : e.parts)
        if (auto err = collect_substs(p, inside, found, refs)) return err;
      return std::nullopt;
    case RegExpr::Kind::Subst: {
      if (inside) return "nested substitution";
      WordSubst p;
      for (std::size_t i = 0; i < e.letters.size(); ++i) {
        std::vector<WordSubst> none;
        std::vector<std::size_t> regs;
        const RegExpr& rep = e.parts[i + 1];
        if (collect_substs(rep, true, none, regs) || !none.empty()) return "nested substitution";
        std::vector<std::string> dummy;
        std::function<bool(const RegExpr&)> has_reg = [&](const RegExpr& x) {
          if (x.kind == RegExpr::Kind::Reg) return true;
          for (const auto& y : x.parts)
            if (has_reg(y)) return true;
          return false;
        };
        if (has_reg(rep)) return "substitution replacement reads a register";
        std::string w = eval_expr(rep, dummy);
        if (w != std::string(1, e.letters[i])) p[e.letters[i]] = w;
      }
      if (auto err = collect_substs(e.parts[0], true, found, refs)) return err;
      if (!p.empty() && std::find(found.begin(), found.end(), p) == found.end()) found.push_back(p);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

struct StepShape {
  std::optional<WordSubst> subst;
  std::optional<std::string> general;  // reason
};

// Shape of one production: the updates (or outputs) of both transducers.
StepShape step_shape(const Alphabet& sigma, const std::vector<const RegExpr*>& e1,
                     const std::vector<const RegExpr*>& e2, const std::vector<std::set<char>>& l1,
                     const std::vector<std::set<char>>& l2) {
  StepShape s;
  std::vector<WordSubst> found;
  std::vector<std::size_t> refs1, refs2;
  for (const RegExpr* e : e1)
    if (auto err = collect_substs(*e, false, found, refs1)) return {std::nullopt, *err};
  for (const RegExpr* e : e2)
    if (auto err = collect_substs(*e, false, found, refs2)) return {std::nullopt, *err};
  if (found.empty()) return s;
  if (found.size() > 1) return {std::nullopt, "different substitutions in one step"};
  const WordSubst& p = found[0];
  auto clash = [&](const std::vector<std::size_t>& refs, const std::vector<std::set<char>>& l) {
    for (std::size_t r : refs)
      for (const auto& [c, w] : p)
        if (l[r].count(c)) return true;
    return false;
  };
  if (clash(refs1, l1) || clash(refs2, l2))
    return {std::nullopt, "a register that may hold a substituted letter is read without the substitution"};
  try {
    invert_substitution(sigma, p);
  } catch (const NotComInjective&) {
    return {std::nullopt, "substitution is not com-injective"};
  }
  s.subst = p;
  return s;
}

template <class Fn>
void for_each_step(const Transducer& t1, const Transducer& t2, const Product& prod, Fn&& fn) {
  for (std::size_t i = 0; i < prod.pairs.size(); ++i) {
    auto [a, b] = prod.pairs[i];
    for (char c : t1.input) {
      const Transition& x = t1.delta.at({a, c});
      const Transition& y = t2.delta.at({b, c});
      std::vector<const RegExpr*> e1, e2;
      for (const auto& u : x.updates) e1.push_back(&u);
      for (const auto& u : y.updates) e2.push_back(&u);
      fn(i, std::optional<char>(c), e1, e2, prod.index.at({x.to, y.to}));
    }
  }
  for (std::size_t i = 0; i < prod.pairs.size(); ++i) {
    auto [a, b] = prod.pairs[i];
    if (!t1.accepting[a] || !t2.accepting[b]) continue;
    fn(i, std::optional<char>(), std::vector<const RegExpr*>{&*t1.output[a]},
       std::vector<const RegExpr*>{&*t2.output[b]}, prod.pairs.size());
  }
}

void require_same_input(const Transducer& t1, const Transducer& t2) {
  if (letter_set(t1.input) != letter_set(t2.input))
    throw StructuralError("input alphabets differ: '" + t1.input + "' vs '" + t2.input + "'");
}

}  // namespace

Classification classify(const Transducer& t1, const Transducer& t2) {
  require_same_input(t1, t2);
  Alphabet sigma = joint_alphabet(t1, t2);
  Product prod = reachable_pairs(t1, t2);
  auto l1 = letter_occurrence_analysis(t1), l2 = letter_occurrence_analysis(t2);
  Classification c;
  for_each_step(t1, t2, prod, [&](std::size_t from, std::optional<char> letter, const auto& e1, const auto& e2, std::size_t) {
    if (c.fragment == Fragment::General) return;
    StepShape s = step_shape(sigma, e1, e2, l1, l2);
    std::string where = "state pair (" + t1.states[prod.pairs[from].first] + ", " +
                        t2.states[prod.pairs[from].second] + ")" +
                        (letter ? " on '" + std::string(1, *letter) + "'" : " output");
    if (s.general) {
      c.fragment = Fragment::General;
      c.reason = where + ": " + *s.general;
    } else if (s.subst) {
      c.fragment = Fragment::SimultaneousComInjective;
    }
  });
  return c;
}

std::optional<std::string> acceptance_mismatch(const Transducer& t1, const Transducer& t2) {
  require_same_input(t1, t2);
  Product prod = reachable_pairs(t1, t2);
  for (std::size_t i = 0; i < prod.pairs.size(); ++i)
    if (t1.accepting[prod.pairs[i].first] != t2.accepting[prod.pairs[i].second]) return prod.word[i];
  return std::nullopt;
}

namespace {

struct Enc {
  KPoly t, b;
};

class Encoder {
public:
  Encoder(const Alphabet& sigma, const VarTablePtr& slots) : sigma_(sigma), slots_(slots) {}

  Enc word(const std::string& w) const {
    Encoded e = encode_word(sigma_, w);
    return {constant(e.tilde), constant(e.bar)};
  }

  Enc expr(const RegExpr& e, std::size_t offset, const WordSubst* p) const {
    switch (e.kind) {
      case RegExpr::Kind::Empty: return word("");
      case RegExpr::Kind::Letter: return word(p ? apply_subst(*p, std::string(1, e.letter)) : std::string(1, e.letter));
      case RegExpr::Kind::Reg:
        return {KPoly::variable(slots_, offset + 2 * e.reg), KPoly::variable(slots_, offset + 2 * e.reg + 1)};
      case RegExpr::Kind::Concat: {
        Enc acc = word("");
        for (const auto& part : e.parts) {
          Enc x = expr(part, offset, p);
          acc = {acc.t * x.b + x.t, acc.b * x.b};
        }
        return acc;
      }
      case RegExpr::Kind::Subst: {
        std::vector<std::string> none;
        WordSubst q;
        for (std::size_t i = 0; i < e.letters.size(); ++i) q[e.letters[i]] = eval_expr(e.parts[i + 1], none);
        return expr(e.parts[0], offset, &q);
      }
    }
    return word("");
  }

private:
  KPoly constant(const QPoly& q) const { return KPoly::constant(RatFunc(q), slots_); }

  const Alphabet& sigma_;
  VarTablePtr slots_;
};

}  // namespace

DifferenceGrammar to_difference_grammar(const Transducer& t1, const Transducer& t2) {
  t1.validate();
  t2.validate();
  require_same_input(t1, t2);
  DifferenceGrammar d;
  d.sigma = joint_alphabet(t1, t2);
  Product prod = reachable_pairs(t1, t2);
  auto l1 = letter_occurrence_analysis(t1), l2 = letter_occurrence_analysis(t2);
  Grammar& g = d.grammar;
  g.params = d.sigma.table();
  std::size_t n1 = t1.registers.size(), n2 = t2.registers.size();
  std::size_t dim = 2 * (n1 + n2);

  bool any_accepting = false;
  for (auto [a, b] : prod.pairs) any_accepting = any_accepting || (t1.accepting[a] && t2.accepting[b]);
  if (!any_accepting) throw EmptyLanguage("no reachable state pair accepts in both transducers");

  g.add_nonterminal("S", 1);
  g.initial = 0;
  for (auto [a, b] : prod.pairs) {
    std::string name = "N_" + t1.states[a] + "_" + t2.states[b];
    while (g.find(name)) name += "_";
    g.add_nonterminal(name, dim);
  }
  d.pairs = prod.pairs;

  VarTablePtr none = PolyMap::slot_table(0);
  Encoder base(d.sigma, none);
  Production init;
  init.lhs = 1;
  init.label = "init";
  std::vector<KPoly> consts;
  for (const Transducer* t : {&t1, &t2})
    for (const auto& w : t->init) {
      Enc e = base.word(w);
      consts.push_back(e.t);
      consts.push_back(e.b);
    }
  init.map = PolyMap(none, consts);
  g.productions.push_back(std::move(init));
  d.letter.push_back(std::nullopt);

  VarTablePtr slots = PolyMap::slot_table(dim);
  Encoder enc(d.sigma, slots);
  for_each_step(t1, t2, prod, [&](std::size_t from, std::optional<char> letter, const auto& e1, const auto& e2, std::size_t to) {
    StepShape s = step_shape(d.sigma, e1, e2, l1, l2);
    if (s.general) throw StructuralError("transducer pair is outside the decidable fragments: " + *s.general);
    Production p;
    p.rhs = {from + 1};
    std::vector<KPoly> outs;
    if (letter) {
      p.lhs = to + 1;
      p.label = std::string("p_") + letter_stem(*letter);
      for (const RegExpr* e : e1) {
        Enc x = enc.expr(*e, 0, nullptr);
        outs.push_back(x.t);
        outs.push_back(x.b);
      }
      for (const RegExpr* e : e2) {
        Enc x = enc.expr(*e, 2 * n1, nullptr);
        outs.push_back(x.t);
        outs.push_back(x.b);
      }
    } else {
      p.lhs = 0;
      p.label = "out";
      outs.push_back(enc.expr(*e1[0], 0, nullptr).t - enc.expr(*e2[0], 2 * n1, nullptr).t);
    }
    p.map = PolyMap(slots, outs);
    if (s.subst) p.twist = invert_substitution(d.sigma, *s.subst);
    g.productions.push_back(std::move(p));
    d.letter.push_back(letter);
  });
  g.validate();
  return d;
}

std::string decode_word(const DifferenceGrammar& d, const Derivation& deriv) {
  std::string w;
  const Derivation* cur = &deriv;
  while (cur) {
    if (auto c = d.letter.at(cur->production)) w += *c;
    cur = cur->children.empty() ? nullptr : cur->children[0].get();
  }
  std::reverse(w.begin(), w.end());
  return w;
}

namespace {

void set_witness(EquivResult& r, const Transducer& t1, const Transducer& t2, const std::string& w) {
  r.verdict = EquivVerdict::NotEquivalent;
  r.witness = w;
  r.output1 = run(t1, w);
  r.output2 = run(t2, w);
  if (r.output1 == r.output2) throw std::logic_error("witness '" + w + "' does not separate the transducers");
}

// Shortlex-least separating word no longer than w (w itself separates).
std::string shortlex_least(const Transducer& t1, const Transducer& t2, const std::string& w) {
  double count = 1;
  for (std::size_t i = 0; i < w.size(); ++i) count *= static_cast<double>(t1.input.size());
  if (count > 1e5) return w;
  std::deque<std::string> queue{""};
  while (!queue.empty()) {
    std::string u = queue.front();
    queue.pop_front();
    if (run(t1, u) != run(t2, u)) return u;
    if (u.size() < w.size())
      for (char c : t1.input) queue.push_back(u + c);
  }
  return w;
}

}  // namespace

EquivResult equivalence_check(const Transducer& t1, const Transducer& t2, const ZeroOptions& o) {
  t1.validate();
  t2.validate();
  require_same_input(t1, t2);
  EquivResult r;
  if (auto w = acceptance_mismatch(t1, t2)) {
    r.method = "acceptance";
    set_witness(r, t1, t2, *w);
    return r;
  }
  Classification c = classify(t1, t2);
  r.fragment = c.fragment;
  if (c.fragment == Fragment::General) {
    r.method = "word-enumeration";
    StopToken stop(o.budgets.seconds, o.cancel);
    std::deque<std::string> queue{""};
    while (!queue.empty() && !stop.stop()) {
      std::string w = queue.front();
      queue.pop_front();
      if (run(t1, w) != run(t2, w)) {
        set_witness(r, t1, t2, w);
        return r;
      }
      if (w.size() < o.budgets.size)
        for (char ch : t1.input) queue.push_back(w + ch);
    }
    return r;
  }
  DifferenceGrammar d;
  try {
    d = to_difference_grammar(t1, t2);
  } catch (const EmptyLanguage&) {
    r.verdict = EquivVerdict::Equivalent;
    r.method = "empty-domain";
    return r;
  }
  ZeroResult z = zeroness(d.grammar, o);
  r.method = z.method;
  r.rejected = z.rejected;
  if (z.verdict == Verdict::Zero) {
    r.verdict = EquivVerdict::Equivalent;
    r.certificate = z.certificate;
  } else if (z.verdict == Verdict::NonZero) {
    set_witness(r, t1, t2, shortlex_least(t1, t2, decode_word(d, *z.witness->deriv)));
  }
  r.difference = std::move(d);
  return r;
}

}  // namespace pgz
