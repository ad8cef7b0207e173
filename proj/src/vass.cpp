#include "pgz/vass.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "pgz/lexer.hpp"

namespace pgz {

bool ResetVass::is_normalized() const {
  for (const auto& t : transitions) {
    if (t.is_reset) continue;
    std::size_t nz = 0;
    for (auto s : t.step) {
      if (s == 0) continue;
      if (s != 1 && s != -1) return false;
      ++nz;
    }
    if (nz != 1) return false;
  }
  return true;
}

void ResetVass::validate() const {
  if (states.empty()) throw StructuralError("VASS has no states");
  if (initial >= states.size()) throw StructuralError("VASS initial state out of range");
  if (accepting.size() != states.size()) throw StructuralError("VASS accepting flags do not match the states");
  for (const auto& t : transitions) {
    if (t.from >= states.size() || t.to >= states.size()) throw StructuralError("VASS transition state out of range");
    if (t.is_reset) {
      if (!t.step.empty()) throw StructuralError("reset transition with a step vector");
      for (std::size_t k = 0; k < t.resets.size(); ++k) {
        if (t.resets[k] >= dim) throw StructuralError("reset coordinate out of range");
        if (k > 0 && t.resets[k] <= t.resets[k - 1]) throw StructuralError("reset coordinates must be ascending");
      }
    } else if (t.step.size() != dim) {
      throw StructuralError("step vector has the wrong dimension");
    }
  }
}

ResetVass normalize(const ResetVass& v) {
  v.validate();
  ResetVass out = v;
  out.transitions.clear();
  auto fresh = [&](std::size_t i, std::size_t k) {
    std::string name = "_t" + std::to_string(i) + "_" + std::to_string(k);
    while (std::find(out.states.begin(), out.states.end(), name) != out.states.end()) name += "_";
    out.states.push_back(name);
    out.accepting.push_back(false);
    return out.states.size() - 1;
  };
  for (std::size_t i = 0; i < v.transitions.size(); ++i) {
    const auto& t = v.transitions[i];
    if (t.is_reset) {
      out.transitions.push_back(t);
      continue;
    }
    std::vector<std::pair<std::size_t, std::int64_t>> units;
    for (int sign : {1, -1})
      for (std::size_t c = 0; c < v.dim; ++c)
        for (std::int64_t k = 0; k < t.step[c] * sign; ++k) units.push_back({c, sign});
    if (units.empty()) {
      VassTransition r;
      r.from = t.from;
      r.to = t.to;
      r.is_reset = true;
      out.transitions.push_back(r);
      continue;
    }
    std::size_t at = t.from;
    for (std::size_t k = 0; k < units.size(); ++k) {
      VassTransition u;
      u.from = at;
      u.to = k + 1 == units.size() ? t.to : fresh(i, k + 1);
      u.step.assign(v.dim, 0);
      u.step[units[k].first] = units[k].second;
      out.transitions.push_back(u);
      at = u.to;
    }
  }
  return out;
}

namespace {

using Counters = std::vector<std::int64_t>;

// Applies t, or returns false when a counter would drop below zero.
bool apply(const VassTransition& t, Counters& c) {
  if (t.is_reset) {
    for (auto r : t.resets) c[r] = 0;
    return true;
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] += t.step[i];
    if (c[i] < 0) return false;
  }
  return true;
}

bool all_zero(const Counters& c) {
  return std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

Reach brute_force_reach(const ResetVass& v, std::size_t max_len, std::size_t min_steps) {
  v.validate();
  struct Node {
    std::size_t state, phase, parent, via, depth;
    Counters counters;
  };
  std::vector<Node> nodes;
  std::map<std::tuple<std::size_t, std::size_t, Counters>, std::size_t> seen;
  auto done = [&](const Node& n) { return n.phase == min_steps && v.accepting[n.state] && all_zero(n.counters); };
  auto build = [&](std::size_t k) {
    Reach r;
    r.reachable = true;
    for (; nodes[k].depth > 0; k = nodes[k].parent) r.run.push_back(nodes[k].via);
    std::reverse(r.run.begin(), r.run.end());
    return r;
  };
  nodes.push_back({v.initial, 0, 0, 0, 0, Counters(v.dim, 0)});
  seen[{v.initial, 0, nodes[0].counters}] = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (done(nodes[k])) return build(k);
    if (nodes[k].depth == max_len) continue;
    for (std::size_t i = 0; i < v.transitions.size(); ++i) {
      const auto& t = v.transitions[i];
      if (t.from != nodes[k].state) continue;
      Counters c = nodes[k].counters;
      if (!apply(t, c)) continue;
      std::size_t phase = std::min(nodes[k].phase + 1, min_steps);
      if (!seen.emplace(std::make_tuple(t.to, phase, c), nodes.size()).second) continue;
      nodes.push_back({t.to, phase, k, i, nodes[k].depth + 1, std::move(c)});
    }
  }
  return {};
}

bool is_zero_run(const ResetVass& v, const std::vector<std::size_t>& run) {
  std::size_t q = v.initial;
  Counters c(v.dim, 0);
  for (auto i : run) {
    if (i >= v.transitions.size()) return false;
    const auto& t = v.transitions[i];
    if (t.from != q || !apply(t, c)) return false;
    q = t.to;
  }
  return v.accepting[q] && all_zero(c);
}

NumExpr NumExpr::constant(std::int64_t c) {
  NumExpr e;
  e.value = c;
  return e;
}

NumExpr NumExpr::x() {
  NumExpr e;
  e.kind = Kind::X;
  return e;
}

NumExpr NumExpr::of_reg(std::size_t r) {
  NumExpr e;
  e.kind = Kind::Reg;
  e.reg = r;
  return e;
}

namespace {

NumExpr binary(NumExpr::Kind k, NumExpr a, NumExpr b) {
  NumExpr e;
  e.kind = k;
  e.args = {std::move(a), std::move(b)};
  return e;
}

// e + c, folding into an existing trailing constant.
NumExpr plus_const(const NumExpr& e, std::int64_t c) {
  if (c == 0) return e;
  if (e.kind == NumExpr::Kind::Const) return NumExpr::constant(e.value + c);
  if (e.kind == NumExpr::Kind::Add && e.args[1].kind == NumExpr::Kind::Const) {
    std::int64_t s = e.args[1].value + c;
    if (s == 0) return e.args[0];
    return s > 0 ? NumExpr::add(e.args[0], NumExpr::constant(s)) : NumExpr::sub(e.args[0], NumExpr::constant(-s));
  }
  if (e.kind == NumExpr::Kind::Sub && e.args[1].kind == NumExpr::Kind::Const) return plus_const(NumExpr::add(e.args[0], NumExpr::constant(-e.args[1].value)), c);
  return c > 0 ? NumExpr::add(e, NumExpr::constant(c)) : NumExpr::sub(e, NumExpr::constant(-c));
}

}  // namespace

NumExpr NumExpr::add(NumExpr a, NumExpr b) { return binary(Kind::Add, std::move(a), std::move(b)); }
NumExpr NumExpr::sub(NumExpr a, NumExpr b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
NumExpr NumExpr::mul(NumExpr a, NumExpr b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
NumExpr NumExpr::subst_x(NumExpr target, NumExpr image) {
  return binary(Kind::SubstX, std::move(target), std::move(image));
}

std::size_t NumericTransducer::letter_index(char c) const {
  auto k = input.find(c);
  if (k == std::string::npos) throw StructuralError(std::string("'") + c + "' is not an input letter");
  return k;
}

std::string transition_letters(std::size_t count) {
  static const std::string pool = "abcdefghijklmnopqrstuvwyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  if (count > pool.size()) throw StructuralError("too many VASS transitions to name as letters");
  return pool.substr(0, count);
}

NumericTransducer compile_to_transducer(const ResetVass& v) {
  v.validate();
  if (!v.is_normalized()) throw StructuralError("VASS is not normalized");
  NumericTransducer t;
  t.input = transition_letters(v.transitions.size());
  t.registers = {"R1", "R1aux", "R2"};
  t.init = {1, 1, 1};
  for (std::size_t i = 0; i < v.dim; ++i) {
    t.registers.push_back("S" + std::to_string(i + 1));
    t.init.push_back(0);
  }
  t.ring = VarTable::make_ordinary({"x"});
  t.states = v.states;
  t.accepting = v.accepting;
  std::string err = "error";
  while (std::find(t.states.begin(), t.states.end(), err) != t.states.end()) err += "_";
  t.states.push_back(err);
  t.accepting.push_back(false);
  std::size_t error = t.states.size() - 1;
  const std::size_t R1 = 0, AUX = 1, R2 = 2, S0 = 3;

  std::vector<NumExpr> identity;
  for (std::size_t r = 0; r < t.registers.size(); ++r) identity.push_back(NumExpr::of_reg(r));
  t.delta.assign(t.states.size(), {});
  for (std::size_t q = 0; q < t.states.size(); ++q) {
    for (const auto& tr : v.transitions) {
      if (q == error || tr.from != q) {
        t.delta[q].push_back({error, identity});
        continue;
      }
      std::vector<NumExpr> up = identity;
      for (std::size_t i = 0; i < v.dim; ++i) {
        if (tr.is_reset) {
          if (std::find(tr.resets.begin(), tr.resets.end(), i) != tr.resets.end()) up[S0 + i] = NumExpr::constant(0);
        } else {
          up[S0 + i] = plus_const(up[S0 + i], tr.step[i]);
        }
      }
      NumExpr r2 = NumExpr::of_reg(R2);
      for (std::size_t i = 0; i < v.dim; ++i) r2 = NumExpr::mul(r2, plus_const(up[S0 + i], 1));
      up[R2] = r2;
      up[R1] = NumExpr::mul(NumExpr::of_reg(R1), NumExpr::sub(NumExpr::x(), NumExpr::of_reg(AUX)));
      up[AUX] = plus_const(NumExpr::of_reg(AUX), 1);
      t.delta[q].push_back({tr.to, std::move(up)});
    }
  }
  NumExpr sum = NumExpr::constant(0);
  for (std::size_t i = 0; i < v.dim; ++i)
    sum = i == 0 ? NumExpr::of_reg(S0) : NumExpr::add(std::move(sum), NumExpr::of_reg(S0 + i));
  for (std::size_t q = 0; q < t.states.size(); ++q)
    t.output.push_back(t.accepting[q] ? NumExpr::mul(NumExpr::subst_x(NumExpr::of_reg(R1), sum), NumExpr::of_reg(R2))
                                      : NumExpr::constant(0));
  t.initial = v.initial;
  return t;
}

QPoly eval_num(const NumericTransducer& t, const NumExpr& e, const std::vector<QPoly>& regs) {
  using K = NumExpr::Kind;
  switch (e.kind) {
    case K::Const: return QPoly::constant(Rat(e.value), t.ring);
    case K::X: return QPoly::variable(t.ring, 0);
    case K::Reg: return regs.at(e.reg);
    case K::Add: return eval_num(t, e.args[0], regs) + eval_num(t, e.args[1], regs);
    case K::Sub: return eval_num(t, e.args[0], regs) - eval_num(t, e.args[1], regs);
    case K::Mul: return eval_num(t, e.args[0], regs) * eval_num(t, e.args[1], regs);
    case K::SubstX: {
      std::vector<std::optional<QPoly>> images{eval_num(t, e.args[1], regs)};
      return substitute(eval_num(t, e.args[0], regs), images, t.ring);
    }
  }
  throw StructuralError("bad numeric expression");
}

NumRun run_numeric(const NumericTransducer& t, const std::string& w) {
  NumRun r;
  std::vector<QPoly> regs;
  for (auto c : t.init) regs.push_back(QPoly::constant(Rat(c), t.ring));
  std::size_t q = t.initial;
  r.states.push_back(q);
  r.registers.push_back(regs);
  for (char c : w) {
    const NumTransition& tr = t.delta[q][t.letter_index(c)];
    std::vector<QPoly> next;
    for (const auto& u : tr.updates) next.push_back(eval_num(t, u, regs));
    regs = std::move(next);
    q = tr.to;
    r.states.push_back(q);
    r.registers.push_back(regs);
  }
  r.output = eval_num(t, t.output[q], regs);
  return r;
}

namespace {

// Precedence: 0 sum, 1 product, 2 atom.
std::string show(const NumericTransducer& t, const NumExpr& e, int ctx) {
  using K = NumExpr::Kind;
  std::string s;
  int prec = 2;
  switch (e.kind) {
    case K::Const:
      s = std::to_string(e.value);
      if (e.value < 0) prec = 0;
      break;
    case K::X: s = "x"; break;
    case K::Reg: s = t.registers.at(e.reg); break;
    case K::Add: s = show(t, e.args[0], 0) + " + " + show(t, e.args[1], 1), prec = 0; break;
    case K::Sub: s = show(t, e.args[0], 0) + " - " + show(t, e.args[1], 1), prec = 0; break;
    case K::Mul: s = show(t, e.args[0], 1) + " * " + show(t, e.args[1], 2), prec = 1; break;
    case K::SubstX: s = show(t, e.args[0], 2) + "[x := " + show(t, e.args[1], 0) + "]"; break;
  }
  return prec < ctx ? "(" + s + ")" : s;
}

}  // namespace

std::string num_expr_to_string(const NumericTransducer& t, const NumExpr& e) { return show(t, e, 0); }

std::string to_dsl(const NumericTransducer& t) {
  std::ostringstream o;
  o << "transducer {\n  input";
  for (char c : t.input) o << ' ' << c;
  o << ";\n  registers ";
  for (std::size_t r = 0; r < t.registers.size(); ++r) o << (r ? ", " : "") << t.registers[r] << " = " << t.init[r];
  o << ";\n";
  for (std::size_t q = 0; q < t.states.size(); ++q) {
    o << "  state " << t.states[q];
    if (q == t.initial) o << " initial";
    if (t.accepting[q]) o << " accepting";
    o << ";\n";
  }
  for (std::size_t q = 0; q < t.states.size(); ++q) {
    // Moves without updates are grouped by target.
    std::map<std::size_t, std::string> by_target;
    for (std::size_t a = 0; a < t.input.size(); ++a) {
      const NumTransition& tr = t.delta[q][a];
      std::string body;
      for (std::size_t r = 0; r < tr.updates.size(); ++r) {
        const NumExpr& u = tr.updates[r];
        if (u.kind == NumExpr::Kind::Reg && u.reg == r) continue;
        body += " " + t.registers[r] + " = " + num_expr_to_string(t, u) + ";";
      }
      if (body.empty()) {
        by_target[tr.to] += std::string(" ") + t.input[a];
        continue;
      }
      o << "  on " << t.input[a] << " from " << t.states[q] << " to " << t.states[tr.to] << " {" << body << " }\n";
    }
    for (const auto& [to, letters] : by_target) {
      bool all = letters.size() == 2 * t.input.size();
      o << "  on" << (all ? std::string(" *") : letters) << " from " << t.states[q] << " to " << t.states[to] << " {}\n";
    }
  }
  for (std::size_t q = 0; q < t.states.size(); ++q)
    o << "  output " << t.states[q] << " = " << num_expr_to_string(t, t.output[q]) << ";\n";
  o << "}\n";
  return o.str();
}

namespace {

class VassParser {
public:
  explicit VassParser(std::string_view text) : lex_(text) {}

  ResetVass parse() {
    lex_.expect("vass");
    if (lex_.peek().kind == Tok::Ident && !lex_.is("dim")) lex_.next();
    lex_.expect("dim");
    v_.dim = number(lex_.expect(Tok::Number, "dimension"));
    lex_.expect("{");
    while (!lex_.accept("}")) statement();
    if (!lex_.at_end()) lex_.fail("unexpected input after the VASS");
    if (!has_initial_) lex_.fail("no initial state");
    v_.validate();
    return v_;
  }

private:
  static std::size_t number(const Token& t) {
    try {
      return std::stoull(t.text);
    } catch (const std::exception&) {
      Lexer::fail_at(t, "number out of range");
    }
  }

  void statement() {
    if (lex_.accept("state")) {
      Token name = lex_.expect(Tok::Ident, "state name");
      if (std::find(v_.states.begin(), v_.states.end(), name.text) != v_.states.end())
        Lexer::fail_at(name, "state " + name.text + " declared twice");
      v_.states.push_back(name.text);
      v_.accepting.push_back(false);
      for (;;) {
        if (lex_.accept("initial")) {
          if (has_initial_) Lexer::fail_at(name, "second initial state");
          has_initial_ = true;
          v_.initial = v_.states.size() - 1;
        } else if (lex_.accept("accepting")) {
          v_.accepting.back() = true;
        } else {
          break;
        }
      }
      lex_.expect(";");
      return;
    }
    VassTransition t;
    t.from = state();
    lex_.expect("-");
    lex_.expect("[");
    if (lex_.accept("reset")) {
      t.is_reset = true;
      while (!lex_.is("]")) {
        if (lex_.accept(",")) continue;
        t.resets.push_back(coordinate());
      }
      std::sort(t.resets.begin(), t.resets.end());
      t.resets.erase(std::unique(t.resets.begin(), t.resets.end()), t.resets.end());
    } else {
      t.step.assign(v_.dim, 0);
      while (!lex_.is("]")) {
        if (lex_.accept(",")) continue;
        std::int64_t sign = 1;
        if (lex_.accept("-")) sign = -1;
        else lex_.accept("+");
        auto k = static_cast<std::int64_t>(number(lex_.expect(Tok::Number, "step size")));
        lex_.expect("on");
        t.step[coordinate()] += sign * k;
      }
    }
    lex_.expect("]");
    lex_.expect("->");
    t.to = state();
    lex_.expect(";");
    v_.transitions.push_back(std::move(t));
  }

  std::size_t coordinate() {
    Token t = lex_.expect(Tok::Number, "coordinate");
    std::size_t c = number(t);
    if (c == 0 || c > v_.dim) Lexer::fail_at(t, "coordinate " + t.text + " outside 1.." + std::to_string(v_.dim));
    return c - 1;
  }

  std::size_t state() {
    Token name = lex_.expect(Tok::Ident, "state name");
    auto it = std::find(v_.states.begin(), v_.states.end(), name.text);
    if (it == v_.states.end()) Lexer::fail_at(name, "unknown state " + name.text);
    return static_cast<std::size_t>(it - v_.states.begin());
  }

  Lexer lex_;
  ResetVass v_;
  bool has_initial_ = false;
};

}  // namespace

ResetVass parse_vass(std::string_view text) { return VassParser(text).parse(); }

std::string vass_to_string(const ResetVass& v) {
  std::ostringstream o;
  o << "vass dim " << v.dim << " {\n";
  for (std::size_t q = 0; q < v.states.size(); ++q) {
    o << "  state " << v.states[q];
    if (q == v.initial) o << " initial";
    if (v.accepting[q]) o << " accepting";
    o << ";\n";
  }
  for (const auto& t : v.transitions) {
    o << "  " << v.states[t.from] << " -[";
    if (t.is_reset) {
      o << "reset";
      for (auto r : t.resets) o << ' ' << r + 1;
    } else {
      bool first = true;
      for (std::size_t i = 0; i < v.dim; ++i) {
        if (t.step[i] == 0) continue;
        o << (first ? "" : ", ") << (t.step[i] > 0 ? "+" : "") << t.step[i] << " on " << i + 1;
        first = false;
      }
    }
    o << "]-> " << v.states[t.to] << ";\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace pgz
