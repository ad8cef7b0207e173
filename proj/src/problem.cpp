#include "pgz/problem.hpp"

#include <algorithm>

#include "pgz/certificate.hpp"
#include "pgz/encoding.hpp"
#include "pgz/grammar_dsl.hpp"
#include "pgz/transducer.hpp"
#include "pgz/vass.hpp"

namespace pgz {

using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* schedule_name(Schedule s) { return s == Schedule::Parallel ? "parallel" : "round-robin"; }

int exit_of(Verdict v) { return v == Verdict::Zero ? 0 : v == Verdict::NonZero ? 1 : 2; }
int exit_of(EquivVerdict v) {
  return v == EquivVerdict::Equivalent ? 0 : v == EquivVerdict::NotEquivalent ? 1 : 2;
}

std::string letters_of(const std::string& list) {
  std::string out;
  for (char c : list)
    if (c != ',' && !std::isspace(static_cast<unsigned char>(c)) && out.find(c) == std::string::npos) out += c;
  return out;
}

void need(const Problem& p, std::size_t n, const char* what) {
  if (p.inputs.size() != n) throw InputError(p.kind + " expects " + what);
}

ZeroOptions options(const Problem& p) {
  ZeroOptions o;
  o.budgets = p.budgets;
  o.schedule = p.schedule;
  return o;
}

json value_json(const Value& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

json witness_json(const Grammar& g, const Witness& w) {
  return {{"derivation", derivation_to_string(g, *w.deriv)}, {"value", value_json(w.value)}};
}

json check_json(const CertCheck& c) { return {{"verdict", to_string(c.verdict)}, {"detail", c.detail}}; }

WordSubst subst_of(const std::string& text) {
  std::string t = text;
  auto first = t.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || t.compare(first, 5, "subst") != 0) {
    std::replace(t.begin(), t.end(), ',', ';');
    t = "subst { " + t + " }";
  }
  return parse_word_subst(t);
}

Alphabet alphabet_for(const Problem& p, const WordSubst& s) {
  std::string letters = letters_of(p.alphabet);
  if (letters.empty()) {
    for (const auto& [a, w] : s) letters += a, letters += w;
    letters = letters_of(letters);
    std::sort(letters.begin(), letters.end());
  }
  return Alphabet(letters);
}

void solve_encode(const Problem& p, Outcome& out) {
  need(p, 1, "a word");
  const std::string& w = p.inputs[0];
  std::string letters = letters_of(p.alphabet);
  if (letters.empty()) {
    letters = letters_of(w);
    std::sort(letters.begin(), letters.end());
  }
  for (char c : w)
    if (letters.find(c) == std::string::npos) throw InputError(std::string("letter '") + c + "' outside the alphabet");
  Alphabet sigma(letters);
  Encoded e = encode_word(sigma, w);
  out.report["verdict"] = "Ok";
  out.report["result"] = {{"word", w}, {"alphabet", letters}, {"tilde", e.tilde.to_string()}, {"bar", e.bar.to_string()}};
  out.exit_code = 0;
}

void solve_run(const Problem& p, Outcome& out) {
  need(p, 2, "a transducer and a word");
  Transducer t = parse_transducer(p.inputs[0], letters_of(p.alphabet));
  auto o = run(t, p.inputs[1]);
  out.report["verdict"] = "Ok";
  out.report["result"] = {{"word", p.inputs[1]}, {"accepted", o.has_value()}, {"output", o ? json(*o) : json()}};
  out.exit_code = 0;
}

void solve_equiv(const Problem& p, Outcome& out) {
  need(p, 2, "two transducers");
  std::string letters = letters_of(p.alphabet);
  Transducer t1 = parse_transducer(p.inputs[0], letters), t2 = parse_transducer(p.inputs[1], letters);
  if (p.check_certificate) {
    json r;
    if (auto w = acceptance_mismatch(t1, t2)) {
      out.report["verdict"] = "Unknown";
      r["certificate_check"] = {{"verdict", "NotApplicable"}, {"detail", "acceptance languages differ"}};
      out.exit_code = 2;
    } else {
      DifferenceGrammar d = to_difference_grammar(t1, t2);
      CertCheck c = check_certificate(d.grammar, certificate_from_json(d.grammar, json::parse(*p.check_certificate)));
      out.report["verdict"] = c.ok() ? "Equivalent" : "Unknown";
      r["certificate_check"] = check_json(c);
      out.exit_code = c.ok() ? 0 : 2;
    }
    out.report["result"] = r;
    return;
  }
  EquivResult r = equivalence_check(t1, t2, options(p));
  json j = {{"fragment", to_string(r.fragment)}, {"method", r.method}, {"rejected", r.rejected}};
  if (r.witness) {
    j["witness"] = *r.witness;
    j["output1"] = r.output1 ? json(*r.output1) : json();
    j["output2"] = r.output2 ? json(*r.output2) : json();
  }
  if (r.certificate && r.difference) {
    out.certificate = certificate_to_json(r.difference->grammar, *r.certificate);
    j["certificate"] = *out.certificate;
  }
  out.report["verdict"] = to_string(r.verdict);
  out.report["result"] = j;
  out.exit_code = exit_of(r.verdict);
}

void solve_zeroness(const Problem& p, Outcome& out) {
  need(p, 1, "a grammar");
  Grammar g = parse_grammar(p.inputs[0]);
  if (p.check_certificate) {
    CertCheck c = check_certificate(g, certificate_from_json(g, json::parse(*p.check_certificate)));
    out.report["verdict"] = c.ok() ? "Zero" : "Unknown";
    out.report["result"] = {{"certificate_check", check_json(c)}};
    out.exit_code = c.ok() ? 0 : 2;
    return;
  }
  ZeroResult r = zeroness(g, options(p));
  json j = {{"method", r.method}, {"rejected", r.rejected}};
  if (r.witness) j["witness"] = witness_json(g, *r.witness);
  if (r.certificate) {
    out.certificate = certificate_to_json(g, *r.certificate);
    j["certificate"] = *out.certificate;
  }
  out.report["verdict"] = to_string(r.verdict);
  out.report["result"] = j;
  out.exit_code = exit_of(r.verdict);
}

void report_chain(const Problem& p, const GrammarChain& gs, Outcome& out) {
  if (p.check_certificate) {
    CertCheck c = check_chain_certificate(gs, chain_certificate_from_json(gs, json::parse(*p.check_certificate)));
    out.report["verdict"] = c.ok() ? "Zero" : "Unknown";
    out.report["result"] = {{"certificate_check", check_json(c)}};
    out.exit_code = c.ok() ? 0 : 2;
    return;
  }
  ChainResult r = chain_zeroness(gs, options(p));
  json j = {{"method", r.method}, {"rejected", r.rejected}};
  if (r.witness) {
    json parts = json::array();
    for (std::size_t i = 0; i < r.witness->parts.size(); ++i)
      parts.push_back(witness_json(*gs[i], r.witness->parts[i]));
    j["witness"] = {{"parts", parts}, {"value", value_json(r.witness->value)}};
  }
  if (r.certificate) {
    out.certificate = chain_certificate_to_json(gs, *r.certificate);
    j["certificate"] = *out.certificate;
  }
  out.report["verdict"] = to_string(r.verdict);
  out.report["result"] = j;
  out.exit_code = exit_of(r.verdict);
}

void solve_chain(const Problem& p, Outcome& out) {
  if (p.inputs.empty()) throw InputError(p.kind + " expects at least one grammar");
  if (p.kind == "indep-zeroness") need(p, 2, "two grammars");
  std::vector<Grammar> gs;
  for (const auto& text : p.inputs) gs.push_back(parse_grammar(text));
  GrammarChain chain;
  for (const auto& g : gs) chain.push_back(&g);
  report_chain(p, chain, out);
}

void solve_eqsat(const Problem& p, Outcome& out) {
  need(p, 2, "an equation grammar and a tested grammar");
  Grammar e = parse_grammar(p.inputs[0]), t = parse_grammar(p.inputs[1]);
  if (e.start().dim != 2) throw InputError("the equation grammar must have dimension 2");
  auto slots = PolyMap::slot_table(2);
  PolyMap diff(slots, {KPoly::variable(slots, 0) - KPoly::variable(slots, 1)});
  Grammar a = attach_polymap(diff, e, "D");
  report_chain(p, {&a, &t}, out);
}

void solve_cominj(const Problem& p, Outcome& out) {
  need(p, 1, "a substitution");
  WordSubst s = subst_of(p.inputs[0]);
  Alphabet sigma = alphabet_for(p, s);
  ComInjectivity c = com_injective_check(sigma, s);
  json m = json::array();
  for (const auto& row : c.matrix) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    m.push_back(r);
  }
  out.report["verdict"] = c.injective ? "ComInjective" : "NotComInjective";
  out.report["result"] = {{"alphabet", sigma.letters()}, {"matrix", m}, {"det", c.det.get_str()}};
  out.exit_code = c.injective ? 0 : 1;
}

void solve_invert(const Problem& p, Outcome& out) {
  need(p, 1, "a substitution");
  WordSubst s = subst_of(p.inputs[0]);
  Alphabet sigma = alphabet_for(p, s);
  try {
    FieldAutomorphism a = invert_substitution(sigma, s);
    json fwd = json::object(), inv = json::object();
    for (std::size_t i = 0; i < a.params()->size(); ++i) {
      fwd[a.params()->name(i)] = a.forward()[i].to_string();
      inv[a.params()->name(i)] = a.backward()[i].to_string();
    }
    out.report["verdict"] = "Ok";
    out.report["result"] = {{"alphabet", sigma.letters()}, {"forward", fwd}, {"inverse", inv},
                            {"round_trip", a.round_trip_ok()}};
    out.exit_code = 0;
  } catch (const NotComInjective& e) {
    out.report["verdict"] = "NotComInjective";
    out.report["result"] = {{"alphabet", sigma.letters()}, {"detail", e.what()}};
    out.exit_code = 1;
  }
}

void solve_vass(const Problem& p, Outcome& out) {
  need(p, 1, "a VASS");
  ResetVass v = normalize(parse_vass(p.inputs[0]));
  NumericTransducer t = compile_to_transducer(v);
  if (p.kind == "vass-compile") {
    out.text = to_dsl(t);
    out.report["verdict"] = "Ok";
    out.report["result"] = {{"normalized", vass_to_string(v)}, {"transducer", out.text}};
    out.exit_code = 0;
    return;
  }
  Reach r = brute_force_reach(v, p.budgets.size, p.min_steps);
  json j = {{"max_length", p.budgets.size}, {"min_steps", p.min_steps}, {"normalized", vass_to_string(v)}};
  if (r.reachable) {
    std::string word;
    for (auto i : r.run) word += t.input[i];
    j["run"] = word;
    j["compiled_output"] = run_numeric(t, word).output.to_string();
  }
  // Reachability is a nonzero output of the compiled transducer.
  out.report["verdict"] = r.reachable ? "Reachable" : "Unknown";
  out.report["result"] = j;
  out.exit_code = r.reachable ? 1 : 2;
}

}  // namespace

const std::vector<std::string>& problem_kinds() {
  static const std::vector<std::string> kinds = {"encode",       "run",          "equiv",       "zeroness",
                                                 "indep-zeroness", "chain-zeroness", "cominj",      "invert-subst",
                                                 "vass-compile", "vass-reach",   "eqsat"};
  return kinds;
}

Outcome solve(const Problem& p) {
  Outcome out;
  out.report = {{"kind", p.kind},
                {"budgets", {{"size", p.budgets.size}, {"iters", p.budgets.iters}, {"seconds", p.budgets.seconds}}},
                {"schedule", schedule_name(p.schedule)}};
  auto fail = [&](const std::string& type, const std::string& msg) {
    out = Outcome{};
    out.report = {{"kind", p.kind}, {"verdict", "InputError"}, {"error", {{"type", type}, {"message", msg}}}};
    out.exit_code = 3;
  };
  try {
    const auto& k = p.kind;
    if (k == "encode") solve_encode(p, out);
    else if (k == "run") solve_run(p, out);
    else if (k == "equiv") solve_equiv(p, out);
    else if (k == "zeroness") solve_zeroness(p, out);
    else if (k == "indep-zeroness" || k == "chain-zeroness") solve_chain(p, out);
    else if (k == "eqsat") solve_eqsat(p, out);
    else if (k == "cominj") solve_cominj(p, out);
    else if (k == "invert-subst") solve_invert(p, out);
    else if (k == "vass-compile" || k == "vass-reach") solve_vass(p, out);
    else throw InputError("unknown problem kind '" + k + "'");
  } catch (const ParseError& e) {
    fail("ParseError", e.what());
    out.report["error"]["line"] = e.line();
    out.report["error"]["column"] = e.column();
  } catch (const json::exception& e) {
    fail("CertificateFormat", e.what());
  } catch (const EmptyLanguage& e) {
    fail("EmptyLanguage", e.what());
  } catch (const NotComInjective& e) {
    fail("NotComInjective", e.what());
  } catch (const StructuralError& e) {
    fail("StructuralError", e.what());
  } catch (const DomainError& e) {
    fail("DomainError", e.what());
  } catch (const InputError& e) {
    fail("InputError", e.what());
  } catch (const std::exception& e) {
    fail("InternalError", e.what());
  }
  out.report["exit_code"] = out.exit_code;
  return out;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace pgz
