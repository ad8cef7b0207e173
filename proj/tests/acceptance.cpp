// Runs the acceptance criteria; one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pgz/certificate.hpp"
#include "pgz/encoding.hpp"
#include "pgz/grammar_dsl.hpp"
#include "pgz/groebner.hpp"
#include "pgz/parse.hpp"
#include "pgz/problem.hpp"
#include "pgz/transducer.hpp"
#include "pgz/vass.hpp"
#include "vass_family.hpp"

using namespace pgz;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(PGZ_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Transducer load(const std::string& name, const std::string& input = "") { return parse_transducer(slurp(name), input); }

struct Check {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::vector<std::string> words_upto(const std::string& sigma, std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n)
      for (char c : sigma) out.push_back(out[i] + c);
  return out;
}

void encoding_fidelity(Check& c) {
  Alphabet ab("ab");
  Encoded eps = encode_word(ab, "");
  c.require(eps.tilde.is_zero() && eps.bar == QPoly::constant(Rat(1), ab.table()), "Phi(eps) != (0, 1)");
  c.require(encode_word(ab, "abbab").bar == parse_poly("ab^2*bb^3", ab.table()), "bar(abbab) != ab^2 bb^3");
  auto ws = words_upto("ab", 5);
  std::size_t pairs = 0;
  for (const auto& u : ws)
    for (const auto& v : ws) {
      Encoded eu = encode_word(ab, u), ev = encode_word(ab, v), euv = encode_word(ab, u + v);
      c.require(euv.tilde == eu.tilde * ev.bar + ev.tilde, "tilde law fails on " + u + "|" + v);
      c.require(euv.bar == eu.bar * ev.bar, "bar law fails on " + u + "|" + v);
      ++pairs;
    }
  c.note = c.ok ? std::to_string(pairs) + " word pairs" : c.note;
}

void rev_id(Check& c) {
  EquivResult u = equivalence_check(load("rev.tr", "a"), load("id.tr", "a"));
  c.require(u.verdict == EquivVerdict::Equivalent, "unary verdict " + std::string(to_string(u.verdict)));
  c.require(u.certificate && u.difference && check_certificate(u.difference->grammar, *u.certificate).ok(),
            "unary certificate does not validate");
  Transducer rev = load("rev.tr", "ab"), id = load("id.tr", "ab");
  EquivResult b = equivalence_check(rev, id);
  c.require(b.verdict == EquivVerdict::NotEquivalent, "binary verdict " + std::string(to_string(b.verdict)));
  if (b.witness) {
    c.require(b.witness->size() <= 2, "witness longer than 2");
    c.require(run(rev, *b.witness) != run(id, *b.witness), "replayed outputs agree");
    if (c.ok) c.note = "witness " + *b.witness + ": " + *run(rev, *b.witness) + " vs " + *run(id, *b.witness);
  } else {
    c.require(false, "no witness");
  }
}

void indep_line(Check& c) {
  Grammar a = parse_grammar(slurp("indep_A.pg")), b = parse_grammar(slurp("indep_B.pg"));
  ChainResult r = indep_zeroness(a, b);
  c.require(r.verdict == Verdict::Zero, std::string("verdict ") + to_string(r.verdict));
  if (!r.certificate) return c.require(false, "no certificate");
  GrammarChain gs{&a, &b};
  VarTablePtr ring = a.ring_table();
  KPoly target = parse_kpoly("(ab - 1)*xt - at*(xb - 1)", a.coefficient_table(), ring);
  Ideal<RatFunc> inv(ring, r.certificate->head.ambient);
  bool found = false;
  for (const auto& g : r.certificate->head.ambient)
    found = found || ideal_equal(Ideal<RatFunc>(ring, {g}), Ideal<RatFunc>(ring, {target}));
  c.require(found && inv.contains(target), "no generator equivalent to (ab - 1)*xt - at*(xb - 1)");
  auto j = chain_certificate_to_json(gs, *r.certificate);
  c.require(check_chain_certificate(gs, chain_certificate_from_json(gs, nlohmann::json::parse(j.dump()))).ok(),
            "certificate does not re-validate");
}

void com_injectivity(Check& c) {
  Alphabet ab("ab"), abc("abc"), a("a");
  ComInjectivity m = com_injective_check(ab, {{'a', "ab"}, {'b', "babb"}});
  Matrix<Rat> expect{{Rat(1), Rat(1)}, {Rat(1), Rat(3)}};
  c.require(m.matrix == expect, "matrix " + format_matrix(m.matrix));
  c.require(m.det == 2 && m.injective, "det " + m.det.get_str());
  ComInjectivity z = com_injective_check(abc, {{'a', "bbc"}});
  c.require(z.det == 0 && !z.injective, "a -> bbc det " + z.det.get_str());
  FieldAutomorphism f = invert_substitution(a, {{'a', "aa"}});
  c.require(f.backward()[a.tilde('a')] == parse_ratfunc("at/(1 + ab^(1/2))", a.table()), "inverse of at");
  c.require(f.backward()[a.bar('a')] == parse_ratfunc("ab^(1/2)", a.table()), "inverse of ab");
  c.require(f.round_trip_ok(), "round trip");
}

void twisted(Check& c) {
  Grammar g = parse_grammar(slurp("twisted.pg"));
  ZeroResult r = zeroness(g);
  c.require(r.verdict == Verdict::Zero, std::string("twisted verdict ") + to_string(r.verdict));
  Grammar plain = parse_grammar(slurp("twisted_plain.pg"));
  auto w = nonzero_search(plain, 12);
  c.require(w && w->value.size() == 1 && w->value[0] == parse_ratfunc("a", plain.params), "stripped value is not a");
}

void sqrev(Check& c) {
  Transducer t1 = load("sqrev1.tr"), t2 = load("sqrev2.tr");
  DifferenceGrammar d = to_difference_grammar(t1, t2);
  Certificate cert = certificate_from_json(d.grammar, nlohmann::json::parse(slurp("sqrev.cert.json")));
  c.require(check_certificate(d.grammar, cert).ok(), "bundled certificate rejected");
  ZeroOptions o;
  o.certificates = {cert};
  EquivResult r = equivalence_check(t1, t2, o);
  c.require(r.verdict == EquivVerdict::Equivalent, std::string("verdict ") + to_string(r.verdict));
  ZeroOptions a;
  a.budgets.iters = 10;
  EquivResult automatic = equivalence_check(t1, t2, a);
  c.require(automatic.verdict != EquivVerdict::NotEquivalent, "automatic search refuted an equivalence");
  if (c.ok) c.note = std::string("automatic forward_closure (10 iterations): ") + to_string(automatic.verdict);
}

void vass(Check& c) {
  fixture::FamilyReport r;
  for (const auto& v : fixture::vass_family(200)) fixture::check_end_to_end(v, 5, r);
  c.require(r.mismatches == 0, std::to_string(r.mismatches) + " mismatches; " + r.first_failure);
  c.require(r.invariant_failures == 0, std::to_string(r.invariant_failures) + " invariant failures; " + r.first_failure);
  if (c.ok) c.note = std::to_string(r.systems) + " systems, " + std::to_string(r.words) + " words";
}

void groebner_kernel(Check& c) {
  auto t = VarTable::make_ordinary({"t", "x", "y"});
  auto I = [&](std::vector<std::string> gens) {
    std::vector<QPoly> ps;
    for (const auto& g : gens) ps.push_back(parse_poly(g, t));
    return Ideal<Rat>(t, ps);
  };
  c.require(ideal_equal(eliminate(I({"x - t", "y - t^2"}), {0}), I({"y - x^2"})), "elimination");
  c.require(ideal_equal(ideal_intersect(I({"x"}), I({"y"})), I({"x*y"})), "intersection");
  c.require(radical_member(parse_poly("x", t), I({"x^2"})), "radical membership");
}

std::vector<Problem> determinism_problems() {
  Problem u{"equiv", {slurp("rev.tr"), slurp("id.tr")}, "a"};
  Problem b{"equiv", {slurp("rev.tr"), slurp("id.tr")}, "a,b"};
  Problem s3{"indep-zeroness", {slurp("indep_A.pg"), slurp("indep_B.pg")}};
  Problem sq{"equiv", {slurp("sqrev1.tr"), slurp("sqrev2.tr")}};
  sq.check_certificate = slurp("sqrev.cert.json");
  Problem sq_auto{"equiv", {slurp("sqrev1.tr"), slurp("sqrev2.tr")}};
  sq_auto.budgets.iters = 10;
  return {u, b, s3, sq, sq_auto};
}

void determinism(Check& c) {
  for (const auto& p : determinism_problems()) {
    std::string first = dump_report(solve(p).report), second = dump_report(solve(p).report);
    c.require(first == second, "reports differ for " + p.kind);
    c.require(first.find("InputError") == std::string::npos, "input error in " + p.kind);
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {1, "encoding fidelity", 5, encoding_fidelity},
      {2, "rev/id", 10, rev_id},
      {3, "independent substitution", 60, indep_line},
      {4, "com-injectivity", 1, com_injectivity},
      {5, "twisted grammar", 10, twisted},
      {6, "sqrev certificate", 120, sqrev},
      {7, "VASS end-to-end", 120, vass},
      {8, "Groebner kernel", 5, groebner_kernel},
      {9, "determinism", 120, determinism},
  };
  int failed = 0;
  for (const auto& cr : all) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char limit[64];
    std::snprintf(limit, sizeof limit, "%.2f s, limit %.0f s", secs, cr.limit);
    c.require(secs <= cr.limit, "time limit exceeded");
    std::printf("[%s] %d %s (%s)%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, limit, c.note.empty() ? "" : ": ",
                c.note.c_str());
    failed += !c.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
