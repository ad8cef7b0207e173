#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "pgz/grammar_dsl.hpp"
#include "pgz/parse.hpp"
#include "pgz/zeroness.hpp"

using namespace pgz;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(PGZ_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kPowers = "nonterminal A dim 1; polymap m(x, y) = (x*y); A -> m(A, A); A -> 2;";
// X ranges over 0, 1, 2, ...; S = X(X-1)(X-2) first becomes nonzero at X = 3.
const char* kLate =
    "nonterminal S dim 1; nonterminal X dim 1; initial S;"
    "polymap d(x) = (x*(x - 1)*(x - 2)); polymap s(x) = (x + 1);"
    "S -> d(X); X -> s(X); X -> 0;";

// Every value within the budget is zero.
void expect_all_zero(const Grammar& g, std::size_t size) {
  for (const auto& e : enumerate_values(g, size)) EXPECT_TRUE(is_zero_value(e.value));
}

RatFunc value_of(const std::string& s, const Grammar& g) { return parse_ratfunc(s, g.params); }

}  // namespace

TEST(Zeroness, PowersOfTwoNonZero) {
  Grammar g = parse_grammar(kPowers);
  ZeroResult r = zeroness(g);
  ASSERT_EQ(r.verdict, Verdict::NonZero);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->value[0], RatFunc(2));
  EXPECT_EQ(replay(g, *r.witness->deriv), r.witness->value);
}

TEST(Zeroness, ConstantZero) {
  Grammar g = parse_grammar("nonterminal S dim 2; S -> (0, 0);");
  ZeroResult r = zeroness(g);
  ASSERT_EQ(r.verdict, Verdict::Zero);
  EXPECT_EQ(r.method, "closure");
  EXPECT_TRUE(check_certificate(g, *r.certificate).ok());
}

TEST(Zeroness, BudgetExhaustionIsUnknown) {
  Grammar g = parse_grammar(kLate);
  ZeroOptions o;
  o.budgets.size = 4;
  o.budgets.iters = 2;
  EXPECT_EQ(zeroness(g, o).verdict, Verdict::Unknown);
  ZeroResult r = zeroness(g);
  ASSERT_EQ(r.verdict, Verdict::NonZero);
  EXPECT_EQ(r.witness->value[0], RatFunc(6));
}

TEST(Zeroness, TwistedAndStripped) {
  Grammar g = parse_grammar(slurp("twisted.pg"));
  ZeroResult r = zeroness(g);
  ASSERT_EQ(r.verdict, Verdict::Zero);
  EXPECT_TRUE(check_certificate(g, *r.certificate).ok());
  expect_all_zero(g, 9);

  Grammar plain = parse_grammar(slurp("twisted_plain.pg"));
  ZeroResult p = zeroness(plain);
  ASSERT_EQ(p.verdict, Verdict::NonZero);
  EXPECT_EQ(p.witness->value[0], value_of("a", plain));
}

TEST(Zeroness, UserCertificates) {
  Grammar g = parse_grammar(slurp("twisted.pg"));
  ZeroOptions o;
  Certificate bogus;
  bogus.ideals["S"] = NtIdeal{{"y1"}, {}};
  o.certificates.push_back(bogus);
  o.certificates.push_back(certificate_from_json(g, nlohmann::json::parse(slurp("twisted.cert.json"))));
  ZeroResult r = zeroness(g, o);
  ASSERT_EQ(r.verdict, Verdict::Zero);
  EXPECT_EQ(r.method, "certificate");
  ASSERT_EQ(r.rejected.size(), 1u);
}

TEST(Zeroness, ParallelScheduleAgrees) {
  ZeroOptions o;
  o.schedule = Schedule::Parallel;
  EXPECT_EQ(zeroness(parse_grammar(slurp("twisted.pg")), o).verdict, Verdict::Zero);
  ZeroResult r = zeroness(parse_grammar(kPowers), o);
  ASSERT_EQ(r.verdict, Verdict::NonZero);
  EXPECT_EQ(r.witness->value[0], RatFunc(2));
}

TEST(Zeroness, EmptyLanguageRejected) {
  Grammar g = parse_grammar("nonterminal A dim 1; polymap m(x, y) = (x*y); A -> m(A, A);");
  EXPECT_THROW(zeroness(g), EmptyLanguage);
  EXPECT_THROW(indep_zeroness(parse_grammar("vars x; nonterminal A dim 1; A -> x;"), g), EmptyLanguage);
}

TEST(Zeroness, RoundRobinIsDeterministic) {
  Grammar g = parse_grammar(slurp("twisted.pg"));
  ZeroResult a = zeroness(g), b = zeroness(g);
  ASSERT_EQ(a.verdict, Verdict::Zero);
  EXPECT_EQ(certificate_to_json(g, *a.certificate).dump(), certificate_to_json(g, *b.certificate).dump());
}

TEST(IndepZeroness, LineInvariantExample) {
  Grammar a = parse_grammar(slurp("indep_A.pg"));
  Grammar b = parse_grammar(slurp("indep_B.pg"));
  ChainResult r = indep_zeroness(a, b);
  ASSERT_EQ(r.verdict, Verdict::Zero);
  ASSERT_TRUE(r.certificate);
  GrammarChain gs{&a, &b};
  EXPECT_TRUE(check_chain_certificate(gs, *r.certificate).ok());

  VarTablePtr ring = a.ring_table();
  Ideal<RatFunc> inv(ring, r.certificate->head.ambient);
  Ideal<RatFunc> line(ring, {parse_kpoly("(ab - 1)*xt - at*(xb - 1)", a.coefficient_table(), ring)});
  EXPECT_TRUE(ideal_equal(inv, line));

  auto j = chain_certificate_to_json(gs, *r.certificate);
  ChainCertificate back = chain_certificate_from_json(gs, nlohmann::json::parse(j.dump()));
  EXPECT_TRUE(check_chain_certificate(gs, back).ok());
  EXPECT_EQ(chain_certificate_to_json(gs, back).dump(), j.dump());

  // Oracle: A(b) = 0 for enumerated pairs.
  for (const auto& ea : enumerate_values(a, 6))
    for (const auto& eb : enumerate_values(b, 6)) EXPECT_TRUE(is_zero_value(chain_value(gs, {&ea.value, &eb.value})));
}

TEST(IndepZeroness, TrivialCases) {
  Grammar x = parse_grammar("vars x1; nonterminal A dim 1; A -> x1;");
  Grammar consts = parse_grammar("nonterminal B dim 1; B -> 3; B -> 5;");
  ChainResult r = indep_zeroness(x, consts);
  ASSERT_EQ(r.verdict, Verdict::NonZero);
  EXPECT_EQ(r.witness->value[0], RatFunc(3));
  EXPECT_EQ(r.witness->parts.size(), 2u);

  Grammar zero = parse_grammar("vars x1; nonterminal A dim 1; A -> 0;");
  EXPECT_EQ(indep_zeroness(zero, consts).verdict, Verdict::Zero);

  Grammar wrong = parse_grammar("vars x1 x2; nonterminal A dim 1; A -> x1;");
  EXPECT_THROW(indep_zeroness(wrong, consts), StructuralError);
}

TEST(ChainZeroness, LengthOneDelegates) {
  Grammar g = parse_grammar(slurp("twisted.pg"));
  EXPECT_EQ(chain_zeroness({&g}).verdict, Verdict::Zero);
  Grammar p = parse_grammar(kPowers);
  EXPECT_EQ(chain_zeroness({&p}).verdict, Verdict::NonZero);
}

TEST(ChainZeroness, IdentityOverZero) {
  Grammar id = parse_grammar("vars x1; nonterminal A dim 1; A -> x1;");
  Grammar zero = parse_grammar("nonterminal B dim 1; B -> 0;");
  ChainResult r = chain_zeroness({&id, &zero});
  ASSERT_EQ(r.verdict, Verdict::Zero);
  EXPECT_TRUE(check_chain_certificate({&id, &zero}, *r.certificate).ok());
}

TEST(ChainZeroness, LengthTwoAgreesWithIndep) {
  Grammar a = parse_grammar(slurp("indep_A.pg"));
  Grammar b = parse_grammar(slurp("indep_B.pg"));
  ChainResult c = chain_zeroness({&a, &b});
  ChainResult i = indep_zeroness(a, b);
  EXPECT_EQ(c.verdict, i.verdict);
  EXPECT_EQ(chain_certificate_to_json({&a, &b}, *c.certificate).dump(),
            chain_certificate_to_json({&a, &b}, *i.certificate).dump());
}

TEST(ChainZeroness, LengthThree) {
  Grammar a1 = parse_grammar("vars u v; nonterminal A dim 1; A -> u - v;");
  Grammar a2 = parse_grammar("vars w; nonterminal P dim 2; P -> (w, w);");
  Grammar a3 = parse_grammar("nonterminal C dim 1; C -> 5; C -> 7;");
  GrammarChain gs{&a1, &a2, &a3};
  ChainResult r = chain_zeroness(gs);
  ASSERT_EQ(r.verdict, Verdict::Zero);
  EXPECT_TRUE(check_chain_certificate(gs, *r.certificate).ok());

  Grammar m1 = parse_grammar("vars u v; nonterminal A dim 1; A -> u*v - 25;");
  GrammarChain hs{&m1, &a2, &a3};
  ChainResult n = chain_zeroness(hs);
  ASSERT_EQ(n.verdict, Verdict::NonZero);
  EXPECT_EQ(n.witness->value[0], RatFunc(24));
}

TEST(ChainZeroness, ForgedCertificateRejected) {
  Grammar a = parse_grammar(slurp("indep_A.pg"));
  Grammar b = parse_grammar(slurp("indep_B.pg"));
  GrammarChain gs{&a, &b};
  ChainCertificate c;
  c.head = certificate_from_json(a, nlohmann::json::parse(slurp("indep_A.cert.json")));
  // The head alone is valid modulo the line, but nothing shows B lies on it.
  EXPECT_TRUE(check_certificate(a, c.head).ok());
  EXPECT_FALSE(check_chain_certificate(gs, c).ok());
  ChainResult r = indep_zeroness(a, b, {}, {c});
  ASSERT_EQ(r.verdict, Verdict::Zero);
  EXPECT_EQ(r.rejected.size(), 1u);
}
