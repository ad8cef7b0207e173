#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "pgz/transducer.hpp"

using namespace pgz;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(PGZ_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Transducer load(const std::string& name, const std::string& input = "") { return parse_transducer(slurp(name), input); }

std::vector<std::string> words_upto(const std::string& sigma, std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n)
      for (char c : sigma) out.push_back(out[i] + c);
  return out;
}

std::string sqrev_oracle(const std::string& w) {
  std::string block = "#" + std::string(w.rbegin(), w.rend()), out;
  for (std::size_t i = 0; i < w.size(); ++i) out += block;
  return out;
}

// Two registers substituting different words for '#' in one step.
const char* kSplitA = R"(transducer {
  alphabet a b '#';
  input a b;
  registers R = "#", S = "#";
  state q initial accepting;
  on * from q to q { R = R['#' := '#' . @]; S = S['#' := @ . '#']; }
  output q = R . S;
})";
const char* kSplitB = R"(transducer {
  alphabet a b '#';
  input a b;
  registers R = "#", S = "#";
  state q initial accepting;
  on * from q to q { R = R['#' := '#' . @]; S = S['#' := @ . '#']; }
  output q = S . R;
})";

}  // namespace

TEST(Transducer, RevIdRun) {
  Transducer t = load("revid.tr");
  EXPECT_EQ(run(t, "abb"), "bbaabb");
  EXPECT_EQ(run(t, ""), "");
}

TEST(Transducer, SqrevRunsMatchOracle) {
  Transducer t1 = load("sqrev1.tr"), t2 = load("sqrev2.tr");
  EXPECT_EQ(run(t1, "ab"), "#ba#ba");
  for (const auto& w : words_upto("ab", 5)) {
    EXPECT_EQ(run(t1, w), sqrev_oracle(w)) << w;
    EXPECT_EQ(run(t2, w), sqrev_oracle(w)) << w;
  }
}

TEST(Transducer, LetterOccurrenceAnalysis) {
  Transducer t = load("sqrev1.tr");
  auto l = letter_occurrence_analysis(t);
  std::size_t r = t.reg_index("R"), s = t.reg_index("S");
  EXPECT_EQ(l[s], (std::set<char>{'a', 'b'}));
  EXPECT_EQ(l[r], (std::set<char>{'#', 'a', 'b'}));

  Transducer idle = parse_transducer(
      "transducer { alphabet a b c; registers R = \"c\", S; state q initial accepting;"
      " on * from q to q { S = S . @; } output q = R; }");
  EXPECT_EQ(letter_occurrence_analysis(idle)[0], (std::set<char>{'c'}));

  // Soundness on random runs: register contents stay inside the analysis.
  std::mt19937 rng(7);
  for (const char* file : {"sqrev1.tr", "sqrev2.tr", "revid.tr"}) {
    Transducer u = load(file);
    auto an = letter_occurrence_analysis(u);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::string> regs = u.init;
      std::size_t q = u.initial;
      for (int k = 0; k < 8; ++k) {
        char c = u.input[rng() % u.input.size()];
        const Transition& tr = u.delta.at({q, c});
        std::vector<std::string> next;
        for (const auto& e : tr.updates) next.push_back(eval_expr(e, regs));
        regs = next;
        q = tr.to;
        for (std::size_t i = 0; i < regs.size(); ++i)
          for (char x : regs[i]) EXPECT_TRUE(an[i].count(x)) << file << " " << u.registers[i];
      }
    }
  }
}

TEST(Transducer, Classification) {
  EXPECT_EQ(classify(load("rev.tr"), load("id.tr")).fragment, Fragment::NoSubst);
  EXPECT_EQ(classify(load("sqrev1.tr"), load("sqrev2.tr")).fragment, Fragment::SimultaneousComInjective);
  Classification c = classify(parse_transducer(kSplitA), parse_transducer(kSplitB));
  EXPECT_EQ(c.fragment, Fragment::General);
  EXPECT_NE(c.reason.find("different substitutions"), std::string::npos);
}

TEST(Transducer, ReductionSoundness) {
  for (auto [f1, f2] : {std::pair{"rev.tr", "id.tr"}, std::pair{"sqrev1.tr", "sqrev2.tr"}}) {
    Transducer t1 = load(f1), t2 = load(f2);
    DifferenceGrammar d = to_difference_grammar(t1, t2);
    const Grammar& g = d.grammar;
    EXPECT_EQ(g.nonterminals.at(1).dim, 2 * (t1.registers.size() + t2.registers.size()));
    for (const auto& w : words_upto(t1.input, 4)) {
      // Derivation following w through the single state pair.
      auto node = std::make_shared<Derivation>();
      node->production = 0;
      for (char c : w) {
        auto up = std::make_shared<Derivation>();
        for (std::size_t k = 0; k < d.letter.size(); ++k)
          if (d.letter[k] == c) up->production = k;
        up->children = {node};
        node = up;
      }
      auto top = std::make_shared<Derivation>();
      top->production = g.productions.size() - 1;
      top->children = {node};
      EXPECT_EQ(decode_word(d, *top), w);
      Value v = replay(g, *top);
      QPoly expect = encode_word(d.sigma, *run(t1, w)).tilde - encode_word(d.sigma, *run(t2, w)).tilde;
      EXPECT_EQ(v[0], RatFunc(expect)) << w;
      EXPECT_EQ(v[0].is_zero(), run(t1, w) == run(t2, w));
    }
  }
}

TEST(Transducer, RevIdUnaryEquivalent) {
  Transducer rev = load("rev.tr", "a"), id = load("id.tr", "a");
  EquivResult r = equivalence_check(rev, id);
  ASSERT_EQ(r.verdict, EquivVerdict::Equivalent);
  ASSERT_TRUE(r.certificate);
  EXPECT_TRUE(check_certificate(r.difference->grammar, *r.certificate).ok());
}

TEST(Transducer, RevIdBinaryNotEquivalent) {
  EquivResult r = equivalence_check(load("rev.tr", "ab"), load("id.tr", "ab"));
  ASSERT_EQ(r.verdict, EquivVerdict::NotEquivalent);
  EXPECT_EQ(r.witness, "ab");
  EXPECT_EQ(r.output1, "ba");
  EXPECT_EQ(r.output2, "ab");
}

TEST(Transducer, SqrevCertificate) {
  Transducer t1 = load("sqrev1.tr"), t2 = load("sqrev2.tr");
  DifferenceGrammar d = to_difference_grammar(t1, t2);
  Certificate c = certificate_from_json(d.grammar, nlohmann::json::parse(slurp("sqrev.cert.json")));
  EXPECT_TRUE(check_certificate(d.grammar, c).ok());
  ZeroOptions o;
  o.certificates = {c};
  EquivResult r = equivalence_check(t1, t2, o);
  EXPECT_EQ(r.verdict, EquivVerdict::Equivalent);
  EXPECT_EQ(r.method, "certificate");
}

TEST(Transducer, SelfEquivalence) {
  Transducer t = load("revid.tr");
  DifferenceGrammar d = to_difference_grammar(t, t);
  for (const auto& e : enumerate_values(d.grammar, 6)) EXPECT_TRUE(is_zero_value(e.value));
  EXPECT_EQ(equivalence_check(t, t).verdict, EquivVerdict::Equivalent);
}

TEST(Transducer, AcceptanceMismatch) {
  Transducer even = parse_transducer(
      "transducer { alphabet a; registers R; state e initial accepting; state o;"
      " on a from e to o {} on a from o to e {} output e = R; }");
  Transducer all = parse_transducer(
      "transducer { alphabet a; registers R; state e initial accepting; on a from e to e {} output e = R; }");
  EquivResult r = equivalence_check(even, all);
  ASSERT_EQ(r.verdict, EquivVerdict::NotEquivalent);
  EXPECT_EQ(r.witness, "a");
  EXPECT_FALSE(r.output1);
  EXPECT_EQ(r.output2, "");
}

TEST(Transducer, GeneralFallsBackToWords) {
  Transducer a = parse_transducer(kSplitA), b = parse_transducer(kSplitB);
  EquivResult r = equivalence_check(a, b);
  ASSERT_EQ(r.verdict, EquivVerdict::NotEquivalent);
  EXPECT_EQ(r.fragment, Fragment::General);
  EXPECT_EQ(r.witness, "a");
  ZeroOptions o;
  o.budgets.size = 3;
  EXPECT_EQ(equivalence_check(a, a, o).verdict, EquivVerdict::Unknown);
}

TEST(Transducer, ParseErrors) {
  EXPECT_THROW(parse_transducer("transducer { alphabet a; registers R; state q initial accepting; "
                                "on a from q to q { T = R; } output q = R; }"),
               ParseError);
  EXPECT_THROW(parse_transducer("transducer { alphabet a b; input a b; registers R; state q initial accepting; "
                                "on a from q to q { R = R; } output q = R; }"),
               StructuralError);
  try {
    parse_transducer("transducer {\n  state q initial;\n  on a from q to r {}\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Transducer, SqrevAutomaticNeverRefutes) {
  ZeroOptions o;
  o.budgets.iters = 10;
  o.budgets.size = 8;
  EquivResult r = equivalence_check(load("sqrev1.tr"), load("sqrev2.tr"), o);
  EXPECT_NE(r.verdict, EquivVerdict::NotEquivalent);
  if (r.verdict == EquivVerdict::Equivalent) EXPECT_TRUE(check_certificate(r.difference->grammar, *r.certificate).ok());
  RecordProperty("verdict", to_string(r.verdict));
}
