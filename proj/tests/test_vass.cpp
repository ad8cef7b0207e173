#include <gtest/gtest.h>

#include <random>

#include "pgz/transducer.hpp"
#include "pgz/vass.hpp"
#include "vass_family.hpp"

using namespace pgz;

namespace {

const char* kExample = "vass dim 2 { state q0 initial accepting; q0 -[+1 on 1]-> q0; q0 -[reset 1 2]-> q0; }";

ResetVass dim1(std::vector<VassTransition> ts) {
  ResetVass v;
  v.dim = 1;
  v.states = {"q"};
  v.accepting = {true};
  v.transitions = std::move(ts);
  return v;
}

VassTransition step(std::vector<std::int64_t> s, std::size_t from = 0, std::size_t to = 0) {
  VassTransition t;
  t.from = from;
  t.to = to;
  t.step = std::move(s);
  return t;
}

VassTransition reset(std::vector<std::size_t> r, std::size_t from = 0, std::size_t to = 0) {
  VassTransition t;
  t.from = from;
  t.to = to;
  t.is_reset = true;
  t.resets = std::move(r);
  return t;
}

QPoly poly(const NumericTransducer& t, const std::string& s) {
  QPoly x = QPoly::variable(t.ring, 0), one = QPoly::constant(Rat(1), t.ring), p = one;
  for (char c : s) p *= x - QPoly::constant(Rat(c - '0'), t.ring);
  return p;
}

}  // namespace

TEST(Vass, ParseAndPrint) {
  ResetVass v = parse_vass(kExample);
  EXPECT_EQ(v.dim, 2u);
  ASSERT_EQ(v.transitions.size(), 2u);
  EXPECT_EQ(v.transitions[0].step, (std::vector<std::int64_t>{1, 0}));
  EXPECT_TRUE(v.transitions[1].is_reset);
  EXPECT_EQ(v.transitions[1].resets, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(v.is_normalized());
  EXPECT_EQ(vass_to_string(parse_vass(vass_to_string(v))), vass_to_string(v));
  EXPECT_THROW(parse_vass("vass dim 1 { state q initial; q -[+1 on 2]-> q; }"), ParseError);
  EXPECT_THROW(parse_vass("vass dim 1 { state q; }"), ParseError);
}

TEST(Vass, NormalizeExamples) {
  ResetVass two = normalize(dim1({step({2})}));
  ASSERT_EQ(two.transitions.size(), 2u);
  EXPECT_EQ(two.transitions[0].step, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(two.transitions[0].to, two.transitions[1].from);
  EXPECT_EQ(two.transitions[1].to, 0u);
  EXPECT_FALSE(two.accepting[two.transitions[0].to]);

  ResetVass unit = dim1({step({1}), step({-1}), reset({0})});
  EXPECT_EQ(vass_to_string(normalize(unit)), vass_to_string(unit));

  ResetVass mixed = parse_vass("vass dim 2 { state q initial accepting; q -[+1 on 1, -1 on 2]-> q; }");
  ResetVass m = normalize(mixed);
  ASSERT_EQ(m.transitions.size(), 2u);
  EXPECT_EQ(m.transitions[0].step, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(m.transitions[1].step, (std::vector<std::int64_t>{0, -1}));

  ResetVass zero = normalize(dim1({step({0})}));
  EXPECT_TRUE(zero.transitions[0].is_reset);
  EXPECT_TRUE(zero.transitions[0].resets.empty());
  EXPECT_THROW(compile_to_transducer(mixed), StructuralError);
}

TEST(Vass, NormalizePreservesReachability) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    ResetVass v;
    v.dim = 1 + rng() % 2;
    std::size_t nq = 1 + rng() % 2;
    for (std::size_t q = 0; q < nq; ++q) {
      v.states.push_back("q" + std::to_string(q));
      v.accepting.push_back(rng() % 2 == 0);
    }
    for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) {
      if (rng() % 4 == 0) {
        v.transitions.push_back(reset({rng() % v.dim}, rng() % nq, rng() % nq));
      } else {
        std::vector<std::int64_t> s(v.dim);
        for (auto& x : s) x = static_cast<std::int64_t>(rng() % 5) - 2;
        v.transitions.push_back(step(s, rng() % nq, rng() % nq));
      }
    }
    ResetVass n = normalize(v);
    ASSERT_TRUE(n.is_normalized());
    for (std::size_t min_steps : {0u, 1u}) {
      Reach a = brute_force_reach(v, 5, min_steps), b = brute_force_reach(n, 5, min_steps);
      // A unit run of length <= 5 projects to a source run of length <= 5,
      // and a source step expands to at most 4 unit steps.
      if (b.reachable) EXPECT_TRUE(a.reachable) << vass_to_string(v);
      if (a.reachable) EXPECT_TRUE(brute_force_reach(n, 20, min_steps).reachable) << vass_to_string(v);
      if (a.reachable) EXPECT_TRUE(is_zero_run(v, a.run));
    }
  }
}

TEST(Vass, BruteForceExamples) {
  ResetVass v = dim1({step({1}), reset({0})});
  EXPECT_TRUE(is_zero_run(v, {0, 1}));
  EXPECT_EQ(brute_force_reach(v, 5, 1).run, (std::vector<std::size_t>{1}));
  Reach r = brute_force_reach(v, 5, 2);
  ASSERT_TRUE(r.reachable);
  EXPECT_EQ(r.run, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(brute_force_reach(v, 5).reachable);
  EXPECT_TRUE(brute_force_reach(v, 5).run.empty());

  ResetVass up = dim1({step({1})});
  for (std::size_t len = 1; len <= 8; ++len) EXPECT_FALSE(brute_force_reach(up, len, 1).reachable);
  EXPECT_TRUE(brute_force_reach(up, 0).reachable);

  ResetVass down = dim1({step({-1})});
  EXPECT_FALSE(brute_force_reach(down, 6, 1).reachable);
  EXPECT_FALSE(is_zero_run(down, {0}));

  ResetVass pm = dim1({step({1}), step({-1})});
  Reach p = brute_force_reach(pm, 6, 3);
  ASSERT_TRUE(p.reachable);
  EXPECT_EQ(p.run.size(), 4u);
}

TEST(Vass, CompiledRegisters) {
  ResetVass v = dim1({step({1}), step({-1}), reset({0})});
  NumericTransducer t = compile_to_transducer(v);
  EXPECT_EQ(t.registers, (std::vector<std::string>{"R1", "R1aux", "R2", "S1"}));
  EXPECT_EQ(t.input, "abc");

  NumRun r = run_numeric(t, "aab");
  EXPECT_EQ(r.registers.back()[0], poly(t, "123"));
  EXPECT_EQ(r.registers.back()[3], QPoly::constant(Rat(1), t.ring));
  EXPECT_TRUE(r.output.is_zero());

  // (x-1)(x-2)(x-3)(x-4) at 0 times R2 = 2*3*2*1.
  NumRun z = run_numeric(t, "aabb");
  EXPECT_EQ(z.output, QPoly::constant(Rat(24 * 12), t.ring));

  NumRun dip = run_numeric(t, "baa");
  for (std::size_t k = 1; k < dip.registers.size(); ++k) EXPECT_TRUE(dip.registers[k][2].is_zero());
  EXPECT_TRUE(dip.output.is_zero());
  NumRun dip_reset = run_numeric(t, "bc");
  EXPECT_TRUE(dip_reset.registers.back()[3].is_zero());
  EXPECT_TRUE(dip_reset.output.is_zero());

  EXPECT_EQ(run_numeric(t, "").output, QPoly::constant(Rat(1), t.ring));
  v.accepting = {false};
  EXPECT_TRUE(run_numeric(compile_to_transducer(v), "").output.is_zero());
}

TEST(Vass, MismatchGoesToError) {
  ResetVass v = parse_vass(
      "vass dim 1 { state p initial; state q accepting; p -[+1 on 1]-> q; q -[-1 on 1]-> q; }");
  NumericTransducer t = compile_to_transducer(v);
  EXPECT_FALSE(run_numeric(t, "ab").output.is_zero());
  NumRun bad = run_numeric(t, "ba");
  EXPECT_EQ(t.states[bad.states.back()], "error");
  EXPECT_TRUE(bad.output.is_zero());
}

TEST(Vass, DslText) {
  NumericTransducer t = compile_to_transducer(parse_vass(kExample));
  std::string s = to_dsl(t);
  EXPECT_NE(s.find("registers R1 = 1, R1aux = 1, R2 = 1, S1 = 0, S2 = 0;"), std::string::npos) << s;
  EXPECT_NE(s.find("on a from q0 to q0 { R1 = R1 * (x - R1aux); R1aux = R1aux + 1; R2 = R2 * (S1 + 2) * (S2 + 1); "
                   "S1 = S1 + 1; }"),
            std::string::npos)
      << s;
  EXPECT_NE(s.find("R2 = R2 * 1 * 1;"), std::string::npos) << s;
  EXPECT_NE(s.find("output q0 = R1[x := S1 + S2] * R2;"), std::string::npos) << s;
  EXPECT_NE(s.find("on * from error to error {}"), std::string::npos) << s;
}

TEST(Vass, EndToEndFamily) {
  fixture::FamilyReport r;
  for (const auto& v : fixture::vass_family(200)) fixture::check_end_to_end(v, 5, r);
  EXPECT_EQ(r.mismatches, 0u) << r.first_failure;
  EXPECT_EQ(r.invariant_failures, 0u) << r.first_failure;
  EXPECT_GT(r.words, 10000u);
}
