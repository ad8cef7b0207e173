#include <gtest/gtest.h>

#include <random>

#include "pgz/error.hpp"
#include "pgz/parse.hpp"
#include "pgz/ratfunc.hpp"

using namespace pgz;

namespace {

VarTablePtr ab_table() {
  return VarTable::make({{"at", VarClass::Ordinary}, {"ab", VarClass::Bar}, {"bt", VarClass::Ordinary},
                         {"bb", VarClass::Bar}});
}

QPoly P(const char* s, const VarTablePtr& t) { return parse_poly(s, t); }

}  // namespace

TEST(Exp, ArithmeticAndOverflow) {
  Exp a(1, 2), b(1, 3);
  EXPECT_EQ(a + b, Exp(5, 6));
  EXPECT_EQ(a * b, Exp(1, 6));
  EXPECT_EQ(a - a, Exp(0));
  EXPECT_EQ(Exp(2, 4), Exp(1, 2));
  EXPECT_THROW(Exp(INT64_MAX) * Exp(3), DomainError);
}

TEST(Polynomial, RingOps) {
  auto t = ab_table();
  QPoly x = P("at + ab", t), y = P("at - ab", t);
  EXPECT_EQ(x * y, P("at^2 - ab^2", t));
  EXPECT_EQ((x + y) - x, y);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ(x.pow(3), x * x * x);
}

TEST(Polynomial, FractionalBarExponent) {
  auto t = ab_table();
  QPoly h = P("ab^(1/2)", t);
  EXPECT_EQ(h * h, P("ab", t));
  EXPECT_THROW(P("at^(1/2)", t), ParseError);
  EXPECT_THROW(QPoly::variable(t, "at", Exp(1, 2)), DomainError);
}

TEST(Polynomial, Evaluate) {
  auto t = ab_table();
  QPoly p = P("ab^2*bb^3", t);
  std::vector<Rat> pt = {Rat(0), Rat(2), Rat(0), Rat(2)};
  EXPECT_EQ(evaluate(p, std::span<const Rat>(pt)), Rat(32));
}

TEST(Polynomial, Substitute) {
  auto t = ab_table();
  QPoly p = P("at*ab + 3", t);
  std::vector<std::optional<QPoly>> img(4);
  img[0] = P("bt + 1", t);
  img[1] = P("bb^2", t);
  EXPECT_EQ(substitute(p, img, t), P("bt*bb^2 + bb^2 + 3", t));
  std::vector<std::optional<QPoly>> img2(4);
  img2[1] = P("bb^2", t);
  EXPECT_EQ(substitute(P("ab^(1/2)", t), img2, t), P("bb", t));
}

TEST(Polynomial, ToStringCanonical) {
  auto t = ab_table();
  EXPECT_EQ(P("ab*at - 2 + 1/2*at^2", t).to_string(), "1/2*at^2 + at*ab - 2");
  EXPECT_EQ(P("0", t).to_string(), "0");
}

TEST(Polynomial, PropertyRandomRing) {
  auto t = ab_table();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
  auto rnd = [&]() {
    QPoly r(t);
    for (int k = 0; k < 4; ++k) {
      Monomial m({{0, Exp(e(rng))}, {1, Exp(e(rng))}, {2, Exp(e(rng))}});
      r += QPoly::monomial(t, m, Rat(c(rng)));
    }
    return r;
  };
  for (int i = 0; i < 50; ++i) {
    QPoly a = rnd(), b = rnd(), d = rnd();
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + d, a + (b + d));
    std::vector<Rat> pt = {Rat(c(rng)), Rat(c(rng)), Rat(c(rng)), Rat(1)};
    std::span<const Rat> s(pt);
    EXPECT_EQ(evaluate(a * b, s), evaluate(a, s) * evaluate(b, s));
  }
}

TEST(RatFunc, NormalizeAndEquality) {
  auto t = ab_table();
  RatFunc f = parse_ratfunc("(ab^2 - 1)/(ab - 1)", t);
  RatFunc g = parse_ratfunc("ab + 1", t);
  EXPECT_EQ(f, g);
  RatFunc h = parse_ratfunc("1/(ab - 1) - 1/(ab - 1)", t);
  EXPECT_TRUE(h.is_zero());
  RatFunc inv = parse_ratfunc("at/(ab - 1)", t).inverse();
  EXPECT_EQ(inv * parse_ratfunc("at", t), parse_ratfunc("ab - 1", t));
  EXPECT_THROW(RatFunc(0).inverse(), DomainError);
}

TEST(RatFunc, EvaluatePole) {
  auto t = ab_table();
  RatFunc f = parse_ratfunc("at/(ab - 1)", t);
  std::vector<Rat> pt = {Rat(3), Rat(2), Rat(0), Rat(0)};
  EXPECT_EQ(evaluate_at(f, std::span<const Rat>(pt)), Rat(3));
  pt[1] = 1;
  EXPECT_THROW(evaluate_at(f, std::span<const Rat>(pt)), DomainError);
}

TEST(Parse, Errors) {
  auto t = ab_table();
  try {
    P("at + + ", t);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  EXPECT_THROW(P("zz", t), ParseError);
}

TEST(Parse, SplitCoefficients) {
  auto params = VarTable::make({{"at", VarClass::Ordinary}, {"ab", VarClass::Bar}});
  auto y = VarTable::make_ordinary({"y1", "y2"});
  auto all = concat_tables(params, y);
  KPoly k = parse_kpoly("(ab - 1)*y1 - at*(y2 - 1)", params, y);
  EXPECT_EQ(k.size(), 3u);
  EXPECT_EQ(flatten_coefficients(k, all), parse_ratfunc("(ab - 1)*y1 - at*(y2 - 1)", all));
}
