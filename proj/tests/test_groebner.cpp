#include <gtest/gtest.h>

#include "pgz/groebner.hpp"
#include "pgz/parse.hpp"

using namespace pgz;

namespace {

using QIdeal = Ideal<Rat>;

VarTablePtr xyz() { return VarTable::make_ordinary({"x", "y", "z"}); }
QPoly P(const char* s, const VarTablePtr& t) { return parse_poly(s, t); }

QIdeal I(const VarTablePtr& t, std::initializer_list<const char*> gens) {
  std::vector<QPoly> g;
  for (const char* s : gens) g.push_back(P(s, t));
  return QIdeal(t, g);
}

}  // namespace

TEST(Groebner, TwistedCubic) {
  auto t = xyz();
  // x = s, y = s^2, z = s^3 ; y^3 - z^2 vanishes, x*y - z vanishes.
  QIdeal c = I(t, {"y - x^2", "z - x^3"});
  EXPECT_TRUE(c.contains(P("y^3 - z^2", t)));
  EXPECT_TRUE(c.contains(P("x*y - z", t)));
  EXPECT_FALSE(c.contains(P("y - z", t)));
}

TEST(Groebner, UnitIdeal) {
  auto t = xyz();
  QIdeal u = I(t, {"x*y - 1", "x"});
  EXPECT_TRUE(u.is_unit());
  EXPECT_TRUE(u.contains(P("z^5 + 7", t)));
  EXPECT_FALSE(I(t, {"x*y - 1"}).is_unit());
}

TEST(Groebner, ReducedBasisLex) {
  auto t = VarTable::make_ordinary({"x", "y"});
  // Intersection of circle and line y = x: x^2 = 1/2 after elimination.
  auto g = buchberger<Rat>(t, {P("x^2 + y^2 - 1", t), P("x - y", t)}, MonomialOrder::lex());
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], P("x - y", t));
  EXPECT_EQ(g[1], P("y^2 - 1/2", t));
}

TEST(Groebner, Intersection) {
  auto t = VarTable::make_ordinary({"x", "y"});
  QIdeal r = ideal_intersect(I(t, {"x"}), I(t, {"y"}));
  EXPECT_TRUE(ideal_equal(r, I(t, {"x*y"})));
}

TEST(Groebner, EliminationParabola) {
  auto t = VarTable::make_ordinary({"s", "x", "y"});
  QIdeal e = eliminate(I(t, {"x - s", "y - s^2"}), {0});
  EXPECT_TRUE(ideal_equal(e, I(t, {"y - x^2"})));
}

TEST(Groebner, Radical) {
  auto t = xyz();
  QIdeal i = I(t, {"x^3", "y^2*z"});
  EXPECT_FALSE(i.contains(P("x", t)));
  EXPECT_TRUE(radical_member(P("x", t), i));
  EXPECT_TRUE(radical_member(P("y*z", t), i));
  EXPECT_FALSE(radical_member(P("y", t), i));
}

TEST(Groebner, VanishingPoints) {
  auto t = VarTable::make_ordinary({"x", "y"});
  std::vector<std::vector<Rat>> pts = {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(4)}};
  QIdeal v = vanishing_ideal_of_points(t, pts);
  EXPECT_TRUE(v.contains(P("y - x^2", t)));
  EXPECT_TRUE(v.contains(P("x*(x - 1)*(x - 2)", t)));
  EXPECT_FALSE(v.contains(P("y - x", t)));
  for (const auto& g : v.groebner())
    for (const auto& p : pts) EXPECT_EQ(evaluate(g, std::span<const Rat>(p)), Rat(0));
}

TEST(Groebner, RationalFunctionCoefficients) {
  auto params = VarTable::make({{"at", VarClass::Ordinary}, {"ab", VarClass::Bar}});
  auto y = VarTable::make_ordinary({"y1", "y2"});
  std::vector<KPoly> gens = {parse_kpoly("(ab - 1)*y1 - at*(y2 - 1)", params, y)};
  Ideal<RatFunc> k(y, gens);
  EXPECT_TRUE(k.contains(parse_kpoly("y1 - at/(ab - 1)*(y2 - 1)", params, y)));
  EXPECT_FALSE(k.contains(parse_kpoly("y1", params, y)));
}

TEST(Groebner, FractionalExponentRejected) {
  auto t = VarTable::make({{"xb", VarClass::Bar}});
  EXPECT_THROW(QIdeal(t, {P("xb^(1/2) - 1", t)}).groebner(), DomainError);
}
