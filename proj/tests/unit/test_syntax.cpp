#include "fixtures.hpp"

using namespace fx;

namespace {

Signature sig() { return pra::pra_signature({"c"}); }

TEST(Parse, ConstantFormula) {
  Formula phi = parse_formula("1", sig());
  EXPECT_EQ(phi->kind, FormulaKind::One);
  EXPECT_TRUE(free_variables(phi).empty());
}

TEST(Parse, QuantifiedSum) {
  Formula phi = parse_formula("inf x. mu(x) + 1/2 * d(x, c)", sig());
  Formula expected = inf("x", sum(atom("mu", {Term::var("x")}),
                                  scale(q("1/2"), metric(Term::var("x"), Term::constant("c")))));
  EXPECT_TRUE(structurally_equal(phi, expected));
  EXPECT_TRUE(free_variables(phi).empty());
}

TEST(Parse, ArityMismatch) { EXPECT_THROW(parse_formula("mu(x, y)", sig()), ParseError); }

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula("nu(x)", sig()), ParseError);
  EXPECT_THROW(parse_formula("mu(x) +", sig()), ParseError);
  EXPECT_THROW(parse_formula("1/0 * mu(x)", sig()), ParseError);
  EXPECT_THROW(parse_formula("mu(frob(x))", sig()), ParseError);
  try {
    parse_formula("mu(x) $ 1", sig());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Parse, SubtractionIsSugar) {
  Formula a = parse_formula("mu(x) - d(x, y)", sig());
  Formula b = parse_formula("mu(x) + -1 * d(x, y)", sig());
  EXPECT_TRUE(structurally_equal(a, b));
}

TEST(Parse, ScaleBindsTighterThanSum) {
  Formula phi = parse_formula("2 * mu(x) + mu(y)", sig());
  ASSERT_EQ(phi->kind, FormulaKind::Sum);
  EXPECT_EQ(phi->left->kind, FormulaKind::Scale);
}

TEST(Parse, QuantifierExtendsRight) {
  Formula phi = parse_formula("sup x. mu(x) + mu(y)", sig());
  ASSERT_EQ(phi->kind, FormulaKind::Sup);
  EXPECT_EQ(phi->left->kind, FormulaKind::Sum);
  EXPECT_EQ(free_variables(phi), std::vector<std::string>{"y"});
}

TEST(Parse, Conditions) {
  Condition c = parse_condition("mu(x) >= 1/2", sig());
  EXPECT_EQ(c.lhs->kind, FormulaKind::Scale);
  EXPECT_EQ(c.rhs->kind, FormulaKind::Atom);
  EXPECT_FALSE(is_closed(c));
  EXPECT_TRUE(is_closed(parse_condition("sup x. mu(x) <= 1", sig())));
}

TEST(Certificate, Metric) {
  auto c = certificate(parse_formula("d(x, y)", sig()), sig());
  EXPECT_EQ(c.lambda, 2);
  EXPECT_EQ(c.bound, 1);
}

TEST(Certificate, Constant) {
  auto c = certificate(one(), sig());
  EXPECT_EQ(c.lambda, 0);
  EXPECT_EQ(c.bound, 1);
}

TEST(Certificate, WeightedSum) {
  auto c = certificate(parse_formula("2 * mu(x) + mu(y)", sig()), sig());
  EXPECT_EQ(c.lambda, 3);
  EXPECT_EQ(c.bound, 3);
}

TEST(Certificate, FunctionsAndQuantifiers) {
  Signature s({"c"}, {{"g", 2, Rational(3)}}, {{"R", 1, Rational(1, 2)}});
  auto c = certificate(parse_formula("-2 * R(g(x, c)) + inf y. R(g(x, y))", s), s);
  // |-2| * 1/2 * 3 * (1 + 0) + 1/2 * 3 * (1 + 1)
  EXPECT_EQ(c.lambda, 6);
  EXPECT_EQ(c.bound, 3);
}

TEST(Combine, Singleton) {
  Condition c = parse_condition("mu(x) <= 1/2", sig());
  Condition out = affine_combine({c}, {Rational(1)});
  EXPECT_TRUE(structurally_equal(out.lhs, c.lhs));
  EXPECT_TRUE(structurally_equal(out.rhs, c.rhs));
}

TEST(Combine, TwoConditions) {
  Condition c1 = parse_condition("mu(x) <= d(x, y)", sig());
  Condition c2 = parse_condition("mu(y) <= 1", sig());
  Condition out = affine_combine({c1, c2}, {Rational(2), Rational(1)});
  EXPECT_EQ(render(out), "2 * mu(x) + mu(y) <= 2 * d(x, y) + 1");
}

TEST(Combine, ContradictionFromTwoConditions) {
  auto m = pra2();
  Condition out = affine_combine({parse_condition("mu(x) <= 0", m.signature()),
                                  parse_condition("1 <= mu(x)", m.signature())},
                                 {Rational(1), Rational(1)});
  for (Element a = 0; a < m.size(); ++a) EXPECT_FALSE(holds(m, out, {{"x", a}}));
}

TEST(Combine, Errors) {
  Condition c = parse_condition("mu(x) <= 1", sig());
  EXPECT_THROW(affine_combine({}, {}), Error);
  EXPECT_THROW(affine_combine({c}, {Rational(-1)}), Error);
  EXPECT_THROW(affine_combine({c}, {Rational(0)}), Error);
  EXPECT_THROW(affine_combine({c, c}, {Rational(1)}), Error);
}

TEST(Signature, RejectsBadSymbols) {
  EXPECT_THROW(Signature({"d"}, {}, {}), Error);
  EXPECT_THROW(Signature({"a", "a"}, {}, {}), Error);
  EXPECT_THROW(Signature({}, {}, {{"R", 1, Rational(-1)}}), Error);
}

// ---- properties

TEST(SyntaxProperty, RenderRoundTrip) {
  suite::Rng rng(11);
  Signature s = suite::test_signature();
  for (int i = 0; i < 500; ++i) {
    Formula phi = suite::random_formula(rng, s, {"x", "y"});
    Formula back = parse_formula(render(phi), s);
    ASSERT_TRUE(structurally_equal(phi, back)) << render(phi);
  }
}

TEST(SyntaxProperty, CombinationSoundness) {
  suite::Rng rng(12);
  Signature s = suite::test_signature();
  suite::FormulaOptions opts;
  opts.depth = 2;
  for (int i = 0; i < 100; ++i) {
    FiniteStructure m = suite::random_structure(rng, s, 1 + suite::pick(rng, 3));
    std::vector<Condition> conds;
    std::vector<Rational> coeffs;
    for (int k = 0; k < 3; ++k) {
      conds.push_back({suite::random_formula(rng, s, {"x"}, opts), suite::random_formula(rng, s, {"x"}, opts)});
      coeffs.push_back(suite::grid_rational(rng, 0, 4, 2));
    }
    if (coeffs[0] == 0) coeffs[0] = 1;
    Condition combined = affine_combine(conds, coeffs);
    for (Element a = 0; a < m.size(); ++a) {
      bool all = true;
      for (const auto& c : conds) all = all && holds(m, c, {{"x", a}});
      if (all) EXPECT_TRUE(holds(m, combined, {{"x", a}}));
    }
  }
}

}  // namespace
