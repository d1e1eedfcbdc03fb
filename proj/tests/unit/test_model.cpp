#include "fixtures.hpp"

using namespace fx;

namespace {

FiniteStructure point() { return FiniteStructure(Signature(), {"p"}, {{Rational(0)}}, {}, {}, {}); }

TEST(Validate, OnePoint) { EXPECT_TRUE(validate_structure(point()).ok()); }

TEST(Validate, IdentityOfIndiscernibles) {
  std::vector<std::vector<Rational>> d{{0, 1, 1}, {1, 0, 0}, {1, 0, 0}};
  FiniteStructure m(Signature(), {"a", "b", "c"}, d, {}, {}, {});
  auto r = validate_structure(m);
  ASSERT_EQ(r.status, ValidationReport::Status::AxiomViolation);
  EXPECT_EQ(r.axiom, "identity of indiscernibles");
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_EQ(r.witness[0], Tuple{1});
  EXPECT_EQ(r.witness[1], Tuple{2});
}

TEST(Validate, AlgebraExportPasses) {
  auto m = pra22();
  EXPECT_TRUE(validate_structure(m).ok());
  const auto& mu = m.relation("mu").values;
  for (Element x = 0; x < 4; ++x) {
    for (Element y = 0; y < 4; ++y) EXPECT_LE(abs(Rational(mu[x] - mu[y])), m.distance(x, y));
  }
}

TEST(Validate, ShapeErrorsAreDistinct) {
  FiniteStructure m(Signature({}, {}, {{"R", 1, Rational(1)}}), {"a", "b"}, {{0, 1}, {1, 0}}, {}, {},
                    {RelationTable{1, {Rational(0)}}});
  EXPECT_EQ(validate_structure(m).status, ValidationReport::Status::ShapeError);
}

TEST(Validate, OtherAxioms) {
  auto bad = [](std::vector<std::vector<Rational>> d) {
    return validate_structure(FiniteStructure(Signature(), {"a", "b", "c"}, std::move(d), {}, {}, {})).axiom;
  };
  EXPECT_EQ(bad({{0, 2, 1}, {2, 0, 1}, {1, 1, 0}}), "metric range [0,1]");
  EXPECT_EQ(bad({{0, 1, 1}, {q("1/2"), 0, 1}, {1, 1, 0}}), "symmetry");
  EXPECT_EQ(bad({{0, 1, q("1/4")}, {1, 0, q("1/4")}, {q("1/4"), q("1/4"), 0}}), "triangle inequality");

  FiniteStructure m(Signature({}, {}, {{"R", 1, Rational(1, 2)}}), {"a", "b"}, {{0, 1}, {1, 0}}, {}, {},
                    {RelationTable{1, {Rational(0), Rational(1)}}});
  auto r = validate_structure(m);
  EXPECT_EQ(r.axiom, "relation Lipschitz bound");
  EXPECT_EQ(r.symbol, "R");
}

TEST(Eval, Constant) { EXPECT_EQ(eval_formula(pra22(), one(), {}), 1); }

TEST(Eval, SupOfMeasure) { EXPECT_EQ(eval_formula(pra22(), f(pra22(), "sup x. mu(x)"), {}), 1); }

TEST(Eval, InfOfJoinIncrement) {
  auto m = pra22();
  EXPECT_EQ(eval_formula(m, f(m, "inf x. inf y. (mu(join(x, y)) - mu(x))"), {}), 0);
}

TEST(Eval, UnboundVariable) {
  auto m = pra22();
  EXPECT_THROW(eval_formula(m, f(m, "mu(x)"), {}), UnboundVariableError);
}

TEST(Eval, TableOrder) {
  auto m = pra22();
  auto t = formula_table(m, f(m, "d(x, y)"), {"x", "y"});
  ASSERT_EQ(t.size(), 16u);
  EXPECT_EQ(t[0 * 4 + 3], 1);
  EXPECT_EQ(t[1 * 4 + 2], 1);
  EXPECT_EQ(t[1 * 4 + 3], q("1/2"));
}

TEST(Automorphisms, OnePoint) { EXPECT_EQ(automorphisms(point()).size(), 1u); }

TEST(Automorphisms, SymmetricAlgebra) {
  auto g = automorphisms(pra22());
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], (Permutation{0, 1, 2, 3}));
  EXPECT_EQ(g[1], (Permutation{0, 2, 1, 3}));
}

TEST(Automorphisms, AsymmetricAlgebra) {
  EXPECT_EQ(automorphisms(algebra({"1/3", "2/3"}).to_structure()).size(), 1u);
}

// ---- properties

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

TEST(ModelProperty, AutomorphismGroupAndInvariance) {
  std::vector<FiniteStructure> ms{pra22(), algebra({"1/3", "1/3", "1/3"}).to_structure(),
                                  uniform3({Rational(0), Rational(0), Rational(1)})};
  suite::Rng rng(3);
  for (const auto& m : ms) {
    auto group = automorphisms(m);
    std::set<Permutation> set(group.begin(), group.end());
    for (const auto& g : group) {
      Permutation inv(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) inv[g[i]] = i;
      EXPECT_TRUE(set.count(inv));
      for (const auto& h : group) EXPECT_TRUE(set.count(compose(g, h)));
    }
    for (int k = 0; k < 20; ++k) {
      Formula phi = suite::random_formula(rng, m.signature(), {"x"});
      auto table = formula_table(m, phi, {"x"});
      for (const auto& g : group) {
        for (Element a = 0; a < m.size(); ++a) ASSERT_EQ(table[a], table[g[a]]);
      }
    }
  }
}

TEST(ModelProperty, EvaluationRespectsCertificates) {
  suite::Rng rng(4);
  Signature s = suite::test_signature();
  for (int i = 0; i < 40; ++i) {
    FiniteStructure m = suite::random_structure(rng, s, 1 + suite::pick(rng, 4));
    ASSERT_TRUE(validate_structure(m).ok());
    Formula phi = suite::random_formula(rng, s, {"x"});
    auto cert = certificate(phi, s);
    auto t = formula_table(m, phi, {"x"});
    for (Element a = 0; a < m.size(); ++a) {
      for (Element b = 0; b < m.size(); ++b) EXPECT_LE(abs(Rational(t[a] - t[b])), cert.lambda * m.distance(a, b));
    }
  }
}

}  // namespace
