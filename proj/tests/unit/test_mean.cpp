#include "fixtures.hpp"

using namespace fx;

namespace {

TEST(Ultracharge, Validation) {
  EXPECT_THROW(Ultracharge({}), Error);
  EXPECT_THROW(Ultracharge(qs({"1/2", "1/3"})), Error);
  EXPECT_THROW(Ultracharge(qs({"3/2", "-1/2"})), Error);
  EXPECT_EQ(Ultracharge(qs({"0", "1"})).support(), std::vector<std::size_t>{1});
}

TEST(Ultramean, PointMassIsFactor) {
  auto a = pra22();
  auto b = algebra({"1/3", "2/3"}).to_structure();
  MeanStructure mean = build_ultramean({a, b}, Ultracharge::point_mass(2, 0));
  const auto& q = mean.structure();
  ASSERT_EQ(q.size(), a.size());
  for (Element x = 0; x < 4; ++x) {
    Element cls = mean.class_of({x, 0});
    EXPECT_EQ(mean.class_of({x, 3}), cls);
    EXPECT_EQ(q.relation("mu").values[cls], a.relation("mu").values[x]);
    for (Element y = 0; y < 4; ++y) EXPECT_EQ(q.distance(cls, mean.class_of({y, 1})), a.distance(x, y));
  }
}

TEST(Ultramean, TwoCopiesOfTwoElementAlgebra) {
  auto m = pra2();
  MeanStructure mean = build_ultramean({m, m}, Ultracharge(qs({"1/2", "1/2"})));
  const auto& s = mean.structure();
  ASSERT_EQ(s.size(), 4u);
  EXPECT_TRUE(validate_structure(s).ok());
  std::multiset<Rational> mus(s.relation("mu").values.begin(), s.relation("mu").values.end());
  EXPECT_EQ(mus, (std::multiset<Rational>{0, q("1/2"), q("1/2"), 1}));
  // isomorphic to the algebra with atoms (1/2, 1/2) via (a, b) -> ab
  auto target = pra22();
  for (Element x = 0; x < 4; ++x) {
    for (Element y = 0; y < 4; ++y) {
      Element cx = mean.class_of({x & 1, x >> 1});
      Element cy = mean.class_of({y & 1, y >> 1});
      EXPECT_EQ(s.distance(cx, cy), target.distance(x, y));
      EXPECT_EQ(s.function("meet").values[cx * 4 + cy], mean.class_of({(x & y) & 1, (x & y) >> 1}));
    }
  }
}

TEST(Ultramean, SignatureMismatch) {
  EXPECT_THROW(build_ultramean({pra2(), fx::uniform3(qs({"0", "0", "0"}))}, Ultracharge::uniform(2)), Error);
}

TEST(Ultramean, CapExceeded) {
  auto m = algebra({"1/4", "1/4", "1/4", "1/4"}).to_structure();
  EXPECT_THROW(build_ultramean({m, m, m, m}, Ultracharge::uniform(4)), Error);
}

TEST(UltrameanIdentity, MeasureAtRawTuple) {
  auto m = pra2();
  auto r = check_ultramean_identity({m, m}, Ultracharge(qs({"1/2", "1/2"})), f(m, "mu(x)"), {"x"}, {{1, 0}});
  EXPECT_EQ(r.quotient_value, q("1/2"));
  EXPECT_EQ(r.integral_value, q("1/2"));
  EXPECT_TRUE(r.equal);
}

TEST(UltrameanIdentity, Constant) {
  auto m = pra2();
  auto r = check_ultramean_identity({m, m}, Ultracharge(qs({"1/3", "2/3"})), one(), {}, {});
  EXPECT_EQ(r.quotient_value, 1);
  EXPECT_TRUE(r.equal);
}

TEST(UltrameanIdentity, SupOfMeasure) {
  auto m = pra2();
  auto r = check_ultramean_identity({m, m}, Ultracharge(qs({"1/2", "1/2"})), f(m, "sup x. mu(x)"), {}, {});
  EXPECT_EQ(r.quotient_value, 1);
  EXPECT_EQ(r.integral_value, 1);
}

// ---- properties

TEST(MeanProperty, DiagonalIsElementary) {
  suite::Rng rng(21);
  Signature s = suite::test_signature();
  for (int i = 0; i < 30; ++i) {
    FiniteStructure base = suite::random_structure(rng, s, 1 + suite::pick(rng, 3));
    Ultracharge mu = suite::random_ultracharge(rng, 2);
    MeanStructure power = build_powermean(base, mu);
    Formula phi = suite::random_formula(rng, s, {"x"});
    for (Element a = 0; a < base.size(); ++a) {
      ASSERT_EQ(eval_formula(base, phi, {{"x", a}}), eval_formula(power.structure(), phi, {{"x", diagonal(power, 2, a)}}));
    }
  }
}

TEST(MeanProperty, QuotientMetricIsWeightedSum) {
  suite::Rng rng(22);
  Signature s = suite::test_signature();
  for (int i = 0; i < 20; ++i) {
    std::vector<FiniteStructure> fs{suite::random_structure(rng, s, 2), suite::random_structure(rng, s, 3)};
    Ultracharge mu = suite::random_ultracharge(rng, 2);
    MeanStructure mean = build_ultramean(fs, mu);
    for (Element a0 = 0; a0 < 2; ++a0) {
      for (Element a1 = 0; a1 < 3; ++a1) {
        for (Element b0 = 0; b0 < 2; ++b0) {
          for (Element b1 = 0; b1 < 3; ++b1) {
            Rational raw = raw_distance(fs, mu, {a0, a1}, {b0, b1});
            Element x = mean.class_of({a0, a1});
            Element y = mean.class_of({b0, b1});
            EXPECT_EQ(mean.structure().distance(x, y), raw);
            EXPECT_EQ(x == y, raw == 0);
          }
        }
      }
    }
  }
}

TEST(MeanProperty, PredicateTablesIntegrate) {
  // a distance predicate on each factor integrates to the one on the mean
  auto m = pra22();
  Ultracharge mu(qs({"1/4", "3/4"}));
  MeanStructure mean = build_ultramean({m, m}, mu);
  auto phi = f(m, "inf y. (d(x, y) + mu(meet(y, comp(x))))");
  auto table = formula_predicate(mean.structure(), phi, {"x"});
  auto base = formula_predicate(m, phi, {"x"});
  for (Element a = 0; a < 4; ++a) {
    for (Element b = 0; b < 4; ++b) {
      EXPECT_EQ(table.values[mean.class_of({a, b})], q("1/4") * base.values[a] + q("3/4") * base.values[b]);
    }
  }
}

}  // namespace
