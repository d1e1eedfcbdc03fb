#include "fixtures.hpp"

using namespace fx;
using pra::Elem;
using pra::MeasureAlgebra;

namespace {

TEST(Build, Examples) {
  auto two = algebra({"1"});
  EXPECT_EQ(two.size(), 2u);
  EXPECT_EQ(two.measure(1), 1);

  auto eight = algebra({"1/2", "1/3", "1/6"});
  ASSERT_EQ(eight.size(), 8u);
  EXPECT_EQ(eight.measure(0b011), q("5/6"));
  EXPECT_EQ(eight.measure(0b110), q("1/2"));
  EXPECT_EQ(eight.measure(0b101), q("2/3"));
  EXPECT_EQ(eight.label(0b011), "110");
  EXPECT_EQ(eight.parse("110"), 0b011u);
  EXPECT_TRUE(validate_structure(eight.to_structure()).ok());
  EXPECT_EQ(pra::check_axioms(eight), "");

  EXPECT_THROW(algebra({"1/2", "1/2", "1/2"}), Error);
  EXPECT_THROW(algebra({"1", "0"}), Error);
  EXPECT_THROW(algebra({"3/2", "-1/2"}), Error);
  EXPECT_THROW(MeasureAlgebra(std::vector<Rational>(11, Rational(1, 11))), Error);
  EXPECT_THROW(eight.parse("10"), Error);
  EXPECT_THROW(eight.parse("1x0"), Error);
}

TEST(Axioms, DetectsBrokenTables) {
  auto m = pra22();
  auto tables = m.relations();
  tables[0].values[1] = q("1/3");
  FiniteStructure bad(m.signature(), m.labels(), m.metric(), m.constants(), m.functions(), tables);
  EXPECT_FALSE(pra::check_axioms(bad).empty());
}

TEST(Interval, Examples) {
  auto alg = algebra({"1/2", "1/3", "1/6"});
  EXPECT_EQ(pra::interval_distance(alg, 0b001, 0b001, 0b011), 0);
  EXPECT_EQ(pra::interval_distance(alg, 0b110, 0b001, 0b011), q("2/3"));
  EXPECT_EQ(pra::interval_distance(alg, 0b111, 0b001, 0b011), q("1/6"));
  EXPECT_EQ(pra::interval_projection(alg, 0b110, 0b001, 0b011), 0b011u);
  EXPECT_THROW(pra::interval_distance(alg, 0, 0b011, 0b001), Error);
}

TEST(Hahn, Examples) {
  auto alg = algebra({"1/2", "1/3", "1/6"});
  auto zero = pra::hahn_max_set(alg, pra::AdditiveFunction(alg, qs({"0", "0", "0"})));
  EXPECT_EQ(zero.positive, 0b111u);
  EXPECT_EQ(zero.negative, 0b111u);
  EXPECT_EQ(zero.lower, 0u);
  EXPECT_EQ(zero.upper, 0b111u);
  EXPECT_EQ(zero.max_value, 0);

  auto mixed = pra::hahn_max_set(alg, pra::AdditiveFunction(alg, qs({"1/5", "-1/10", "3/10"})));
  EXPECT_EQ(mixed.positive, 0b101u);
  EXPECT_EQ(mixed.negative, 0b010u);
  EXPECT_EQ(mixed.lower, 0b101u);
  EXPECT_EQ(mixed.upper, 0b101u);
  EXPECT_EQ(mixed.max_value, q("1/2"));

  auto free = pra::hahn_max_set(alg, pra::AdditiveFunction(alg, qs({"1/5", "0", "-1/10"})));
  EXPECT_EQ(alg.label(free.positive), "110");
  EXPECT_EQ(alg.label(free.negative), "011");
  EXPECT_EQ(alg.label(free.lower), "100");
  EXPECT_EQ(alg.label(free.upper), "110");
  EXPECT_EQ(free.max_value, q("1/5"));

  EXPECT_THROW(pra::AdditiveFunction(alg, qs({"1"})), Error);
}

TEST(Dcl, Examples) {
  auto alg = algebra({"1/2", "1/3", "1/6"});
  EXPECT_EQ(pra::dcl(alg, {}), (std::set<Elem>{0, 7}));
  EXPECT_EQ(pra::dcl(alg, {0b001}), (std::set<Elem>{0, 0b001, 0b110, 7}));
  EXPECT_EQ(pra::dcl(alg, {0b001, 0b010, 0b100}).size(), 8u);
}

TEST(Definable, Examples) {
  auto alg = algebra({"1/2", "1/3", "1/6"});
  auto single = pra::pra_definable_check(alg, {0b010});
  EXPECT_TRUE(single.definable);
  EXPECT_TRUE(single.distance_formula_agrees);

  auto members = pra::interval_members(alg, 0b001, 0b111);
  auto interval = pra::pra_definable_check(alg, std::set<Elem>(members.begin(), members.end()));
  EXPECT_TRUE(interval.definable);
  EXPECT_EQ(interval.lower, 0b001u);
  EXPECT_EQ(interval.upper, 0b111u);
  EXPECT_TRUE(interval.distance_formula_agrees);

  auto sym = algebra({"1/2", "1/2"});
  auto gap = pra::pra_definable_check(sym, {0, 0b01, 0b11});
  EXPECT_FALSE(gap.definable);
  EXPECT_EQ(gap.missing, std::optional<Elem>(0b10));
  EXPECT_THROW(pra::pra_definable_check(sym, {}), Error);
}

// ---- properties

MeasureAlgebra random_algebra(suite::Rng& rng, std::size_t k) {
  return MeasureAlgebra(suite::random_weights(rng, k));
}

TEST(PraProperty, AxiomSuite) {
  suite::Rng rng(51);
  for (int i = 0; i < 25; ++i) {
    auto alg = random_algebra(rng, 1 + suite::pick(rng, 5));
    auto m = alg.to_structure();
    EXPECT_TRUE(validate_structure(m).ok());
    EXPECT_EQ(pra::check_axioms(m), "");
  }
}

TEST(PraProperty, IntervalFormulaIsMinimum) {
  suite::Rng rng(52);
  for (std::size_t k = 1; k <= 4; ++k) {
    auto alg = random_algebra(rng, k);
    for (Elem a = 0; a < alg.size(); ++a) {
      for (Elem b = 0; b < alg.size(); ++b) {
        if (!alg.leq(a, b)) continue;
        auto members = pra::interval_members(alg, a, b);
        for (Elem x = 0; x < alg.size(); ++x) {
          Rational best = 2;
          for (Elem y : members) best = std::min(best, alg.distance(x, y));
          ASSERT_EQ(pra::interval_distance(alg, x, a, b), best);
          ASSERT_EQ(alg.distance(x, pra::interval_projection(alg, x, a, b)), best);
        }
      }
    }
  }
}

TEST(PraProperty, HahnMatchesArgmax) {
  suite::Rng rng(53);
  for (int i = 0; i < 200; ++i) {
    auto alg = random_algebra(rng, 1 + suite::pick(rng, 5));
    std::vector<Rational> values;
    for (std::size_t j = 0; j < alg.atoms(); ++j) values.push_back(suite::grid_rational(rng, -2, 2, 2));
    pra::AdditiveFunction fn(alg, values);
    auto h = pra::hahn_max_set(alg, fn);
    EXPECT_TRUE(alg.leq(h.lower, h.upper));
    std::vector<Elem> argmax;
    Rational best = fn(0);
    for (Elem x = 0; x < alg.size(); ++x) best = std::max(best, fn(x));
    for (Elem x = 0; x < alg.size(); ++x) {
      if (fn(x) == best) argmax.push_back(x);
    }
    EXPECT_EQ(pra::interval_members(alg, h.lower, h.upper), argmax);
    EXPECT_EQ(h.max_value, best);
  }
}

std::string random_term(suite::Rng& rng, int depth) {
  if (depth == 0 || suite::pick(rng, 3) == 0) {
    static const char* leaves[] = {"x", "x", "c", "e", "zero", "one"};
    return leaves[suite::pick(rng, 6)];
  }
  switch (suite::pick(rng, 3)) {
    case 0: return "meet(" + random_term(rng, depth - 1) + ", " + random_term(rng, depth - 1) + ")";
    case 1: return "join(" + random_term(rng, depth - 1) + ", " + random_term(rng, depth - 1) + ")";
    default: return "comp(" + random_term(rng, depth - 1) + ")";
  }
}

TEST(PraProperty, MeasureOfTermIsAdditive) {
  suite::Rng rng(54);
  for (int i = 0; i < 60; ++i) {
    auto alg = random_algebra(rng, 2 + suite::pick(rng, 3));
    Elem c = static_cast<Elem>(suite::pick(rng, alg.size()));
    Elem e = static_cast<Elem>(suite::pick(rng, alg.size()));
    auto m = alg.to_structure({{"c", c}, {"e", e}});
    auto phi = parse_formula("mu(" + random_term(rng, 3) + ")", m.signature());
    auto t = formula_table(m, phi, {"x"});
    for (Elem x = 0; x < alg.size(); ++x) {
      for (Elem y = 0; y < alg.size(); ++y) {
        if (alg.meet(x, y) != 0) continue;
        ASSERT_EQ(t[alg.join(x, y)] - t[0], (t[x] - t[0]) + (t[y] - t[0])) << render(phi);
      }
    }
  }
}

TEST(PraProperty, DclClosure) {
  suite::Rng rng(55);
  for (int i = 0; i < 60; ++i) {
    auto alg = random_algebra(rng, 1 + suite::pick(rng, 4));
    std::set<Elem> s;
    std::set<Elem> bigger;
    for (Elem x = 0; x < alg.size(); ++x) {
      if (suite::pick(rng, 4) == 0) s.insert(x);
      if (s.count(x) || suite::pick(rng, 4) == 0) bigger.insert(x);
    }
    auto closure = pra::dcl(alg, s);
    for (Elem x : s) EXPECT_TRUE(closure.count(x));
    EXPECT_EQ(pra::dcl(alg, closure), closure);
    auto big = pra::dcl(alg, bigger);
    for (Elem x : closure) EXPECT_TRUE(big.count(x));
    for (Elem x : closure) {
      for (Elem y : closure) {
        EXPECT_TRUE(closure.count(alg.meet(x, y)));
        EXPECT_TRUE(closure.count(alg.complement(x)));
      }
    }
  }
}

TEST(PraProperty, DefinableMatchesIntervalHull) {
  suite::Rng rng(56);
  for (int i = 0; i < 100; ++i) {
    auto alg = random_algebra(rng, 1 + suite::pick(rng, 3));
    std::set<Elem> d;
    for (Elem x = 0; x < alg.size(); ++x) {
      if (suite::pick(rng, 2) == 0) d.insert(x);
    }
    if (d.empty()) d.insert(0);
    auto r = pra::pra_definable_check(alg, d);
    auto members = pra::interval_members(alg, r.lower, r.upper);
    EXPECT_EQ(r.definable, std::set<Elem>(members.begin(), members.end()) == d);
    if (r.definable) EXPECT_TRUE(r.distance_formula_agrees);
    else EXPECT_FALSE(d.count(*r.missing));
  }
}

}  // namespace
