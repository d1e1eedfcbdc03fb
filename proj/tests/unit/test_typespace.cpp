#include "fixtures.hpp"

using namespace fx;

namespace {

std::vector<std::vector<Rational>> verts(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rational>> out;
  for (auto r : rows) out.push_back(qs(r));
  return out;
}

TypeHull unit_interval() {
  auto m = pra22();
  return type_hull(m, fam(m, {"mu(x)"}));
}

TEST(RealizedType, BottomElement) {
  auto m = pra22();
  auto t = realized_type(m, {0}, fam(m, {"mu(x)", "mu(comp(x))"}));
  EXPECT_EQ(t.values, qs({"0", "1"}));
  ASSERT_TRUE(t.witness);
  EXPECT_EQ(t.witness->weights.size(), 1u);
}

TEST(RealizedType, Atom) {
  auto m = pra22();
  EXPECT_EQ(realized_type(m, {1}, fam(m, {"mu(x)"})).values, qs({"1/2"}));
}

TEST(RealizedType, VariableOutsideFamily) {
  auto m = pra22();
  EXPECT_THROW(make_family({"x"}, {f(m, "d(x, y)")}), Error);
  EXPECT_THROW(realized_type(m, {0, 1}, fam(m, {"mu(x)"})), Error);
}

TEST(Mixture, Examples) {
  auto m = pra22();
  auto F = fam(m, {"mu(x)"});
  auto t0 = realized_type(m, {0}, F);
  auto t1 = realized_type(m, {1}, F);
  auto t3 = realized_type(m, {3}, F);
  EXPECT_EQ(mixture_type({t0, t1}, qs({"1", "0"})).values, t0.values);
  EXPECT_EQ(mixture_type({t0, t3}, qs({"1/2", "1/2"})).values, qs({"1/2"}));
  EXPECT_EQ(mixture_type({t0, t1, t3}, qs({"1/3", "1/3", "1/3"})).values, qs({"1/2"}));
  EXPECT_THROW(mixture_type({t0, t1}, qs({"1/2", "1/3"})), Error);
  EXPECT_THROW(mixture_type({t0, realized_type(m, {0}, fam(m, {"mu(comp(x))"}))}, qs({"1/2", "1/2"})), Error);
}

TEST(Hull, Examples) {
  auto h = unit_interval();
  EXPECT_EQ(h.vertices, verts({{"0"}, {"1/2"}, {"1"}}));
  EXPECT_EQ(h.vertex_of_tuple, (std::vector<std::size_t>{0, 1, 1, 2}));

  FiniteStructure point(Signature(), {"p"}, {{Rational(0)}}, {}, {}, {});
  EXPECT_EQ(type_hull(point, make_family({"x"}, {one()})).vertices.size(), 1u);

  auto fo = uniform3(qs({"0", "1", "1"}));
  auto hf = type_hull(fo, fam(fo, {"R(x)", "inf y. (R(y) + d(x, y))"}));
  EXPECT_TRUE(hf.first_order);
  EXPECT_EQ(hf.vertices.size(), 2u);  // orbits {a} and {b, c}
}

TEST(Hull, Cap) {
  auto m = algebra({"1/4", "1/4", "1/4", "1/4"}).to_structure();
  EXPECT_THROW(type_hull(m, fam(m, {"d(x, y)", "mu(z)", "mu(w)"}), 1000), Error);
}

TEST(Extreme, Examples) {
  auto single = extreme_points(TypeHull::from_points(verts({{"1/3", "1/3"}})));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_TRUE(single[0].extreme);

  auto v = extreme_points(unit_interval());
  EXPECT_TRUE(v[0].extreme);
  EXPECT_FALSE(v[1].extreme);
  EXPECT_TRUE(v[2].extreme);
  EXPECT_EQ(v[1].combination, (std::map<std::size_t, Rational>{{0, q("1/2")}, {2, q("1/2")}}));
  EXPECT_EQ(v[0].separator(qs({"0"})), 1);
  EXPECT_LE(v[0].separator(qs({"1"})), 0);

  auto simplex = TypeHull::from_points(verts({{"0", "0", "0"}, {"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}));
  EXPECT_EQ(extreme_indices(simplex), (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(ExposedFace, Examples) {
  auto m = pra22();
  auto h = unit_interval();
  auto mu = formula_table(m, f(m, "mu(x)"), {"x"});
  auto low = exposed_face(h, mu);
  EXPECT_FALSE(low.entire);
  EXPECT_EQ(low.vertices, std::vector<std::size_t>{0});
  EXPECT_EQ(low.extremum, 0);

  EXPECT_TRUE(exposed_face(h, qs({"0", "0", "0", "0"})).entire);

  auto dist = distance_predicate(m, 1, {0});
  auto high = exposed_face(h, dist.values, true);
  EXPECT_EQ(high.vertices, std::vector<std::size_t>{2});
  EXPECT_EQ(high.extremum, 1);
}

TEST(ExposedFace, NotFactorable) {
  auto m = pra22();
  EXPECT_THROW(exposed_face(unit_interval(), qs({"0", "1", "0", "1"})), NotFactorableError);
}

TEST(Face, Examples) {
  auto m = pra22();
  auto h = unit_interval();
  auto bottom = is_face(h, {parse_condition("mu(x) <= 0", m.signature())});
  EXPECT_TRUE(bottom.is_face);
  EXPECT_EQ(bottom.solution_vertices, std::vector<std::size_t>{0});

  auto mid = is_face(h, {parse_condition("mu(x) <= 1/2", m.signature()),
                         parse_condition("1/2 <= mu(x)", m.signature())});
  EXPECT_FALSE(mid.is_face);
  ASSERT_TRUE(mid.violation);
  EXPECT_EQ(mid.violation->point, qs({"1/2"}));
  EXPECT_EQ(mid.violation->weight * h.vertices[mid.violation->vertex][0] +
                (1 - mid.violation->weight) * mid.violation->other[0],
            q("1/2"));

  EXPECT_TRUE(is_face(h, std::vector<Condition>{}).is_face);
}

TEST(Face, NonAffine) {
  auto m = pra22();
  EXPECT_THROW(is_face(unit_interval(), {parse_condition("mu(comp(x)) <= 0", m.signature())}), NonAffineError);
}

TEST(Satisfiable, Examples) {
  auto m = pra2();
  auto empty = affine_satisfiable(m, {"x"}, {});
  EXPECT_TRUE(empty.satisfiable);

  auto half = affine_satisfiable(m, {"x"}, {parse_condition("1/2 <= mu(x)", m.signature()),
                                            parse_condition("mu(x) <= 1/2", m.signature())});
  ASSERT_TRUE(half.satisfiable);
  EXPECT_EQ(half.distribution.weights, (std::map<std::size_t, Rational>{{0, q("1/2")}, {1, q("1/2")}}));

  auto contra = affine_satisfiable(m, {"x"}, {parse_condition("mu(x) <= 0", m.signature()),
                                              parse_condition("1 <= mu(x)", m.signature())});
  ASSERT_FALSE(contra.satisfiable);
  ASSERT_EQ(contra.farkas.size(), 2u);
  EXPECT_EQ(contra.farkas[0], contra.farkas[1]);
  EXPECT_GT(contra.farkas[0], 0);
  EXPECT_LT(contra.combined_max, 0);
}

TEST(Barycenter, Examples) {
  auto h = unit_interval();
  EXPECT_EQ(barycenter(h, {{{2, Rational(1)}}}).values, qs({"1"}));
  EXPECT_EQ(barycenter(h, {{{0, q("1/3")}, {2, q("2/3")}}}).values, qs({"2/3"}));
  EXPECT_THROW(barycenter(h, {{{1, Rational(1)}}}), Error);

  auto tri = TypeHull::from_points(verts({{"0", "0"}, {"1", "0"}, {"0", "1"}}));
  EXPECT_EQ(barycenter(tri, {{{0, q("1/2")}, {1, q("1/4")}, {2, q("1/4")}}}).values, qs({"1/4", "1/4"}));
}

TEST(Keisler, Examples) {
  auto fo = uniform3(qs({"0", "1", "1"}));
  auto h = type_hull(fo, fam(fo, {"R(x)"}));
  ASSERT_TRUE(h.first_order);
  ASSERT_EQ(h.vertices, verts({{"0"}, {"1"}}));
  EXPECT_EQ(keisler_decompose(h, qs({"1"})).weights, (std::map<std::size_t, Rational>{{1, Rational(1)}}));
  EXPECT_EQ(keisler_decompose(h, qs({"1/2"})).weights,
            (std::map<std::size_t, Rational>{{0, q("1/2")}, {1, q("1/2")}}));
  EXPECT_THROW(keisler_decompose(h, qs({"2"})), Error);
}

TEST(Keisler, RefusesNonFirstOrderAndDependentVertices) {
  EXPECT_THROW(keisler_decompose(unit_interval(), qs({"1/2"})), Error);
  // four first-order types at the corners of a square: extremes are affinely dependent
  FiniteStructure fo(Signature({}, {}, {{"R", 1, Rational(1)}, {"S", 1, Rational(1)}}), {"a", "b", "c", "d"},
                     {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}}, {}, {},
                     {RelationTable{1, qs({"0", "1", "0", "1"})}, RelationTable{1, qs({"0", "0", "1", "1"})}});
  auto square = type_hull(fo, fam(fo, {"R(x)", "S(x)"}));
  ASSERT_TRUE(square.first_order);
  EXPECT_EQ(extreme_indices(square).size(), 4u);
  EXPECT_THROW(keisler_decompose(square, qs({"1/2", "1/2"})), Error);
}

TEST(TypeDistance, Examples) {
  auto m2 = pra2();
  auto F2 = fam(m2, {"mu(x)"});
  auto p = realized_type(m2, {0}, F2);
  EXPECT_EQ(type_distance(m2, p, p), 0);
  EXPECT_EQ(type_distance(m2, p, realized_type(m2, {1}, F2)), 1);

  auto m = pra22();
  auto F = fam(m, {"mu(x)"});
  auto mix = mixture_type({realized_type(m, {0}, F), realized_type(m, {3}, F)}, qs({"1/2", "1/2"}));
  EXPECT_EQ(type_distance(m, mix, realized_type(m, {1}, F)), q("1/2"));

  TypeVector bare{F, qs({"1/2"}), std::nullopt};
  EXPECT_THROW(type_distance(m, bare, mix), Error);
}

// ---- properties

TEST(TypeProperty, ExtremeAgreesWithOracle) {
  suite::Rng rng(31);
  for (int i = 0; i < 150; ++i) {
    std::size_t dim = 1 + suite::pick(rng, 4);
    std::size_t count = 1 + suite::pick(rng, 12);
    std::vector<std::vector<Rational>> pts;
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<Rational> p;
      for (std::size_t j = 0; j < dim; ++j) p.push_back(suite::grid_rational(rng, 0, 3, 3));
      pts.push_back(p);
    }
    auto hull = TypeHull::from_points(pts);
    auto classes = extreme_points(hull);
    for (std::size_t v = 0; v < hull.vertices.size(); ++v) {
      std::vector<std::vector<Rational>> others;
      for (std::size_t u = 0; u < hull.vertices.size(); ++u) {
        if (u != v) others.push_back(hull.vertices[u]);
      }
      ASSERT_EQ(classes[v].extreme, !suite::oracle_in_hull(others, hull.vertices[v]));
    }
  }
}

TEST(TypeProperty, ExposedFacesAreFaces) {
  suite::Rng rng(32);
  Signature s = suite::test_signature();
  for (int i = 0; i < 40; ++i) {
    FiniteStructure m = suite::random_structure(rng, s, 2 + suite::pick(rng, 3));
    std::vector<Formula> fs;
    for (int j = 0; j < 3; ++j) fs.push_back(suite::random_formula(rng, s, {"x"}));
    auto F = make_family({"x"}, fs);
    auto hull = type_hull(m, F);
    std::vector<Rational> coeffs{suite::grid_rational(rng, -2, 2, 2), suite::grid_rational(rng, -2, 2, 2),
                                 suite::grid_rational(rng, -2, 2, 2)};
    std::vector<Rational> table(m.size(), Rational(0));
    for (Element a = 0; a < m.size(); ++a) {
      for (int j = 0; j < 3; ++j) table[a] += coeffs[j] * hull.vertices[hull.vertex_of_tuple[a]][j];
    }
    auto face = exposed_face(hull, table, suite::pick(rng, 2) == 0);
    AffineFunctional g = face.functional;
    // g(p) = extremum cut out as two inequalities
    AffineFunctional ge{g.constant - face.extremum, g.coeffs};
    AffineFunctional le{face.extremum - g.constant, {}};
    for (const auto& c : g.coeffs) le.coeffs.push_back(-c);
    auto rep = is_face(hull, std::vector<AffineFunctional>{ge, le});
    EXPECT_TRUE(rep.is_face);
    if (!face.entire) EXPECT_EQ(rep.solution_vertices, face.vertices);
  }
}

TEST(TypeProperty, BarycenterKeislerRoundTrip) {
  suite::Rng rng(33);
  for (int i = 0; i < 40; ++i) {
    std::size_t size = 2 + suite::pick(rng, 5);
    std::size_t blocks = 1 + suite::pick(rng, size);
    FiniteStructure m = suite::random_partition_structure(rng, size, blocks);
    std::vector<Formula> fs;
    for (std::size_t b = 1; b < blocks; ++b) fs.push_back(f(m, ("P" + std::to_string(b) + "(x)").c_str()));
    if (fs.empty()) fs.push_back(one());
    auto hull = type_hull(m, make_family({"x"}, fs));
    auto ext = extreme_indices(hull);
    auto w = suite::random_weights(rng, ext.size());
    BoundaryMeasure mu;
    for (std::size_t k = 0; k < ext.size(); ++k) mu.weights[ext[k]] = w[k];
    auto bar = barycenter(hull, mu);
    for (std::size_t j = 0; j < hull.dimension(); ++j) {
      Rational expect = 0;
      for (const auto& [v, wt] : mu.weights) expect += wt * hull.vertices[v][j];
      ASSERT_EQ(bar.values[j], expect);
    }
    EXPECT_EQ(keisler_decompose(hull, bar.values).weights, mu.weights);
  }
}

TEST(TypeProperty, TypeDistanceIsPseudometric) {
  suite::Rng rng(34);
  Signature s = suite::test_signature();
  for (int i = 0; i < 30; ++i) {
    FiniteStructure m = suite::random_structure(rng, s, 2 + suite::pick(rng, 3));
    auto F = make_family({"x"}, {suite::random_formula(rng, s, {"x"})});
    auto random_type = [&] {
      std::vector<TypeVector> ts;
      for (Element a = 0; a < m.size(); ++a) ts.push_back(realized_type(m, {a}, F));
      return mixture_type(ts, suite::random_ultracharge(rng, m.size()).weights());
    };
    auto p = random_type();
    auto r = random_type();
    auto t = random_type();
    EXPECT_EQ(type_distance(m, p, p), 0);
    EXPECT_EQ(type_distance(m, p, r), type_distance(m, r, p));
    EXPECT_LE(type_distance(m, p, t), type_distance(m, p, r) + type_distance(m, r, t));
  }
}

TEST(TypeProperty, PositivityAndNormalization) {
  suite::Rng rng(35);
  Signature s = suite::test_signature();
  for (int i = 0; i < 30; ++i) {
    FiniteStructure m = suite::random_structure(rng, s, 2 + suite::pick(rng, 3));
    auto F = make_family({"x"}, {one(), f(m, "R(x)"), f(m, "inf y. S(x, y)")});
    std::vector<TypeVector> ts;
    for (Element a = 0; a < m.size(); ++a) ts.push_back(realized_type(m, {a}, F));
    auto p = mixture_type(ts, suite::random_ultracharge(rng, m.size()).weights());
    EXPECT_EQ(p.values[0], 1);
    EXPECT_GE(p.values[1], 0);
    EXPECT_GE(p.values[2], 0);
  }
}

}  // namespace
