#include "affine/typespace.hpp"

#include <algorithm>

#include "affine/linalg.hpp"
#include "affine/lp.hpp"

namespace affine {

// ---------------------------------------------------------------- families and vectors

FamilyPtr make_family(std::vector<std::string> vars, std::vector<Formula> formulas) {
  for (const auto& phi : formulas) {
    for (const auto& v : free_variables(phi)) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw Error("formula '" + render(phi) + "' has free variable '" + v + "' outside the family variables");
      }
    }
  }
  return std::make_shared<const FormulaFamily>(FormulaFamily{std::move(vars), std::move(formulas)});
}

FamilyPtr make_family(std::vector<Formula> formulas) {
  std::vector<std::string> vars;
  for (const auto& phi : formulas) {
    for (const auto& v : free_variables(phi)) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  return make_family(std::move(vars), std::move(formulas));
}

Rational AffineFunctional::operator()(const std::vector<Rational>& point) const {
  Rational out = constant;
  for (std::size_t j = 0; j < coeffs.size(); ++j) out += coeffs[j] * point[j];
  return out;
}

TypeVector realized_type(const FiniteStructure& m, const Tuple& a, const FamilyPtr& family) {
  if (a.size() != family->vars.size()) throw Error("tuple length does not match the family variables");
  Assignment asg;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] >= m.size()) throw Error("tuple element out of range");
    asg[family->vars[k]] = a[k];
  }
  TypeVector out{family, {}, Witness{m.size(), a.size(), {}}};
  for (const auto& phi : family->formulas) out.values.push_back(eval_formula(m, phi, asg));
  out.witness->weights[TupleSpace(m.size(), a.size()).index(a)] = 1;
  return out;
}

namespace {

bool same_family(const FamilyPtr& a, const FamilyPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->vars != b->vars || a->formulas.size() != b->formulas.size()) return false;
  for (std::size_t j = 0; j < a->formulas.size(); ++j) {
    if (!structurally_equal(a->formulas[j], b->formulas[j])) return false;
  }
  return true;
}

void check_probability(const std::vector<Rational>& gamma) {
  Rational total = 0;
  for (const auto& g : gamma) {
    if (g < 0) throw Error("negative mixture weight " + to_short(g));
    total += g;
  }
  if (total != 1) throw Error("mixture weights sum to " + to_short(total));
}

}  // namespace

TypeVector mixture_type(const std::vector<TypeVector>& types, const std::vector<Rational>& gamma) {
  if (types.empty() || types.size() != gamma.size()) throw Error("mixture needs one weight per type");
  check_probability(gamma);
  const auto& first = types.front();
  for (const auto& t : types) {
    if (!same_family(t.family, first.family) || t.values.size() != first.values.size()) {
      throw Error("mixture of types over different families");
    }
  }
  TypeVector out{first.family, std::vector<Rational>(first.values.size(), Rational(0)), std::nullopt};
  bool witnessed = std::all_of(types.begin(), types.end(), [&](const TypeVector& t) {
    return t.witness && t.witness->domain == first.witness->domain && t.witness->arity == first.witness->arity;
  });
  if (witnessed) out.witness = Witness{first.witness->domain, first.witness->arity, {}};
  for (std::size_t i = 0; i < types.size(); ++i) {
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += gamma[i] * types[i].values[j];
    if (witnessed && gamma[i] != 0) {
      for (const auto& [tuple, w] : types[i].witness->weights) out.witness->weights[tuple] += gamma[i] * w;
    }
  }
  return out;
}

// ---------------------------------------------------------------- hulls

TypeHull TypeHull::from_points(std::vector<std::vector<Rational>> points) {
  TypeHull hull;
  std::map<std::vector<Rational>, std::size_t> seen;
  for (std::size_t t = 0; t < points.size(); ++t) {
    auto [it, fresh] = seen.emplace(points[t], hull.vertices.size());
    if (fresh) {
      hull.vertices.push_back(points[t]);
      hull.representative.push_back(t);
    }
    hull.vertex_of_tuple.push_back(it->second);
  }
  hull.domain = points.size();
  hull.arity = 1;
  return hull;
}

TypeHull type_hull(const FiniteStructure& m, const FamilyPtr& family, std::size_t cap) {
  checked_power(m.size(), family->vars.size(), cap);
  std::vector<std::vector<Rational>> tables;
  for (const auto& phi : family->formulas) tables.push_back(formula_table(m, phi, family->vars));
  TupleSpace space(m.size(), family->vars.size());
  std::vector<std::vector<Rational>> points(space.size());
  for (std::size_t t = 0; t < space.size(); ++t) {
    for (const auto& table : tables) points[t].push_back(table[t]);
  }
  TypeHull hull = TypeHull::from_points(std::move(points));
  hull.family = family;
  hull.domain = m.size();
  hull.arity = family->vars.size();
  hull.first_order = m.is_first_order();
  return hull;
}

std::vector<VertexClass> extreme_points(const TypeHull& hull) {
  const std::size_t n = hull.vertices.size();
  const std::size_t dim = hull.dimension();
  std::vector<VertexClass> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = hull.vertices[i];
    // v as a convex combination of the other vertices
    lp::Program mix(n - 1);
    auto other = [&](std::size_t k) { return k < i ? k : k + 1; };
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<Rational> row(n - 1);
      for (std::size_t k = 0; k + 1 < n; ++k) row[k] = hull.vertices[other(k)][j];
      mix.add(std::move(row), lp::Relation::Equal, v[j]);
    }
    mix.add(std::vector<Rational>(n - 1, Rational(1)), lp::Relation::Equal, Rational(1));
    auto res = lp::solve(mix);
    if (res.feasible()) {
      out[i].extreme = false;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (res.x[k] != 0) out[i].combination[other(k)] = res.x[k];
      }
      continue;
    }
    // separating functional: f(u) <= 0 for u != v, f(v) = 1; unknowns (coeffs, constant)
    lp::Program sep(dim + 1);
    std::fill(sep.free.begin(), sep.free.end(), true);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Rational> row(hull.vertices[k]);
      row.push_back(Rational(1));
      sep.add(std::move(row), k == i ? lp::Relation::Equal : lp::Relation::LessEqual, Rational(k == i ? 1 : 0));
    }
    auto cert = lp::solve(sep);
    if (!cert.feasible()) throw Error("extreme_points: neither a combination nor a separator exists");
    out[i].extreme = true;
    out[i].separator.coeffs.assign(cert.x.begin(), cert.x.begin() + static_cast<std::ptrdiff_t>(dim));
    out[i].separator.constant = cert.x[dim];
  }
  return out;
}

std::vector<std::size_t> extreme_indices(const TypeHull& hull) {
  std::vector<std::size_t> out;
  auto classes = extreme_points(hull);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].extreme) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------- affine factoring and faces

Factoring affine_factor(const std::vector<Rational>& values, const std::vector<std::vector<Rational>>& features) {
  if (values.size() != features.size()) throw Error("affine_factor: one feature vector per value is required");
  Factoring out;
  const std::size_t dim = features.empty() ? 0 : features.front().size();
  std::map<std::vector<Rational>, std::size_t> first_with;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<std::size_t> row_tuple;
  for (std::size_t t = 0; t < values.size(); ++t) {
    auto [it, fresh] = first_with.emplace(features[t], t);
    if (!fresh) {
      if (values[it->second] != values[t]) {
        out.failure = FactoringFailure{FactoringFailure::Kind::CollidingTypes, it->second, t, {}};
        return out;
      }
      continue;
    }
    std::vector<Rational> row{Rational(1)};
    row.insert(row.end(), features[t].begin(), features[t].end());
    rows.push_back(std::move(row));
    rhs.push_back(values[t]);
    row_tuple.push_back(t);
  }
  auto sol = solve_linear(rows, rhs, dim + 1);
  if (!sol.consistent) {
    FactoringFailure failure{FactoringFailure::Kind::Inconsistent, 0, 0, {}};
    for (const auto& [r, y] : sol.certificate) failure.combination[row_tuple[r]] = y;
    out.failure = std::move(failure);
    return out;
  }
  AffineFunctional f{sol.solution[0], std::vector<Rational>(sol.solution.begin() + 1, sol.solution.end())};
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (f(features[t]) != values[t]) throw Error("affine_factor: solution failed re-verification");
  }
  out.functional = std::move(f);
  return out;
}

ExposedFace exposed_face(const TypeHull& hull, const std::vector<Rational>& values, bool maximize) {
  if (values.size() != hull.vertex_of_tuple.size()) throw Error("predicate table does not match the hull's tuples");
  std::vector<std::vector<Rational>> features;
  features.reserve(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) features.push_back(hull.vertices[hull.vertex_of_tuple[t]]);
  Factoring fac = affine_factor(values, features);
  if (!fac.ok()) throw NotFactorableError("predicate does not factor affinely through the family", *fac.failure);

  ExposedFace out;
  out.functional = *fac.functional;
  std::vector<Rational> level;
  for (const auto& v : hull.vertices) level.push_back(out.functional(v));
  out.extremum = maximize ? *std::max_element(level.begin(), level.end()) : *std::min_element(level.begin(), level.end());
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (level[i] == out.extremum) out.vertices.push_back(i);
  }
  out.entire = out.vertices.size() == hull.vertices.size();
  return out;
}

namespace {

void linearize_into(const Formula& phi, const FormulaFamily& family, const Rational& factor, AffineFunctional& acc) {
  for (std::size_t j = 0; j < family.formulas.size(); ++j) {
    if (structurally_equal(phi, family.formulas[j])) {
      acc.coeffs[j] += factor;
      return;
    }
  }
  switch (phi->kind) {
    case FormulaKind::One:
      acc.constant += factor;
      return;
    case FormulaKind::Scale:
      linearize_into(phi->left, family, Rational(factor * phi->coeff), acc);
      return;
    case FormulaKind::Sum:
      linearize_into(phi->left, family, factor, acc);
      linearize_into(phi->right, family, factor, acc);
      return;
    default:
      throw NonAffineError("'" + render(phi) + "' is not an affine combination of family formulas");
  }
}

}  // namespace

AffineFunctional linearize(const Formula& phi, const FormulaFamily& family) {
  AffineFunctional acc{Rational(0), std::vector<Rational>(family.formulas.size(), Rational(0))};
  linearize_into(phi, family, Rational(1), acc);
  return acc;
}

FaceReport is_face(const TypeHull& hull, const std::vector<Condition>& gamma) {
  if (!hull.family) throw Error("is_face with conditions needs a hull built from a family");
  std::vector<AffineFunctional> constraints;
  for (const auto& c : gamma) {
    AffineFunctional lhs = linearize(c.lhs, *hull.family);
    AffineFunctional rhs = linearize(c.rhs, *hull.family);
    AffineFunctional slack{Rational(rhs.constant - lhs.constant), {}};
    for (std::size_t j = 0; j < lhs.coeffs.size(); ++j) slack.coeffs.push_back(rhs.coeffs[j] - lhs.coeffs[j]);
    constraints.push_back(std::move(slack));
  }
  return is_face(hull, constraints);
}

FaceReport is_face(const TypeHull& hull, const std::vector<AffineFunctional>& constraints) {
  const std::size_t n = hull.vertices.size();
  FaceReport report;
  std::vector<bool> inside(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& g : constraints) {
      if (g(hull.vertices[i]) < 0) inside[i] = false;
    }
    if (inside[i]) report.solution_vertices.push_back(i);
  }
  if (constraints.empty()) {
    report.support = report.solution_vertices;
    return report;
  }

  // points of [Gamma] are sum_u w_u u with w a distribution and g(sum w u) >= 0
  auto program_for = [&](std::size_t target) {
    lp::Program prog(n);
    prog.add(std::vector<Rational>(n, Rational(1)), lp::Relation::Equal, Rational(1));
    for (const auto& g : constraints) {
      std::vector<Rational> row(n);
      for (std::size_t u = 0; u < n; ++u) row[u] = g(hull.vertices[u]);
      prog.add(std::move(row), lp::Relation::GreaterEqual, Rational(0));
    }
    prog.objective[target] = 1;
    return prog;
  };

  for (std::size_t v = 0; v < n; ++v) {
    auto res = lp::solve(program_for(v));
    if (!res.feasible()) {
      report.support.clear();
      return report;  // [Gamma] is empty, the empty face
    }
    if (res.value <= 0) continue;
    report.support.push_back(v);
    if (inside[v]) continue;
    FaceViolation violation;
    violation.vertex = v;
    violation.weight = res.value;
    const std::size_t dim = hull.dimension();
    violation.point.assign(dim, Rational(0));
    violation.other.assign(dim, Rational(0));
    for (std::size_t u = 0; u < n; ++u) {
      if (res.x[u] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        violation.point[j] += res.x[u] * hull.vertices[u][j];
        if (u != v) violation.other[j] += res.x[u] * hull.vertices[u][j] / (1 - res.value);
      }
    }
    report.is_face = false;
    report.violation = std::move(violation);
    return report;
  }
  return report;
}

// ---------------------------------------------------------------- satisfiability

SatisfiabilityResult affine_satisfiable_tables(std::size_t domain, std::size_t arity,
                                               const std::vector<std::vector<Rational>>& slack) {
  const std::size_t tuples = TupleSpace(domain, arity).size();
  for (const auto& row : slack) {
    if (row.size() != tuples) throw Error("slack table does not match the tuple space");
  }
  SatisfiabilityResult out;
  out.distribution = Witness{domain, arity, {}};

  lp::Program primal(tuples);
  primal.add(std::vector<Rational>(tuples, Rational(1)), lp::Relation::Equal, Rational(1));
  for (const auto& row : slack) primal.add(row, lp::Relation::GreaterEqual, Rational(0));
  auto res = lp::solve(primal);
  if (res.feasible()) {
    out.satisfiable = true;
    for (std::size_t t = 0; t < tuples; ++t) {
      if (res.x[t] != 0) out.distribution.weights[t] = res.x[t];
    }
    return out;
  }

  // alternative system: r >= 0 with sum_i r_i slack_i(a) <= -1 for all a; least total weight
  const std::size_t k = slack.size();
  lp::Program dual(k);
  for (std::size_t t = 0; t < tuples; ++t) {
    std::vector<Rational> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = slack[i][t];
    dual.add(std::move(row), lp::Relation::LessEqual, Rational(-1));
  }
  std::fill(dual.objective.begin(), dual.objective.end(), Rational(-1));
  auto alt = lp::solve(dual);
  if (alt.status != lp::Status::Optimal) throw Error("affine_satisfiable: both alternatives failed");
  out.satisfiable = false;
  out.farkas = alt.x;
  for (std::size_t t = 0; t < tuples; ++t) {
    Rational combined = 0;
    for (std::size_t i = 0; i < k; ++i) combined += out.farkas[i] * slack[i][t];
    if (t == 0 || combined > out.combined_max) out.combined_max = combined;
  }
  return out;
}

SatisfiabilityResult affine_satisfiable(const FiniteStructure& m, const std::vector<std::string>& vars,
                                        const std::vector<Condition>& sigma, std::size_t cap) {
  checked_power(m.size(), vars.size(), cap);
  std::vector<std::vector<Rational>> slack;
  for (const auto& c : sigma) {
    auto rhs = formula_table(m, c.rhs, vars);
    auto lhs = formula_table(m, c.lhs, vars);
    for (std::size_t t = 0; t < rhs.size(); ++t) rhs[t] -= lhs[t];
    slack.push_back(std::move(rhs));
  }
  return affine_satisfiable_tables(m.size(), vars.size(), slack);
}

bool verify_distribution(const std::vector<std::vector<Rational>>& slack, const Witness& w) {
  Rational total = 0;
  for (const auto& [t, weight] : w.weights) {
    if (weight < 0) return false;
    total += weight;
  }
  if (total != 1) return false;
  for (const auto& row : slack) {
    Rational value = 0;
    for (const auto& [t, weight] : w.weights) value += weight * row.at(t);
    if (value < 0) return false;
  }
  return true;
}

bool verify_farkas(const std::vector<std::vector<Rational>>& slack, const std::vector<Rational>& r) {
  if (r.size() != slack.size() || slack.empty()) return false;
  for (const auto& v : r) {
    if (v < 0) return false;
  }
  for (std::size_t t = 0; t < slack.front().size(); ++t) {
    Rational combined = 0;
    for (std::size_t i = 0; i < r.size(); ++i) combined += r[i] * slack[i][t];
    if (combined >= 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- barycenters and decomposition

TypeVector barycenter(const TypeHull& hull, const BoundaryMeasure& mu) {
  auto classes = extreme_points(hull);
  Rational total = 0;
  for (const auto& [v, w] : mu.weights) {
    if (v >= hull.vertices.size()) throw Error("boundary measure on an unknown vertex");
    if (!classes[v].extreme) throw Error("boundary measure puts weight on non-extreme vertex " + std::to_string(v));
    if (w < 0) throw Error("negative boundary weight");
    total += w;
  }
  if (total != 1) throw Error("boundary measure weights sum to " + to_short(total));

  TypeVector out{hull.family, std::vector<Rational>(hull.dimension(), Rational(0)), std::nullopt};
  const bool witnessed = hull.family != nullptr;
  if (witnessed) out.witness = Witness{hull.domain, hull.arity, {}};
  for (const auto& [v, w] : mu.weights) {
    if (w == 0) continue;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += w * hull.vertices[v][j];
    if (witnessed) out.witness->weights[hull.representative[v]] += w;
  }
  return out;
}

BoundaryMeasure keisler_decompose(const TypeHull& hull, const std::vector<Rational>& point) {
  if (!hull.first_order) throw Error("keisler_decompose needs a hull of a first-order structure");
  if (point.size() != hull.dimension()) throw Error("point dimension does not match the hull");
  auto extremes = extreme_indices(hull);
  const std::size_t dim = hull.dimension();

  std::vector<std::vector<Rational>> independence;
  for (auto e : extremes) {
    std::vector<Rational> row{Rational(1)};
    row.insert(row.end(), hull.vertices[e].begin(), hull.vertices[e].end());
    independence.push_back(std::move(row));
  }
  if (rank_of(independence, dim + 1) != extremes.size()) {
    throw Error("extreme types are not affinely independent over the family; decomposition is not unique");
  }

  // sum_e w_e (1, e) = (1, p)
  std::vector<std::vector<Rational>> rows(dim + 1, std::vector<Rational>(extremes.size()));
  std::vector<Rational> rhs{Rational(1)};
  rhs.insert(rhs.end(), point.begin(), point.end());
  for (std::size_t k = 0; k < extremes.size(); ++k) {
    rows[0][k] = 1;
    for (std::size_t j = 0; j < dim; ++j) rows[j + 1][k] = hull.vertices[extremes[k]][j];
  }
  auto sol = solve_linear(rows, rhs, extremes.size());
  if (!sol.consistent) throw Error("point lies outside the affine hull of the types");
  BoundaryMeasure out;
  for (std::size_t k = 0; k < extremes.size(); ++k) {
    if (sol.solution[k] < 0) throw Error("point lies outside the type hull");
    if (sol.solution[k] != 0) out.weights[extremes[k]] = sol.solution[k];
  }
  return out;
}

Rational type_distance(const FiniteStructure& m, const TypeVector& p, const TypeVector& q) {
  if (!p.witness || !q.witness) throw Error("type_distance needs witness distributions");
  const Witness& wp = *p.witness;
  const Witness& wq = *q.witness;
  if (wp.domain != wq.domain || wp.arity != wq.arity || wp.domain != m.size()) {
    throw Error("witnesses live on different tuple spaces");
  }
  std::vector<std::pair<std::size_t, Rational>> src(wp.weights.begin(), wp.weights.end());
  std::vector<std::pair<std::size_t, Rational>> dst(wq.weights.begin(), wq.weights.end());
  TupleSpace space(wp.domain, wp.arity);
  const std::size_t s = src.size();
  const std::size_t t = dst.size();
  lp::Program prog(s * t);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<Rational> row(s * t, Rational(0));
    for (std::size_t j = 0; j < t; ++j) row[i * t + j] = 1;
    prog.add(std::move(row), lp::Relation::Equal, src[i].second);
  }
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<Rational> row(s * t, Rational(0));
    for (std::size_t i = 0; i < s; ++i) row[i * t + j] = 1;
    prog.add(std::move(row), lp::Relation::Equal, dst[j].second);
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      prog.objective[i * t + j] = -m.tuple_distance(space.tuple(src[i].first), space.tuple(dst[j].first));
    }
  }
  auto res = lp::solve(prog);
  if (res.status != lp::Status::Optimal) throw Error("transport problem infeasible; witness masses differ");
  return -res.value;
}

}  // namespace affine
