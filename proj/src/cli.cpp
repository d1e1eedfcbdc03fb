#include "affine/cli.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "affine/io.hpp"
#include "affine/suite.hpp"

namespace affine::cli {

namespace {

using io::Json;

struct Outcome {
  int code = kOk;
  Json report = Json::object();
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::pair<std::string, std::string> split_pair(const std::string& s, char sep) {
  auto pos = s.find(sep);
  if (pos == std::string::npos) throw UsageError("expected '" + std::string(1, sep) + "' in '" + s + "'");
  return {s.substr(0, pos), s.substr(pos + 1)};
}

FiniteStructure structure_at(const RunConfig& c, std::size_t i = 0) {
  if (c.structures.size() <= i) throw UsageError("missing --structure");
  FiniteStructure m = io::load_structure(c.structures[i]);
  auto report = validate_structure(m);
  if (!report.ok()) {
    std::string what = "structure '" + c.structures[i] + "' is invalid: " + report.axiom;
    if (!report.symbol.empty()) what += " (" + report.symbol + ")";
    throw Error(what);
  }
  return m;
}

Signature signature_of(const RunConfig& c) {
  return c.structures.empty() ? pra::pra_signature() : structure_at(c).signature();
}

FamilyPtr family_of(const RunConfig& c, const FiniteStructure& m) {
  if (c.family.empty()) throw UsageError("missing --family");
  return io::load_family(c.family, m.signature());
}

// a lone --formula stands in for a one-member family
FamilyPtr family_or_formula(const RunConfig& c, const FiniteStructure& m) {
  if (c.family.empty() && !c.formula.empty()) return io::parse_family(c.formula, m.signature());
  return family_of(c, m);
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing ") + flag);
  return value;
}

Json labels_of(const FiniteStructure& m, const Tuple& t) {
  Json out = Json::array();
  for (auto e : t) out.push_back(m.labels()[e]);
  return out;
}

std::vector<std::string> vars_of(const RunConfig& c, const Formula& phi) {
  return c.vars.empty() ? free_variables(phi) : split(c.vars, ',');
}

PredicateTable predicate_of(const RunConfig& c, const FiniteStructure& m, const std::string& path) {
  if (!path.empty()) return io::predicate_from_json(Json::parse(io::read_file(path)), m.size());
  if (c.formula.empty()) throw UsageError("missing --predicate (or --formula)");
  Formula phi = parse_formula(c.formula, m.signature());
  return formula_predicate(m, phi, vars_of(c, phi));
}

Witness distribution_of(const std::string& text, const FiniteStructure& m) {
  Witness w;
  w.domain = m.size();
  bool first = true;
  for (const auto& entry : split(text, ';')) {
    auto [tuple_text, weight] = split_pair(entry, '=');
    Tuple t = io::parse_tuple(tuple_text, m);
    if (first) w.arity = t.size();
    if (t.size() != w.arity) throw UsageError("distribution tuples have different lengths");
    first = false;
    w.weights[TupleSpace(m.size(), w.arity).index(t)] += parse_rational(weight);
  }
  return w;
}

Json failure_json(const FactoringFailure& f) {
  Json j;
  if (f.kind == FactoringFailure::Kind::CollidingTypes) {
    j["kind"] = "colliding types";
    j["tuples"] = {f.first, f.second};
  } else {
    j["kind"] = "inconsistent system";
    Json comb = Json::object();
    for (const auto& [row, w] : f.combination) comb[std::to_string(row)] = to_pq(w);
    j["row_combination"] = comb;
  }
  return j;
}

// ---------------------------------------------------------------- syntax and model

Outcome cmd_parse(const RunConfig& c) {
  Signature sig = signature_of(c);
  Outcome out;
  if (!c.conditions.empty()) {
    Json conds = Json::array();
    for (const auto& text : c.conditions) conds.push_back(render(parse_condition(text, sig)));
    out.report["conditions"] = conds;
    return out;
  }
  Formula phi = parse_formula(need(c.formula, "--formula"), sig);
  out.report["formula"] = render(phi);
  out.report["free_variables"] = free_variables(phi);
  out.report["depth"] = depth(phi);
  return out;
}

Outcome cmd_cert(const RunConfig& c) {
  Signature sig = signature_of(c);
  Formula phi = parse_formula(need(c.formula, "--formula"), sig);
  auto cert = certificate(phi, sig);
  Outcome out;
  out.report["formula"] = render(phi);
  out.report["lambda"] = to_pq(cert.lambda);
  out.report["bound"] = to_pq(cert.bound);
  return out;
}

Outcome cmd_eval(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  Formula phi = parse_formula(need(c.formula, "--formula"), m.signature());
  Assignment asg;
  for (const auto& entry : split(c.assign, ',')) {
    auto [var, label] = split_pair(entry, '=');
    asg[var] = io::parse_tuple(label, m).at(0);
  }
  Outcome out;
  out.report["formula"] = render(phi);
  out.report["value"] = to_pq(eval_formula(m, phi, asg));
  return out;
}

Outcome cmd_automorphisms(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  Outcome out;
  Json perms = Json::array();
  for (const auto& g : automorphisms(m)) {
    Json p = Json::object();
    for (std::size_t i = 0; i < g.size(); ++i) p[m.labels()[i]] = m.labels()[g[i]];
    perms.push_back(p);
  }
  out.report["count"] = perms.size();
  out.report["automorphisms"] = perms;
  return out;
}

// ---------------------------------------------------------------- ultramean

std::vector<FiniteStructure> factors_of(const RunConfig& c) {
  std::vector<FiniteStructure> factors;
  for (std::size_t i = 0; i < c.structures.size(); ++i) factors.push_back(structure_at(c, i));
  if (factors.empty()) throw UsageError("missing --structure");
  return factors;
}

Outcome cmd_ultramean_build(const RunConfig& c) {
  auto factors = factors_of(c);
  Ultracharge mu(parse_rational_list(need(c.mu, "--mu")));
  MeanStructure mean = build_ultramean(factors, mu, c.cap);
  Outcome out;
  out.report["size"] = mean.structure().size();
  out.report["valid"] = validate_structure(mean.structure()).ok();
  out.report["structure"] = io::structure_to_json(mean.structure());
  return out;
}

Outcome cmd_ultramean_verify(const RunConfig& c) {
  auto factors = factors_of(c);
  Ultracharge mu(parse_rational_list(need(c.mu, "--mu")));
  Formula phi = parse_formula(need(c.formula, "--formula"), factors.front().signature());
  std::vector<std::string> vars;
  std::vector<RawTuple> raw;
  for (const auto& entry : split(c.raw, ';')) {
    auto [var, coords] = split_pair(entry, '=');
    auto parts = split(coords, ',');
    if (parts.size() != factors.size()) throw UsageError("raw tuple for '" + var + "' needs one entry per factor");
    RawTuple r;
    for (std::size_t i = 0; i < parts.size(); ++i) r.push_back(io::parse_tuple(parts[i], factors[i]).at(0));
    vars.push_back(var);
    raw.push_back(std::move(r));
  }
  auto report = check_ultramean_identity(factors, mu, phi, vars, raw, c.cap);
  Outcome out;
  out.report["formula"] = render(phi);
  out.report["quotient_value"] = to_pq(report.quotient_value);
  out.report["integral_value"] = to_pq(report.integral_value);
  out.report["equal"] = report.equal;
  out.code = report.equal ? kOk : kCheckedFalse;
  return out;
}

// ---------------------------------------------------------------- types

Outcome cmd_types_hull(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  TypeHull hull = type_hull(m, family_of(c, m), c.cap);
  Outcome out;
  out.report = io::hull_to_json(hull);
  Json reps = Json::array();
  TupleSpace space(m.size(), hull.arity);
  for (auto r : hull.representative) reps.push_back(labels_of(m, space.tuple(r)));
  out.report["representatives"] = reps;
  return out;
}

Json extreme_json(const TypeHull& hull) {
  Json list = Json::array();
  auto classes = extreme_points(hull);
  for (std::size_t v = 0; v < classes.size(); ++v) {
    Json j{{"vertex", v}, {"point", io::rationals_json(hull.vertices[v])}, {"extreme", classes[v].extreme}};
    if (classes[v].extreme) {
      j["separator"] = io::functional_to_json(classes[v].separator);
    } else {
      Json comb = Json::object();
      for (const auto& [u, w] : classes[v].combination) comb[std::to_string(u)] = to_pq(w);
      j["combination"] = comb;
    }
    list.push_back(j);
  }
  return list;
}

Outcome cmd_types_extreme(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  TypeHull hull = type_hull(m, family_of(c, m), c.cap);
  Outcome out;
  out.report["vertices"] = extreme_json(hull);
  out.report["extreme"] = extreme_indices(hull);
  return out;
}

Outcome cmd_types_face(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  TypeHull hull = type_hull(m, family_of(c, m), c.cap);
  PredicateTable p = predicate_of(c, m, c.predicate);
  if (p.arity != hull.arity) throw UsageError("predicate arity does not match the family");
  Outcome out;
  try {
    ExposedFace face = exposed_face(hull, p.values, c.maximize);
    out.report["entire"] = face.entire;
    out.report["vertices"] = face.vertices;
    Json pts = Json::array();
    for (auto v : face.vertices) pts.push_back(io::rationals_json(hull.vertices[v]));
    out.report["points"] = pts;
    out.report["extremum"] = to_pq(face.extremum);
    out.report["functional"] = io::functional_to_json(face.functional);
  } catch (const NotFactorableError& e) {
    out.code = kCheckedFalse;
    out.report["factorable"] = false;
    out.report["failure"] = failure_json(e.failure());
  }
  return out;
}

Outcome cmd_types_facial(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  TypeHull hull = type_hull(m, family_of(c, m), c.cap);
  std::vector<Condition> gamma;
  for (const auto& text : c.conditions) gamma.push_back(parse_condition(text, m.signature()));
  FaceReport r = is_face(hull, gamma);
  Outcome out;
  out.report["is_face"] = r.is_face;
  out.report["solution_vertices"] = r.solution_vertices;
  if (r.violation) {
    out.report["violation"] = {{"vertex", r.violation->vertex},
                               {"point", io::rationals_json(r.violation->point)},
                               {"other", io::rationals_json(r.violation->other)},
                               {"weight", to_pq(r.violation->weight)}};
  }
  out.code = r.is_face ? kOk : kCheckedFalse;
  return out;
}

Outcome cmd_types_satisfiable(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  std::vector<Condition> sigma;
  std::vector<std::string> vars = split(c.vars, ',');
  for (const auto& text : c.conditions) {
    sigma.push_back(parse_condition(text, m.signature()));
    if (c.vars.empty()) {
      for (const auto& side : {sigma.back().lhs, sigma.back().rhs}) {
        for (const auto& v : free_variables(side)) {
          if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
      }
    }
  }
  if (vars.empty()) vars.push_back("x");
  auto res = affine_satisfiable(m, vars, sigma, c.cap);
  Outcome out;
  out.report["vars"] = vars;
  out.report["satisfiable"] = res.satisfiable;
  if (res.satisfiable) {
    out.report["distribution"] = io::witness_to_json(res.distribution, &m);
  } else {
    out.report["farkas"] = io::rationals_json(res.farkas);
    out.report["combined_max"] = to_pq(res.combined_max);
    std::vector<Rational> coeffs = res.farkas;
    out.report["combined_condition"] = render(affine_combine(sigma, coeffs));
    out.code = kCheckedFalse;
  }
  return out;
}

Outcome cmd_types_barycenter(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  TypeHull hull = type_hull(m, family_of(c, m), c.cap);
  BoundaryMeasure mu;
  for (const auto& entry : split(need(c.weights, "--weights"), ',')) {
    auto [v, w] = split_pair(entry, '=');
    mu.weights[std::stoul(v)] = parse_rational(w);
  }
  Outcome out;
  out.report = io::type_to_json(barycenter(hull, mu), &m);
  return out;
}

Outcome cmd_types_keisler(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  TypeHull hull = type_hull(m, family_of(c, m), c.cap);
  BoundaryMeasure mu = keisler_decompose(hull, parse_rational_list(need(c.point, "--point")));
  Outcome out;
  Json weights = Json::object();
  for (const auto& [v, w] : mu.weights) weights[std::to_string(v)] = to_pq(w);
  out.report["weights"] = weights;
  return out;
}

Outcome cmd_types_distance(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  TypeVector p{nullptr, {}, distribution_of(need(c.p, "--p"), m)};
  TypeVector q{nullptr, {}, distribution_of(need(c.q, "--q"), m)};
  Outcome out;
  out.report["distance"] = to_pq(type_distance(m, p, q));
  return out;
}

// ---------------------------------------------------------------- definability

Outcome cmd_distance_axioms(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  PredicateTable p = predicate_of(c, m, c.predicate);
  auto r = check_distance_axioms(m, p);
  TupleSpace space(m.size(), p.arity);
  Outcome out;
  out.report["nonnegative"] = r.nonnegative;
  if (r.negative_at) out.report["negative_at"] = labels_of(m, space.tuple(*r.negative_at));
  out.report["lipschitz"] = r.lipschitz;
  if (r.lipschitz_pair) {
    out.report["lipschitz_pair"] = {labels_of(m, space.tuple(r.lipschitz_pair->first)),
                                    labels_of(m, space.tuple(r.lipschitz_pair->second))};
  }
  out.report["approximately_satisfiable"] = r.approximately_satisfiable;
  if (r.unsatisfiable_at) {
    out.report["unsatisfiable_at"] = labels_of(m, space.tuple(*r.unsatisfiable_at));
    out.report["farkas"] = io::rationals_json(r.farkas);
  }
  out.code = r.ok() ? kOk : kCheckedFalse;
  return out;
}

Outcome cmd_recover(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  PredicateTable p = predicate_of(c, m, c.predicate);
  auto report = check_distance_axioms(m, p);
  Outcome out;
  if (!report.ok()) {
    out.report["recovered"] = false;
    out.report["reason"] = "table fails the distance-predicate axioms";
    out.code = kCheckedFalse;
    return out;
  }
  TupleSpace space(m.size(), p.arity);
  Json zs = Json::array();
  for (auto t : zeroset_recover(m, p)) zs.push_back(labels_of(m, space.tuple(t)));
  out.report["recovered"] = true;
  out.report["zeroset"] = zs;
  return out;
}

Outcome cmd_domination(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  PredicateTable p = predicate_of(c, m, c.predicate);
  if (c.other.empty()) throw UsageError("missing --other");
  PredicateTable q = io::predicate_from_json(Json::parse(io::read_file(c.other)), m.size());
  auto r = lambda_domination(p, q, parse_rational(c.eps));
  Outcome out;
  if (r.lambda) {
    out.report["lambda"] = to_pq(*r.lambda);
  } else {
    TupleSpace space(m.size(), p.arity);
    out.report["counterexample"] = labels_of(m, space.tuple(*r.counterexample));
    out.report["P"] = to_pq(p.values[*r.counterexample]);
    out.report["Q"] = to_pq(q.values[*r.counterexample]);
    out.code = kCheckedFalse;
  }
  return out;
}

Outcome definability_outcome(const DefinabilityResult& r) {
  Outcome out;
  out.report["definable"] = r.definable;
  if (r.witness) out.report["witness"] = io::functional_to_json(*r.witness);
  if (r.failure) out.report["failure"] = failure_json(*r.failure);
  out.code = r.definable ? kOk : kCheckedFalse;
  return out;
}

Outcome cmd_def_predicate(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  PredicateTable p = predicate_of(c, m, c.predicate);
  return definability_outcome(is_definable_predicate(m, p, *family_of(c, m)));
}

Outcome cmd_def_set(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  FamilyPtr family = family_of(c, m);
  TupleSet d = io::parse_tuple_set(need(c.set, "--set"), m, family->vars.size());
  return definability_outcome(is_definable_set(m, d, *family));
}

Outcome cmd_project(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  PredicateTable p = predicate_of(c, m, c.predicate);
  TupleSet d = io::parse_tuple_set(need(c.set, "--set"), m, c.inner_arity);
  auto r = inf_over_definable(m, d, c.inner_arity, p, parse_rational(c.lambda));
  Outcome out;
  out.report["table"] = io::predicate_to_json(r.table);
  out.report["via_distance"] = io::rationals_json(r.via_distance);
  out.report["identity_holds"] = r.identity_holds;
  out.code = r.identity_holds ? kOk : kCheckedFalse;
  return out;
}

Outcome cmd_invariant_type(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  FunctionMap f = io::function_from_json(Json::parse(io::read_file(need(c.function, "--function"))), m.size());
  TypeVector p = invariant_type(m, f, family_or_formula(c, m));
  Outcome out;
  out.report = io::type_to_json(p, &m);
  out.report["pushforward_invariant"] = is_pushforward_invariant(f, *p.witness);
  return out;
}

Outcome cmd_auto_invariant(const RunConfig& c) {
  FiniteStructure m = structure_at(c);
  PredicateTable p = predicate_of(c, m, c.predicate);
  auto r = automorphism_invariant(m, p);
  Outcome out;
  out.report["invariant"] = r.invariant;
  if (!r.invariant) {
    Json g = Json::object();
    for (std::size_t i = 0; i < r.automorphism->size(); ++i) g[m.labels()[i]] = m.labels()[(*r.automorphism)[i]];
    out.report["automorphism"] = g;
    out.report["tuple"] = labels_of(m, TupleSpace(m.size(), p.arity).tuple(*r.tuple));
    out.code = kCheckedFalse;
  }
  return out;
}

// ---------------------------------------------------------------- pra

pra::MeasureAlgebra algebra_of(const RunConfig& c) {
  return pra::MeasureAlgebra(parse_rational_list(need(c.mu, "--mu")));
}

std::set<pra::Elem> element_set(const pra::MeasureAlgebra& alg, const std::string& text) {
  std::set<pra::Elem> out;
  for (const auto& e : split(text, ',')) out.insert(alg.parse(e));
  return out;
}

Json labels_json(const pra::MeasureAlgebra& alg, const std::set<pra::Elem>& s) {
  Json out = Json::array();
  for (auto e : s) out.push_back(alg.label(e));
  return out;
}

Outcome cmd_pra_build(const RunConfig& c) {
  auto alg = algebra_of(c);
  FiniteStructure m = alg.to_structure();
  std::string violated = pra::check_axioms(m);
  Outcome out;
  out.report["atoms"] = alg.atoms();
  out.report["size"] = alg.size();
  out.report["valid"] = validate_structure(m).ok();
  out.report["axioms"] = violated.empty() ? "all hold" : "violated: " + violated;
  out.report["structure"] = io::structure_to_json(m);
  out.code = violated.empty() ? kOk : kCheckedFalse;
  return out;
}

Outcome cmd_pra_interval(const RunConfig& c) {
  auto alg = algebra_of(c);
  pra::Elem x = alg.parse(need(c.x, "--x"));
  pra::Elem a = alg.parse(need(c.a, "--a"));
  pra::Elem b = alg.parse(need(c.b, "--b"));
  Outcome out;
  out.report["distance"] = to_pq(pra::interval_distance(alg, x, a, b));
  out.report["closest"] = alg.label(pra::interval_projection(alg, x, a, b));
  return out;
}

Outcome cmd_pra_hahn(const RunConfig& c) {
  auto alg = algebra_of(c);
  pra::AdditiveFunction f(alg, parse_rational_list(need(c.values, "--values")));
  auto h = pra::hahn_max_set(alg, f);
  Outcome out;
  out.report["a"] = alg.label(h.positive);
  out.report["b"] = alg.label(h.negative);
  out.report["interval"] = {alg.label(h.lower), alg.label(h.upper)};
  auto members = pra::interval_members(alg, h.lower, h.upper);
  out.report["argmax"] = labels_json(alg, {members.begin(), members.end()});
  out.report["max_value"] = to_pq(h.max_value);
  return out;
}

Outcome cmd_pra_dcl(const RunConfig& c) {
  auto alg = algebra_of(c);
  Outcome out;
  out.report["dcl"] = labels_json(alg, pra::dcl(alg, element_set(alg, c.set)));
  return out;
}

Outcome cmd_pra_definable(const RunConfig& c) {
  auto alg = algebra_of(c);
  auto r = pra::pra_definable_check(alg, element_set(alg, need(c.set, "--set")));
  Outcome out;
  out.report["definable"] = r.definable;
  out.report["interval"] = {alg.label(r.lower), alg.label(r.upper)};
  if (r.missing) out.report["missing"] = alg.label(*r.missing);
  if (r.definable) out.report["distance_formula_agrees"] = r.distance_formula_agrees;
  out.code = r.definable && r.distance_formula_agrees ? kOk : kCheckedFalse;
  return out;
}

// ---------------------------------------------------------------- suite

Outcome cmd_suite(const RunConfig& c) {
  std::vector<suite::CriterionResult> results;
  if (c.criterion) {
    results.push_back(suite::run_criterion(c.criterion, c.seed));
  } else {
    results = suite::run_all(c.seed);
  }
  Outcome out;
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back(suite::format(r));
    all = all && r.pass;
  }
  out.report["criteria"] = list;
  out.report["all_pass"] = all;
  out.code = all ? kOk : kCheckedFalse;
  return out;
}

const std::map<std::string, std::function<Outcome(const RunConfig&)>>& commands() {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table{
      {"parse", cmd_parse},
      {"cert", cmd_cert},
      {"eval", cmd_eval},
      {"automorphisms", cmd_automorphisms},
      {"ultramean build", cmd_ultramean_build},
      {"ultramean verify", cmd_ultramean_verify},
      {"types hull", cmd_types_hull},
      {"types extreme", cmd_types_extreme},
      {"types face", cmd_types_face},
      {"types facial", cmd_types_facial},
      {"types satisfiable", cmd_types_satisfiable},
      {"types barycenter", cmd_types_barycenter},
      {"types keisler", cmd_types_keisler},
      {"types distance", cmd_types_distance},
      {"defcheck distance-axioms", cmd_distance_axioms},
      {"defcheck recover", cmd_recover},
      {"defcheck domination", cmd_domination},
      {"defcheck predicate", cmd_def_predicate},
      {"defcheck set", cmd_def_set},
      {"defcheck project", cmd_project},
      {"defcheck invariant-type", cmd_invariant_type},
      {"defcheck auto-invariant", cmd_auto_invariant},
      {"pra build", cmd_pra_build},
      {"pra interval", cmd_pra_interval},
      {"pra hahn", cmd_pra_hahn},
      {"pra dcl", cmd_pra_dcl},
      {"pra definable", cmd_pra_definable},
      {"suite", cmd_suite},
  };
  return table;
}

void print_human(const Json& report) {
  for (const auto& [key, value] : report.items()) {
    if (value.is_string()) {
      std::cout << key << ": " << value.get<std::string>() << "\n";
    } else if (key == "criteria" && value.is_array()) {
      for (const auto& line : value) std::cout << line.get<std::string>() << "\n";
    } else {
      std::cout << key << ": " << value.dump() << "\n";
    }
  }
}

}  // namespace

int run(const RunConfig& config) {
  std::string name;
  for (const auto& part : config.command) name += (name.empty() ? "" : " ") + part;
  auto it = commands().find(name);
  if (it == commands().end()) {
    std::cerr << "error: unknown command '" << name << "'\n";
    return kUsage;
  }
  if (config.cap == 0) {
    std::cerr << "error: --cap must be positive\n";
    return kUsage;
  }
  try {
    Outcome out = it->second(config);
    if (config.json) {
      std::cout << out.report.dump(2) << "\n";
    } else {
      print_human(out.report);
    }
    return out.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}

int main(int argc, char** argv) {
  CLI::App app{"affine: exact tools for affine continuous logic on finite structures"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--structure", cfg.structures, "structure file or builtin (pra22, pra2, pra:w1,...)");
    sub->add_option("--family", cfg.family, "formula family file");
    sub->add_option("--mu", cfg.mu, "comma-separated rational weights");
    sub->add_flag("--json", cfg.json, "machine-readable report");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_option("--cap", cfg.cap, "size cap for tuple spaces and quotients");
    sub->add_option("--formula", cfg.formula, "formula text");
    sub->add_option("--condition", cfg.conditions, "condition text, repeatable");
    sub->add_option("--vars", cfg.vars, "comma-separated variable order");
    sub->add_option("--assign", cfg.assign, "x=label,y=label");
    sub->add_option("--predicate", cfg.predicate, "predicate table file");
    sub->add_option("--other", cfg.other, "second predicate table file");
    sub->add_option("--function", cfg.function, "function table file");
    sub->add_option("--set", cfg.set, "tuples 'a,b;c,d' or algebra elements '10,01'");
    sub->add_option("--arity", cfg.arity, "tuple arity");
    sub->add_option("--inner-arity", cfg.inner_arity, "arity of the projected coordinates");
    sub->add_option("--lambda", cfg.lambda, "Lipschitz constant");
    sub->add_option("--eps", cfg.eps, "slack for domination");
    sub->add_option("--raw", cfg.raw, "raw tuples 'x=a1,a2;y=b1,b2'");
    sub->add_option("--weights", cfg.weights, "vertex weights '0=1/3,2=2/3'");
    sub->add_option("--point", cfg.point, "type vector 'v1,v2,...'");
    sub->add_option("--p", cfg.p, "witness distribution 'tuple=w;...'");
    sub->add_option("--q", cfg.q, "witness distribution 'tuple=w;...'");
    sub->add_option("--x", cfg.x, "algebra element");
    sub->add_option("--a", cfg.a, "lower interval end");
    sub->add_option("--b", cfg.b, "upper interval end");
    sub->add_option("--values", cfg.values, "atom values");
    sub->add_flag("--max", cfg.maximize, "maximize instead of minimize");
    sub->add_option("--criterion", cfg.criterion, "run a single acceptance criterion");
  };

  std::vector<std::pair<CLI::App*, std::vector<std::string>>> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& [name, fn] : commands()) {
    auto words = split(name, ' ');
    CLI::App* parent = &app;
    if (words.size() == 2) {
      auto& g = groups[words[0]];
      if (!g) {
        g = app.add_subcommand(words[0], words[0] + " operations");
        g->require_subcommand(1);
      }
      parent = g;
    }
    CLI::App* leaf = parent->add_subcommand(words.back());
    common(leaf);
    leaves.emplace_back(leaf, words);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  for (const auto& [leaf, words] : leaves) {
    if (leaf->parsed()) cfg.command = words;
  }
  return run(cfg);
}

}  // namespace affine::cli
