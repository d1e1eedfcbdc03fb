#include "affine/definability.hpp"

#include <algorithm>

namespace affine {

namespace {

TupleSpace space_of(const PredicateTable& p) { return TupleSpace(p.domain, p.arity); }

void check_table(const FiniteStructure& m, const PredicateTable& p) {
  if (p.domain != m.size()) throw Error("predicate table is over a different domain");
  if (p.values.size() != TupleSpace(p.domain, p.arity).size()) throw Error("predicate table is incomplete");
}

}  // namespace

PredicateTable formula_predicate(const FiniteStructure& m, const Formula& phi, const std::vector<std::string>& vars) {
  return {m.size(), vars.size(), formula_table(m, phi, vars), std::nullopt};
}

PredicateTable distance_predicate(const FiniteStructure& m, std::size_t arity, const TupleSet& d) {
  TupleSpace space(m.size(), arity);
  PredicateTable out{m.size(), arity, std::vector<Rational>(space.size()), std::nullopt};
  if (d.empty()) {
    // inf over the empty set is the sup norm of the tuple metric
    Rational norm = m.diameter() * static_cast<unsigned long>(arity);
    std::fill(out.values.begin(), out.values.end(), norm);
    return out;
  }
  std::vector<Tuple> members;
  for (auto idx : d) {
    if (idx >= space.size()) throw Error("tuple index out of range in set");
    members.push_back(space.tuple(idx));
  }
  for (std::size_t t = 0; t < space.size(); ++t) {
    Tuple x = space.tuple(t);
    Rational best = m.tuple_distance(x, members.front());
    for (std::size_t k = 1; k < members.size(); ++k) {
      Rational v = m.tuple_distance(x, members[k]);
      if (v < best) best = std::move(v);
    }
    out.values[t] = std::move(best);
  }
  return out;
}

DistanceAxiomReport check_distance_axioms(const FiniteStructure& m, const PredicateTable& p) {
  check_table(m, p);
  TupleSpace space = space_of(p);
  DistanceAxiomReport report;
  for (std::size_t t = 0; t < space.size(); ++t) {
    if (p.values[t] < 0) {
      report.nonnegative = false;
      report.negative_at = t;
      break;
    }
  }
  std::vector<Tuple> tuples;
  for (std::size_t t = 0; t < space.size(); ++t) tuples.push_back(space.tuple(t));
  for (std::size_t x = 0; x < space.size() && report.lipschitz; ++x) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (p.values[x] - p.values[y] > m.tuple_distance(tuples[x], tuples[y])) {
        report.lipschitz = false;
        report.lipschitz_pair = {x, y};
        break;
      }
    }
  }
  // (iii): {P(y) <= 0, d(a, y) <= P(a)} affinely satisfiable, for each a
  for (std::size_t a = 0; a < space.size(); ++a) {
    std::vector<std::vector<Rational>> slack(2, std::vector<Rational>(space.size()));
    for (std::size_t y = 0; y < space.size(); ++y) {
      slack[0][y] = -p.values[y];
      slack[1][y] = p.values[a] - m.tuple_distance(tuples[a], tuples[y]);
    }
    auto sat = affine_satisfiable_tables(m.size(), p.arity, slack);
    if (!sat.satisfiable) {
      report.approximately_satisfiable = false;
      report.unsatisfiable_at = a;
      report.farkas = sat.farkas;
      break;
    }
  }
  return report;
}

TupleSet zeroset_recover(const FiniteStructure& m, const PredicateTable& p) {
  auto report = check_distance_axioms(m, p);
  if (!report.ok()) throw Error("table fails the distance-predicate axioms; refusing to recover a zeroset");
  TupleSet zeros;
  for (std::size_t t = 0; t < p.values.size(); ++t) {
    if (p.values[t] == 0) zeros.insert(t);
  }
  if (zeros.empty()) throw Error("zeroset is empty");
  if (distance_predicate(m, p.arity, zeros).values != p.values) {
    throw Error("distance to the zeroset does not reproduce the table");
  }
  return zeros;
}

DominationResult lambda_domination(const PredicateTable& p, const PredicateTable& q, const Rational& eps) {
  if (p.values.size() != q.values.size()) throw Error("tables over different tuple spaces");
  if (eps < 0) throw Error("eps must be nonnegative");
  for (std::size_t t = 0; t < p.values.size(); ++t) {
    if (p.values[t] < 0 || q.values[t] < 0) throw Error("domination needs nonnegative tables");
  }
  DominationResult out;
  for (std::size_t t = 0; t < p.values.size(); ++t) {
    if (p.values[t] == 0 && q.values[t] > eps) {
      out.counterexample = t;
      return out;
    }
  }
  Rational best = 0;
  for (std::size_t t = 0; t < p.values.size(); ++t) {
    if (p.values[t] == 0) continue;
    Rational ratio = (q.values[t] - eps) / p.values[t];
    if (ratio > best) best = ratio;
  }
  for (std::size_t t = 0; t < p.values.size(); ++t) {
    if (q.values[t] > best * p.values[t] + eps) throw Error("lambda_domination: minimal lambda failed re-verification");
  }
  out.lambda = best;
  return out;
}

std::vector<std::vector<Rational>> family_features(const FiniteStructure& m, const FormulaFamily& family) {
  TupleSpace space(m.size(), family.vars.size());
  std::vector<std::vector<Rational>> features(space.size());
  for (const auto& phi : family.formulas) {
    auto table = formula_table(m, phi, family.vars);
    for (std::size_t t = 0; t < space.size(); ++t) features[t].push_back(std::move(table[t]));
  }
  return features;
}

DefinabilityResult is_definable_predicate(const PredicateTable& p, const std::vector<std::vector<Rational>>& features) {
  Factoring fac = affine_factor(p.values, features);
  DefinabilityResult out;
  out.definable = fac.ok();
  out.witness = fac.functional;
  out.failure = fac.failure;
  return out;
}

DefinabilityResult is_definable_predicate(const FiniteStructure& m, const PredicateTable& p,
                                          const FormulaFamily& family) {
  check_table(m, p);
  if (family.vars.size() != p.arity) throw Error("family variables do not match the predicate arity");
  return is_definable_predicate(p, family_features(m, family));
}

DefinabilityResult is_definable_set(const FiniteStructure& m, const TupleSet& d, const FormulaFamily& family) {
  if (d.empty()) throw Error("is_definable_set needs a nonempty set");
  return is_definable_predicate(m, distance_predicate(m, family.vars.size(), d), family);
}

ProjectionResult inf_over_definable(const FiniteStructure& m, const TupleSet& d, std::size_t inner_arity,
                                    const PredicateTable& p, const Rational& lambda) {
  check_table(m, p);
  if (d.empty()) throw Error("projection over an empty set");
  if (inner_arity > p.arity) throw Error("inner arity exceeds the predicate arity");
  const std::size_t outer_arity = p.arity - inner_arity;
  TupleSpace outer(m.size(), outer_arity);
  TupleSpace inner(m.size(), inner_arity);
  std::vector<Tuple> inner_tuples;
  for (std::size_t z = 0; z < inner.size(); ++z) inner_tuples.push_back(inner.tuple(z));
  auto at = [&](std::size_t x, std::size_t y) -> const Rational& { return p.values[x * inner.size() + y]; };

  for (std::size_t x = 0; x < outer.size(); ++x) {
    for (std::size_t y = 0; y < inner.size(); ++y) {
      for (std::size_t z = 0; z < inner.size(); ++z) {
        if (at(x, y) > at(x, z) + lambda * m.tuple_distance(inner_tuples[z], inner_tuples[y])) {
          throw Error("predicate is not " + to_short(lambda) + "-Lipschitz in the projected coordinates");
        }
      }
    }
  }

  auto dist = distance_predicate(m, inner_arity, d);
  ProjectionResult out;
  out.table = PredicateTable{m.size(), outer_arity, std::vector<Rational>(outer.size()), std::nullopt};
  out.via_distance.resize(outer.size());
  for (std::size_t x = 0; x < outer.size(); ++x) {
    bool first = true;
    for (auto y : d) {
      if (first || at(x, y) < out.table.values[x]) out.table.values[x] = at(x, y);
      first = false;
    }
    for (std::size_t z = 0; z < inner.size(); ++z) {
      Rational v = at(x, z) + lambda * dist.values[z];
      if (z == 0 || v < out.via_distance[x]) out.via_distance[x] = std::move(v);
    }
  }
  out.identity_holds = out.table.values == out.via_distance;
  return out;
}

void validate_function(const FiniteStructure& m, const FunctionMap& f) {
  if (f.domain != m.size()) throw Error("function table is over a different domain");
  TupleSpace in(m.size(), f.in_arity);
  TupleSpace out(m.size(), f.out_arity);
  if (f.values.size() != in.size()) throw Error("function table is incomplete");
  for (auto v : f.values) {
    if (v >= out.size()) throw Error("function value out of range");
  }
  for (std::size_t a = 0; a < in.size(); ++a) {
    for (std::size_t b = a + 1; b < in.size(); ++b) {
      if (m.tuple_distance(out.tuple(f.values[a]), out.tuple(f.values[b])) >
          f.lambda * m.tuple_distance(in.tuple(a), in.tuple(b))) {
        throw Error("function table is not " + to_short(f.lambda) + "-Lipschitz");
      }
    }
  }
}

TupleSet image(const FunctionMap& f, const TupleSet& d) {
  TupleSet out;
  for (auto t : d) out.insert(f.values.at(t));
  return out;
}

PredicateTable image_distance(const FiniteStructure& m, const FunctionMap& f, const TupleSet& d) {
  if (d.empty()) throw Error("image of an empty set");
  TupleSpace out(m.size(), f.out_arity);
  PredicateTable table{m.size(), f.out_arity, std::vector<Rational>(out.size()), std::nullopt};
  for (std::size_t x = 0; x < out.size(); ++x) {
    Tuple xt = out.tuple(x);
    bool first = true;
    for (auto t : d) {
      Rational v = m.tuple_distance(xt, out.tuple(f.values.at(t)));
      if (first || v < table.values[x]) table.values[x] = std::move(v);
      first = false;
    }
  }
  return table;
}

TupleSet graph(const FunctionMap& f) {
  const std::size_t out_size = TupleSpace(f.domain, f.out_arity).size();
  TupleSet g;
  for (std::size_t x = 0; x < f.values.size(); ++x) g.insert(x * out_size + f.values[x]);
  return g;
}

GraphIdentityReport check_graph_identities(const FiniteStructure& m, const FunctionMap& f) {
  validate_function(m, f);
  TupleSpace in(m.size(), f.in_arity);
  TupleSpace out(m.size(), f.out_arity);
  auto graph_dist = distance_predicate(m, f.in_arity + f.out_arity, graph(f));
  std::vector<Tuple> ins, outs;
  for (std::size_t x = 0; x < in.size(); ++x) ins.push_back(in.tuple(x));
  for (std::size_t y = 0; y < out.size(); ++y) outs.push_back(out.tuple(y));

  GraphIdentityReport report{true, true};
  for (std::size_t x = 0; x < in.size(); ++x) {
    for (std::size_t y = 0; y < out.size(); ++y) {
      Rational via_u;
      for (std::size_t u = 0; u < in.size(); ++u) {
        Rational v = m.tuple_distance(ins[x], ins[u]) + m.tuple_distance(outs[f.values[u]], outs[y]);
        if (u == 0 || v < via_u) via_u = std::move(v);
      }
      if (via_u != graph_dist.values[x * out.size() + y]) report.graph_distance_holds = false;

      Rational via_v;
      for (std::size_t v = 0; v < out.size(); ++v) {
        Rational w = graph_dist.values[x * out.size() + v] + m.tuple_distance(outs[v], outs[y]);
        if (v == 0 || w < via_v) via_v = std::move(w);
      }
      if (via_v != m.tuple_distance(outs[f.values[x]], outs[y])) report.function_distance_holds = false;
    }
  }
  return report;
}

PredicateTable compose(const PredicateTable& p, const FunctionMap& f, std::size_t trailing) {
  if (p.arity != f.out_arity + trailing) throw Error("compose: arity mismatch");
  const std::size_t tail = TupleSpace(p.domain, trailing).size();
  PredicateTable out{p.domain, f.in_arity + trailing, {}, std::nullopt};
  out.values.reserve(f.values.size() * tail);
  for (std::size_t x = 0; x < f.values.size(); ++x) {
    for (std::size_t y = 0; y < tail; ++y) out.values.push_back(p.values[f.values[x] * tail + y]);
  }
  return out;
}

std::vector<std::vector<Rational>> compose_features(const std::vector<std::vector<Rational>>& features,
                                                    const FunctionMap& f, std::size_t trailing) {
  const std::size_t tail = TupleSpace(f.domain, trailing).size();
  std::vector<std::vector<Rational>> out;
  out.reserve(f.values.size() * tail);
  for (std::size_t x = 0; x < f.values.size(); ++x) {
    for (std::size_t y = 0; y < tail; ++y) out.push_back(features.at(f.values[x] * tail + y));
  }
  return out;
}

TypeVector invariant_type(const FiniteStructure& m, const FunctionMap& f, const FamilyPtr& family) {
  if (f.in_arity != 1 || f.out_arity != 1) throw Error("invariant_type needs a unary map M -> M");
  validate_function(m, f);
  if (family->vars.size() != 1) throw Error("invariant_type needs a family in one variable");
  const std::size_t n = m.size();

  // every cycle of the functional graph, each listed once
  std::vector<int> cycle_id(n, -1);
  std::vector<std::vector<Element>> cycles;
  for (Element start = 0; start < n; ++start) {
    std::vector<int> seen_at(n, -1);
    std::vector<Element> path;
    Element cur = start;
    while (seen_at[cur] < 0 && cycle_id[cur] < 0) {
      seen_at[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      cur = f.values[cur];
    }
    if (cycle_id[cur] >= 0) continue;
    std::vector<Element> cyc(path.begin() + seen_at[cur], path.end());
    for (auto e : cyc) cycle_id[e] = static_cast<int>(cycles.size());
    std::sort(cyc.begin(), cyc.end());
    cycles.push_back(std::move(cyc));
  }
  const auto& best = *std::min_element(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.front() < b.front();
  });

  Rational w(1, static_cast<unsigned long>(best.size()));
  std::vector<TypeVector> parts;
  std::vector<Rational> gamma;
  for (auto e : best) {
    parts.push_back(realized_type(m, {e}, family));
    gamma.push_back(w);
  }
  return mixture_type(parts, gamma);
}

bool is_pushforward_invariant(const FunctionMap& f, const Witness& w) {
  std::map<std::size_t, Rational> pushed;
  for (const auto& [t, weight] : w.weights) pushed[f.values.at(t)] += weight;
  for (auto it = pushed.begin(); it != pushed.end();) {
    it = it->second == 0 ? pushed.erase(it) : std::next(it);
  }
  std::map<std::size_t, Rational> original;
  for (const auto& [t, weight] : w.weights) {
    if (weight != 0) original[t] = weight;
  }
  return pushed == original;
}

InvarianceReport automorphism_invariant(const FiniteStructure& m, const PredicateTable& p) {
  check_table(m, p);
  TupleSpace space = space_of(p);
  InvarianceReport report;
  for (const auto& g : automorphisms(m)) {
    for (std::size_t t = 0; t < space.size(); ++t) {
      Tuple img = space.tuple(t);
      for (auto& e : img) e = g[e];
      if (p.values[space.index(img)] != p.values[t]) {
        report.invariant = false;
        report.automorphism = g;
        report.tuple = t;
        return report;
      }
    }
  }
  return report;
}

}  // namespace affine
