#include "affine/model.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace affine {

// ---------------------------------------------------------------- tuple spaces

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) throw Error("size cap exceeded: " + std::to_string(base) + "^" +
                                                   std::to_string(exp) + " > " + std::to_string(cap));
    out *= base;
  }
  if (out > cap) throw Error("size cap exceeded");
  return out;
}

TupleSpace::TupleSpace(std::size_t domain, std::size_t arity)
    : domain_(domain), arity_(arity), size_(checked_power(domain, arity, std::numeric_limits<std::size_t>::max() / 2)) {}

std::size_t TupleSpace::index(const Tuple& t) const {
  std::size_t idx = 0;
  for (Element e : t) idx = idx * domain_ + e;
  return idx;
}

Tuple TupleSpace::tuple(std::size_t index) const {
  Tuple t(arity_);
  for (std::size_t i = arity_; i-- > 0;) {
    t[i] = index % domain_;
    index /= domain_;
  }
  return t;
}

// ---------------------------------------------------------------- structures

FiniteStructure::FiniteStructure(Signature sig, std::vector<std::string> labels,
                                 std::vector<std::vector<Rational>> metric, std::vector<Element> constants,
                                 std::vector<FunctionTable> functions, std::vector<RelationTable> relations)
    : sig_(std::move(sig)),
      labels_(std::move(labels)),
      metric_(std::move(metric)),
      constants_(std::move(constants)),
      functions_(std::move(functions)),
      relations_(std::move(relations)) {}

std::optional<Element> FiniteStructure::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

Element FiniteStructure::constant(const std::string& name) const {
  auto idx = sig_.constant_index(name);
  if (!idx || *idx >= constants_.size()) throw Error("constant '" + name + "' not interpreted");
  return constants_[*idx];
}

const RelationTable& FiniteStructure::relation(const std::string& name) const {
  auto idx = sig_.relation_index(name);
  if (!idx || *idx >= relations_.size()) throw Error("relation '" + name + "' not interpreted");
  return relations_[*idx];
}

const FunctionTable& FiniteStructure::function(const std::string& name) const {
  auto idx = sig_.function_index(name);
  if (!idx || *idx >= functions_.size()) throw Error("function '" + name + "' not interpreted");
  return functions_[*idx];
}

Rational FiniteStructure::tuple_distance(const Tuple& a, const Tuple& b) const {
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += metric_[a[i]][b[i]];
  return total;
}

Rational FiniteStructure::diameter() const {
  Rational best = 0;
  for (const auto& row : metric_) {
    for (const auto& v : row) {
      if (v > best) best = v;
    }
  }
  return best;
}

bool FiniteStructure::is_first_order() const {
  auto binary = [](const Rational& v) { return v == 0 || v == 1; };
  for (const auto& row : metric_) {
    if (!std::all_of(row.begin(), row.end(), binary)) return false;
  }
  for (const auto& r : relations_) {
    if (!std::all_of(r.values.begin(), r.values.end(), binary)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- validation

namespace {

ValidationReport shape_error(std::string what, std::string symbol = {}) {
  return {ValidationReport::Status::ShapeError, std::move(what), std::move(symbol), {}};
}

ValidationReport violation(std::string axiom, std::string symbol, std::vector<Tuple> witness) {
  return {ValidationReport::Status::AxiomViolation, std::move(axiom), std::move(symbol), std::move(witness)};
}

ValidationReport check_shape(const FiniteStructure& m) {
  const std::size_t n = m.size();
  const auto& sig = m.signature();
  if (n == 0) return shape_error("empty domain");
  if (m.metric().size() != n) return shape_error("metric has wrong number of rows");
  for (const auto& row : m.metric()) {
    if (row.size() != n) return shape_error("metric row has wrong length");
  }
  if (m.constants().size() != sig.constants().size()) return shape_error("constant count mismatch");
  for (std::size_t i = 0; i < m.constants().size(); ++i) {
    if (m.constants()[i] >= n) return shape_error("constant out of range", sig.constants()[i]);
  }
  if (m.functions().size() != sig.functions().size()) return shape_error("function count mismatch");
  for (std::size_t i = 0; i < m.functions().size(); ++i) {
    const auto& f = m.functions()[i];
    const auto& name = sig.functions()[i].name;
    if (f.arity != sig.functions()[i].arity) return shape_error("function arity mismatch", name);
    if (f.values.size() != TupleSpace(n, f.arity).size()) return shape_error("function table incomplete", name);
    for (Element e : f.values) {
      if (e >= n) return shape_error("function value out of range", name);
    }
  }
  if (m.relations().size() != sig.relations().size()) return shape_error("relation count mismatch");
  for (std::size_t i = 0; i < m.relations().size(); ++i) {
    const auto& r = m.relations()[i];
    const auto& name = sig.relations()[i].name;
    if (r.arity != sig.relations()[i].arity) return shape_error("relation arity mismatch", name);
    if (r.values.size() != TupleSpace(n, r.arity).size()) return shape_error("relation table incomplete", name);
  }
  return {};
}

// Under the sum metric a table is lambda-Lipschitz iff it is so along pairs
// of tuples differing in one coordinate (chain through the intermediate
// tuples), so only those pairs are visited.
template <class Bad>
void for_each_step(const TupleSpace& space, const Tuple& a, Bad bad, std::vector<Tuple>& witness,
                   const FiniteStructure& m) {
  Tuple b = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (Element e = a[i] + 1; e < space.domain(); ++e) {
      b[i] = e;
      if (bad(space.index(b), m.distance(a[i], e))) {
        witness = {a, b};
        return;
      }
    }
    b[i] = a[i];
  }
}

}  // namespace

ValidationReport validate_structure(const FiniteStructure& m) {
  std::vector<Tuple> witness;
  if (auto shape = check_shape(m); !shape.ok()) return shape;
  const std::size_t n = m.size();
  const auto& sig = m.signature();

  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Rational& d = m.distance(a, b);
      if (d < 0 || d > 1) return violation("metric range [0,1]", "d", {{a}, {b}});
    }
  }
  for (Element a = 0; a < n; ++a) {
    if (m.distance(a, a) != 0) return violation("zero self-distance", "d", {{a}, {a}});
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (m.distance(a, b) != m.distance(b, a)) return violation("symmetry", "d", {{a}, {b}});
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (a != b && m.distance(a, b) == 0) return violation("identity of indiscernibles", "d", {{a}, {b}});
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (m.distance(a, b) > m.distance(a, c) + m.distance(c, b)) {
          return violation("triangle inequality", "d", {{a}, {b}, {c}});
        }
      }
    }
  }

  for (std::size_t i = 0; i < m.relations().size(); ++i) {
    const auto& r = m.relations()[i];
    const auto& name = sig.relations()[i].name;
    const Rational& lambda = sig.relations()[i].lambda;
    TupleSpace space(n, r.arity);
    for (std::size_t t = 0; t < space.size(); ++t) {
      if (r.values[t] < 0 || r.values[t] > 1) return violation("relation range [0,1]", name, {space.tuple(t)});
    }
    for (std::size_t s = 0; s < space.size(); ++s) {
      Tuple a = space.tuple(s);
      for_each_step(space, a, [&](std::size_t t, const Rational& dist) {
        return abs(Rational(r.values[s] - r.values[t])) > lambda * dist;
      }, witness, m);
      if (!witness.empty()) return violation("relation Lipschitz bound", name, witness);
    }
  }

  for (std::size_t i = 0; i < m.functions().size(); ++i) {
    const auto& f = m.functions()[i];
    const auto& name = sig.functions()[i].name;
    const Rational& lambda = sig.functions()[i].lambda;
    TupleSpace space(n, f.arity);
    for (std::size_t s = 0; s < space.size(); ++s) {
      Tuple a = space.tuple(s);
      for_each_step(space, a, [&](std::size_t t, const Rational& dist) {
        return m.distance(f.values[s], f.values[t]) > lambda * dist;
      }, witness, m);
      if (!witness.empty()) return violation("function Lipschitz bound", name, witness);
    }
  }
  return {};
}

// ---------------------------------------------------------------- evaluation

namespace {

struct CompiledTerm {
  Term::Kind kind;
  std::size_t index;  // variable slot, constant element, or function index
  std::vector<CompiledTerm> args;
};

struct CompiledFormula {
  FormulaKind kind;
  std::size_t relation = 0;  // relation index; ignored for the metric
  bool is_metric = false;
  std::vector<CompiledTerm> terms;
  Rational coeff;
  std::vector<CompiledFormula> children;
  std::size_t slot = 0;
};

class Compiler {
 public:
  explicit Compiler(const FiniteStructure& m) : m_(m) {}

  std::size_t bind_free(const std::string& name) {
    scope_.push_back({name, slots_});
    return slots_++;
  }

  std::size_t slot_count() const { return slots_; }

  CompiledFormula compile(const Formula& phi) {
    CompiledFormula out{phi->kind, 0, false, {}, phi->coeff, {}, 0};
    switch (phi->kind) {
      case FormulaKind::One:
        break;
      case FormulaKind::Atom:
        if (phi->symbol == kMetricSymbol) {
          out.is_metric = true;
        } else {
          auto idx = m_.signature().relation_index(phi->symbol);
          if (!idx || *idx >= m_.relations().size()) {
            throw Error("relation '" + phi->symbol + "' not interpreted in structure");
          }
          if (m_.relations()[*idx].arity != phi->terms.size()) {
            throw Error("arity mismatch for '" + phi->symbol + "'");
          }
          out.relation = *idx;
        }
        for (const auto& t : phi->terms) out.terms.push_back(compile(t));
        break;
      case FormulaKind::Scale:
        out.children.push_back(compile(phi->left));
        break;
      case FormulaKind::Sum:
        out.children.push_back(compile(phi->left));
        out.children.push_back(compile(phi->right));
        break;
      case FormulaKind::Inf:
      case FormulaKind::Sup:
        out.slot = bind_free(phi->var);
        out.children.push_back(compile(phi->left));
        scope_.pop_back();
        break;
    }
    return out;
  }

  CompiledTerm compile(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Var:
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first == t->name) return {Term::Kind::Var, it->second, {}};
        }
        throw UnboundVariableError("unbound variable '" + t->name + "'");
      case Term::Kind::Const:
        return {Term::Kind::Const, m_.constant(t->name), {}};
      case Term::Kind::Func: {
        auto idx = m_.signature().function_index(t->name);
        if (!idx || *idx >= m_.functions().size()) {
          throw Error("function '" + t->name + "' not interpreted in structure");
        }
        if (m_.functions()[*idx].arity != t->args.size()) throw Error("arity mismatch for '" + t->name + "'");
        CompiledTerm out{Term::Kind::Func, *idx, {}};
        for (const auto& a : t->args) out.args.push_back(compile(a));
        return out;
      }
    }
    throw Error("bad term");
  }

 private:
  const FiniteStructure& m_;
  std::vector<std::pair<std::string, std::size_t>> scope_;
  std::size_t slots_ = 0;
};

class Evaluator {
 public:
  Evaluator(const FiniteStructure& m, std::vector<Element>& env) : m_(m), env_(env) {}

  Element term(const CompiledTerm& t) const {
    switch (t.kind) {
      case Term::Kind::Var:
        return env_[t.index];
      case Term::Kind::Const:
        return t.index;
      case Term::Kind::Func: {
        const auto& f = m_.functions()[t.index];
        std::size_t idx = 0;
        for (const auto& a : t.args) idx = idx * m_.size() + term(a);
        return f.values[idx];
      }
    }
    return 0;
  }

  Rational formula(const CompiledFormula& f) const {
    switch (f.kind) {
      case FormulaKind::One:
        return Rational(1);
      case FormulaKind::Atom: {
        if (f.is_metric) return m_.distance(term(f.terms[0]), term(f.terms[1]));
        std::size_t idx = 0;
        for (const auto& t : f.terms) idx = idx * m_.size() + term(t);
        return m_.relations()[f.relation].values[idx];
      }
      case FormulaKind::Scale:
        return f.coeff * formula(f.children[0]);
      case FormulaKind::Sum:
        return formula(f.children[0]) + formula(f.children[1]);
      case FormulaKind::Inf:
      case FormulaKind::Sup: {
        bool is_inf = f.kind == FormulaKind::Inf;
        Rational best;
        for (Element e = 0; e < m_.size(); ++e) {
          env_[f.slot] = e;
          Rational v = formula(f.children[0]);
          if (e == 0 || (is_inf ? v < best : v > best)) best = std::move(v);
        }
        return best;
      }
    }
    return Rational(0);
  }

 private:
  const FiniteStructure& m_;
  std::vector<Element>& env_;
};

}  // namespace

Rational eval_formula(const FiniteStructure& m, const Formula& phi, const Assignment& asg) {
  Compiler c(m);
  std::vector<Element> initial;
  for (const auto& [name, e] : asg) {
    if (e >= m.size()) throw Error("assignment of '" + name + "' out of range");
    c.bind_free(name);
    initial.push_back(e);
  }
  CompiledFormula compiled = c.compile(phi);
  std::vector<Element> env(c.slot_count(), 0);
  std::copy(initial.begin(), initial.end(), env.begin());
  return Evaluator(m, env).formula(compiled);
}

std::vector<Rational> formula_table(const FiniteStructure& m, const Formula& phi,
                                    const std::vector<std::string>& vars) {
  Compiler c(m);
  for (const auto& v : vars) c.bind_free(v);
  CompiledFormula compiled = c.compile(phi);
  std::vector<Element> env(c.slot_count(), 0);
  Evaluator ev(m, env);
  TupleSpace space(m.size(), vars.size());
  std::vector<Rational> out;
  out.reserve(space.size());
  for (std::size_t t = 0; t < space.size(); ++t) {
    Tuple tup = space.tuple(t);
    std::copy(tup.begin(), tup.end(), env.begin());
    out.push_back(ev.formula(compiled));
  }
  return out;
}

bool holds(const FiniteStructure& m, const Condition& c, const Assignment& asg) {
  return eval_formula(m, c.lhs, asg) <= eval_formula(m, c.rhs, asg);
}

Element eval_term(const FiniteStructure& m, const TermPtr& t, const Assignment& asg) {
  Compiler c(m);
  std::vector<Element> env;
  for (const auto& [name, e] : asg) {
    c.bind_free(name);
    env.push_back(e);
  }
  CompiledTerm compiled = c.compile(t);
  return Evaluator(m, env).term(compiled);
}

// ---------------------------------------------------------------- automorphisms

bool is_automorphism(const FiniteStructure& m, const Permutation& g) {
  const std::size_t n = m.size();
  if (g.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Element e : g) {
    if (e >= n || hit[e]) return false;
    hit[e] = true;
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (m.distance(g[a], g[b]) != m.distance(a, b)) return false;
    }
  }
  for (Element c : m.constants()) {
    if (g[c] != c) return false;
  }
  auto image = [&](const TupleSpace& space, std::size_t idx) {
    Tuple t = space.tuple(idx);
    for (auto& e : t) e = g[e];
    return space.index(t);
  };
  for (const auto& f : m.functions()) {
    TupleSpace space(n, f.arity);
    for (std::size_t t = 0; t < space.size(); ++t) {
      if (f.values[image(space, t)] != g[f.values[t]]) return false;
    }
  }
  for (const auto& r : m.relations()) {
    TupleSpace space(n, r.arity);
    for (std::size_t t = 0; t < space.size(); ++t) {
      if (r.values[image(space, t)] != r.values[t]) return false;
    }
  }
  return true;
}

namespace {

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const FiniteStructure& m) : m_(m), image_(m.size()), used_(m.size(), false) {}

  std::vector<Permutation> run() {
    extend(0);
    return std::move(found_);
  }

 private:
  bool compatible(Element a, Element b) const {
    for (Element c : m_.constants()) {
      if ((c == a) != (c == b)) return false;
    }
    for (const auto& r : m_.relations()) {
      if (r.arity == 1 && r.values[a] != r.values[b]) return false;
    }
    for (Element k = 0; k < a; ++k) {
      Element gk = image_[k];
      if (m_.distance(a, k) != m_.distance(b, gk)) return false;
      for (const auto& r : m_.relations()) {
        if (r.arity != 2) continue;
        const std::size_t n = m_.size();
        if (r.values[a * n + k] != r.values[b * n + gk] || r.values[k * n + a] != r.values[gk * n + b]) {
          return false;
        }
      }
    }
    for (const auto& r : m_.relations()) {
      if (r.arity == 2 && r.values[a * m_.size() + a] != r.values[b * m_.size() + b]) return false;
    }
    return true;
  }

  void extend(Element a) {
    if (a == m_.size()) {
      if (is_automorphism(m_, image_)) found_.push_back(image_);
      return;
    }
    for (Element b = 0; b < m_.size(); ++b) {
      if (used_[b] || !compatible(a, b)) continue;
      used_[b] = true;
      image_[a] = b;
      extend(a + 1);
      used_[b] = false;
    }
  }

  const FiniteStructure& m_;
  Permutation image_;
  std::vector<bool> used_;
  std::vector<Permutation> found_;
};

}  // namespace

std::vector<Permutation> automorphisms(const FiniteStructure& m) {
  // lexicographic search, so the identity comes first
  return AutomorphismSearch(m).run();
}

}  // namespace affine
