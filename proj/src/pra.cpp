#include "affine/pra.hpp"

#include "affine/definability.hpp"

namespace affine::pra {

MeasureAlgebra::MeasureAlgebra(std::vector<Rational> weights, std::size_t atom_cap) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error("probability algebra needs at least one atom");
  if (weights_.size() > atom_cap) {
    throw Error("atom count " + std::to_string(weights_.size()) + " exceeds cap " + std::to_string(atom_cap));
  }
  if (weights_.size() > 20) throw Error("atom count too large to enumerate");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w <= 0) throw Error("atom weight " + to_short(w) + " is not positive");
    total += w;
  }
  if (total != 1) throw Error("atom weights sum to " + to_short(total) + ", not 1");
  mu_.assign(size(), Rational(0));
  for (Elem x = 1; x < size(); ++x) {
    // lowest set bit plus the rest
    Elem low = x & (~x + 1);
    std::size_t atom = 0;
    while ((Elem{1} << atom) != low) ++atom;
    mu_[x] = mu_[x ^ low] + weights_[atom];
  }
}

std::string MeasureAlgebra::label(Elem x) const {
  std::string out(atoms(), '0');
  for (std::size_t i = 0; i < atoms(); ++i) {
    if (x & (Elem{1} << i)) out[i] = '1';
  }
  return out;
}

Elem MeasureAlgebra::parse(const std::string& bits) const {
  if (bits.size() != atoms()) throw Error("element '" + bits + "' needs " + std::to_string(atoms()) + " bits");
  Elem x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') x |= Elem{1} << i;
    else if (bits[i] != '0') throw Error("element '" + bits + "' is not a bitmask");
  }
  return x;
}

Signature pra_signature(const std::vector<std::string>& parameter_names) {
  std::vector<std::string> constants{"zero", "one"};
  constants.insert(constants.end(), parameter_names.begin(), parameter_names.end());
  return Signature(std::move(constants),
                   {{"meet", 2, Rational(1)}, {"join", 2, Rational(1)}, {"comp", 1, Rational(1)}},
                   {{"mu", 1, Rational(1)}});
}

FiniteStructure MeasureAlgebra::to_structure(const std::vector<std::pair<std::string, Elem>>& parameters) const {
  const std::size_t n = size();
  std::vector<std::string> names;
  std::vector<Element> constants{zero(), one()};
  for (const auto& [name, e] : parameters) {
    if (e >= n) throw Error("parameter '" + name + "' is not an element");
    names.push_back(name);
    constants.push_back(e);
  }
  std::vector<std::string> labels;
  for (Elem x = 0; x < n; ++x) labels.push_back(label(x));
  std::vector<std::vector<Rational>> metric(n, std::vector<Rational>(n));
  FunctionTable meet_t{2, std::vector<Element>(n * n)};
  FunctionTable join_t{2, std::vector<Element>(n * n)};
  FunctionTable comp_t{1, std::vector<Element>(n)};
  RelationTable mu_t{1, std::vector<Rational>(n)};
  for (Elem x = 0; x < n; ++x) {
    comp_t.values[x] = complement(x);
    mu_t.values[x] = measure(x);
    for (Elem y = 0; y < n; ++y) {
      metric[x][y] = distance(x, y);
      meet_t.values[x * n + y] = meet(x, y);
      join_t.values[x * n + y] = join(x, y);
    }
  }
  return FiniteStructure(pra_signature(names), std::move(labels), std::move(metric), std::move(constants),
                         {std::move(meet_t), std::move(join_t), std::move(comp_t)}, {std::move(mu_t)});
}

std::string check_axioms(const FiniteStructure& s) {
  const std::size_t n = s.size();
  const auto& meet = s.function("meet").values;
  const auto& join = s.function("join").values;
  const auto& comp = s.function("comp").values;
  const auto& mu = s.relation("mu").values;
  const Element zero = s.constant("zero");
  const Element one = s.constant("one");
  auto m = [&](Element x, Element y) { return meet[x * n + y]; };
  auto j = [&](Element x, Element y) { return join[x * n + y]; };

  for (Element x = 0; x < n; ++x) {
    if (m(x, comp[x]) != zero || j(x, comp[x]) != one) return "complementation";
    if (m(x, one) != x || j(x, zero) != x) return "identity laws";
    for (Element y = 0; y < n; ++y) {
      if (m(x, y) != m(y, x) || j(x, y) != j(y, x)) return "commutativity";
      if (m(x, j(x, y)) != x || j(x, m(x, y)) != x) return "absorption";
    }
  }
  if (n <= 256) {
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        for (Element z = 0; z < n; ++z) {
          if (m(x, m(y, z)) != m(m(x, y), z) || j(x, j(y, z)) != j(j(x, y), z)) return "associativity";
          if (m(x, j(y, z)) != j(m(x, y), m(x, z)) || j(x, m(y, z)) != m(j(x, y), j(x, z))) {
            return "distributivity";
          }
        }
      }
    }
  }
  if (mu[zero] != 0 || mu[one] != 1) return "mu(0) = 0 and mu(1) = 1";
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (mu[x] > mu[j(x, y)]) return "monotonicity mu(x) <= mu(x join y)";
      if (mu[m(x, y)] + mu[j(x, y)] != mu[x] + mu[y]) return "modularity";
      Element sym = j(m(x, comp[y]), m(y, comp[x]));
      if (s.distance(x, y) != mu[sym]) return "d(x, y) = mu(x symmetric-difference y)";
    }
  }
  return {};
}

std::string check_axioms(const MeasureAlgebra& a) { return check_axioms(a.to_structure()); }

Rational interval_distance(const MeasureAlgebra& alg, Elem x, Elem a, Elem b) {
  if (!alg.leq(a, b)) throw Error("interval endpoints are not ordered: " + alg.label(a) + " > " + alg.label(b));
  return alg.measure(alg.meet(x, alg.complement(b))) + alg.measure(alg.meet(a, alg.complement(x)));
}

Elem interval_projection(const MeasureAlgebra& alg, Elem x, Elem a, Elem b) {
  if (!alg.leq(a, b)) throw Error("interval endpoints are not ordered");
  return alg.join(a, alg.meet(b, x));
}

AdditiveFunction::AdditiveFunction(const MeasureAlgebra& alg, std::vector<Rational> atom_values)
    : values_(std::move(atom_values)) {
  if (values_.size() != alg.atoms()) throw Error("additive function needs one value per atom");
}

Rational AdditiveFunction::operator()(Elem x) const {
  Rational total = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (x & (Elem{1} << i)) total += values_[i];
  }
  return total;
}

HahnMaxSet hahn_max_set(const MeasureAlgebra& alg, const AdditiveFunction& f) {
  Elem pos = 0;
  Elem neg = 0;
  for (std::size_t i = 0; i < alg.atoms(); ++i) {
    // zero atoms go to both sides so each side is maximal
    if (f.atom_values()[i] >= 0) pos |= Elem{1} << i;
    if (f.atom_values()[i] <= 0) neg |= Elem{1} << i;
  }
  return {pos, neg, alg.complement(neg), pos, f(pos)};
}

std::vector<Elem> interval_members(const MeasureAlgebra& alg, Elem lower, Elem upper) {
  std::vector<Elem> out;
  for (Elem x = 0; x < alg.size(); ++x) {
    if (alg.leq(lower, x) && alg.leq(x, upper)) out.push_back(x);
  }
  return out;
}

std::set<Elem> dcl(const MeasureAlgebra& alg, const std::set<Elem>& s) {
  std::vector<Elem> blocks{alg.one()};
  for (Elem g : s) {
    if (g >= alg.size()) throw Error("generator is not an element");
    std::vector<Elem> next;
    for (Elem b : blocks) {
      if (Elem in = alg.meet(b, g)) next.push_back(in);
      if (Elem out = alg.meet(b, alg.complement(g))) next.push_back(out);
    }
    blocks = std::move(next);
  }
  std::set<Elem> closure;
  const std::size_t k = blocks.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Elem e = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) e |= blocks[i];
    }
    closure.insert(e);
  }
  return closure;
}

DefinableCheck pra_definable_check(const MeasureAlgebra& alg, const std::set<Elem>& d) {
  if (d.empty()) throw Error("definability check needs a nonempty set");
  DefinableCheck out;
  out.lower = alg.one();
  out.upper = alg.zero();
  for (Elem x : d) {
    if (x >= alg.size()) throw Error("set member is not an element");
    out.lower = alg.meet(out.lower, x);
    out.upper = alg.join(out.upper, x);
  }
  for (Elem x : interval_members(alg, out.lower, out.upper)) {
    if (!d.count(x)) {
      out.missing = x;
      return out;
    }
  }
  out.definable = true;
  TupleSet members(d.begin(), d.end());
  auto table = distance_predicate(alg.to_structure(), 1, members);
  out.distance_formula_agrees = true;
  for (Elem x = 0; x < alg.size(); ++x) {
    if (table.values[x] != interval_distance(alg, x, out.lower, out.upper)) out.distance_formula_agrees = false;
  }
  return out;
}

}  // namespace affine::pra
