#include "affine/mean.hpp"

namespace affine {
namespace {

// largest symbol table materialized for a quotient
constexpr std::size_t kTableCap = std::size_t{1} << 22;

}  // namespace

Ultracharge::Ultracharge(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error("ultracharge over an empty index set");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw Error("ultracharge weight " + to_short(w) + " is negative");
    total += w;
  }
  if (total != 1) throw Error("ultracharge weights sum to " + to_short(total) + ", not 1");
}

Ultracharge Ultracharge::point_mass(std::size_t size, std::size_t index) {
  std::vector<Rational> w(size, Rational(0));
  w.at(index) = 1;
  return Ultracharge(std::move(w));
}

Ultracharge Ultracharge::uniform(std::size_t size) {
  return Ultracharge(std::vector<Rational>(size, Rational(1, static_cast<unsigned long>(size))));
}

std::vector<std::size_t> Ultracharge::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0) out.push_back(i);
  }
  return out;
}

MeanStructure::MeanStructure(FiniteStructure quotient, std::vector<std::size_t> support,
                             std::vector<std::size_t> factor_sizes)
    : quotient_(std::move(quotient)), support_(std::move(support)), factor_sizes_(std::move(factor_sizes)) {}

Element MeanStructure::class_of(const RawTuple& raw) const {
  if (raw.size() != factor_sizes_.size()) throw Error("raw tuple has wrong length");
  Element cls = 0;
  for (std::size_t i : support_) {
    if (raw[i] >= factor_sizes_[i]) throw Error("raw tuple coordinate out of range");
    cls = cls * factor_sizes_[i] + raw[i];
  }
  return cls;
}

RawTuple MeanStructure::representative(Element cls) const {
  RawTuple raw(factor_sizes_.size(), 0);
  for (std::size_t k = support_.size(); k-- > 0;) {
    std::size_t i = support_[k];
    raw[i] = cls % factor_sizes_[i];
    cls /= factor_sizes_[i];
  }
  return raw;
}

Rational raw_distance(const std::vector<FiniteStructure>& factors, const Ultracharge& mu, const RawTuple& a,
                      const RawTuple& b) {
  Rational total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (mu.weights()[i] != 0) total += mu.weights()[i] * factors[i].distance(a[i], b[i]);
  }
  return total;
}

MeanStructure build_ultramean(const std::vector<FiniteStructure>& factors, const Ultracharge& mu, std::size_t cap) {
  if (factors.empty()) throw Error("ultramean of no structures");
  if (factors.size() != mu.size()) throw Error("ultracharge size does not match the number of structures");
  const Signature& sig = factors.front().signature();
  for (const auto& f : factors) {
    if (!(f.signature() == sig)) throw Error("signature mismatch between factor structures");
  }
  const auto support = mu.support();
  std::vector<std::size_t> sizes;
  for (const auto& f : factors) sizes.push_back(f.size());

  std::size_t q = 1;
  for (std::size_t i : support) {
    if (q > cap / sizes[i]) throw Error("ultramean size cap of " + std::to_string(cap) + " exceeded");
    q *= sizes[i];
  }

  // coords[c][k] = coordinate of class c at support index k
  std::vector<std::vector<Element>> coords(q, std::vector<Element>(support.size()));
  for (Element c = 0; c < q; ++c) {
    Element rest = c;
    for (std::size_t k = support.size(); k-- > 0;) {
      coords[c][k] = rest % sizes[support[k]];
      rest /= sizes[support[k]];
    }
  }
  auto encode = [&](const std::vector<Element>& per_support) {
    Element c = 0;
    for (std::size_t k = 0; k < support.size(); ++k) c = c * sizes[support[k]] + per_support[k];
    return c;
  };

  std::vector<std::string> labels(q);
  for (Element c = 0; c < q; ++c) {
    std::string label = "[";
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (k) label += ",";
      label += factors[support[k]].labels()[coords[c][k]];
    }
    labels[c] = label + "]";
  }

  std::vector<std::vector<Rational>> metric(q, std::vector<Rational>(q, Rational(0)));
  for (Element a = 0; a < q; ++a) {
    for (Element b = a + 1; b < q; ++b) {
      Rational d = 0;
      for (std::size_t k = 0; k < support.size(); ++k) {
        std::size_t i = support[k];
        d += mu.weights()[i] * factors[i].distance(coords[a][k], coords[b][k]);
      }
      metric[a][b] = d;
      metric[b][a] = d;
    }
  }

  std::vector<Element> constants;
  for (std::size_t c = 0; c < sig.constants().size(); ++c) {
    std::vector<Element> per(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) per[k] = factors[support[k]].constants()[c];
    constants.push_back(encode(per));
  }

  std::vector<FunctionTable> functions;
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const std::size_t arity = sig.functions()[f].arity;
    checked_power(q, arity, kTableCap);
    TupleSpace space(q, arity);
    FunctionTable table{arity, std::vector<Element>(space.size())};
    for (std::size_t t = 0; t < space.size(); ++t) {
      Tuple classes = space.tuple(t);
      std::vector<Element> per(support.size());
      for (std::size_t k = 0; k < support.size(); ++k) {
        const auto& factor = factors[support[k]];
        std::size_t idx = 0;
        for (Element cls : classes) idx = idx * factor.size() + coords[cls][k];
        per[k] = factor.functions()[f].values[idx];
      }
      table.values[t] = encode(per);
    }
    functions.push_back(std::move(table));
  }

  std::vector<RelationTable> relations;
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    const std::size_t arity = sig.relations()[r].arity;
    checked_power(q, arity, kTableCap);
    TupleSpace space(q, arity);
    RelationTable table{arity, std::vector<Rational>(space.size(), Rational(0))};
    for (std::size_t t = 0; t < space.size(); ++t) {
      Tuple classes = space.tuple(t);
      Rational value = 0;
      for (std::size_t k = 0; k < support.size(); ++k) {
        const auto& factor = factors[support[k]];
        std::size_t idx = 0;
        for (Element cls : classes) idx = idx * factor.size() + coords[cls][k];
        value += mu.weights()[support[k]] * factor.relations()[r].values[idx];
      }
      table.values[t] = value;
    }
    relations.push_back(std::move(table));
  }

  FiniteStructure quotient(sig, std::move(labels), std::move(metric), std::move(constants), std::move(functions),
                           std::move(relations));
  return MeanStructure(std::move(quotient), support, std::move(sizes));
}

UltrameanReport check_ultramean_identity(const std::vector<FiniteStructure>& factors, const Ultracharge& mu,
                                         const MeanStructure& mean, const Formula& phi,
                                         const std::vector<std::string>& vars, const std::vector<RawTuple>& raw) {
  if (vars.size() != raw.size()) throw Error("one raw tuple per variable is required");
  for (const auto& v : free_variables(phi)) {
    bool found = false;
    for (const auto& name : vars) found = found || name == v;
    if (!found) throw Error("free variable '" + v + "' has no raw tuple");
  }
  for (const auto& r : raw) {
    if (r.size() != factors.size()) throw Error("raw tuple length does not match the index set");
  }

  Assignment quotient_asg;
  for (std::size_t k = 0; k < vars.size(); ++k) quotient_asg[vars[k]] = mean.class_of(raw[k]);

  UltrameanReport report;
  report.quotient_value = eval_formula(mean.structure(), phi, quotient_asg);
  report.integral_value = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (mu.weights()[i] == 0) continue;
    Assignment asg;
    for (std::size_t k = 0; k < vars.size(); ++k) asg[vars[k]] = raw[k][i];
    report.integral_value += mu.weights()[i] * eval_formula(factors[i], phi, asg);
  }
  report.equal = report.quotient_value == report.integral_value;
  return report;
}

UltrameanReport check_ultramean_identity(const std::vector<FiniteStructure>& factors, const Ultracharge& mu,
                                         const Formula& phi, const std::vector<std::string>& vars,
                                         const std::vector<RawTuple>& raw, std::size_t cap) {
  MeanStructure mean = build_ultramean(factors, mu, cap);
  return check_ultramean_identity(factors, mu, mean, phi, vars, raw);
}

MeanStructure build_powermean(const FiniteStructure& base, const Ultracharge& mu, std::size_t cap) {
  return build_ultramean(std::vector<FiniteStructure>(mu.size(), base), mu, cap);
}

Element diagonal(const MeanStructure& power, std::size_t index_count, Element a) {
  return power.class_of(RawTuple(index_count, a));
}

}  // namespace affine
