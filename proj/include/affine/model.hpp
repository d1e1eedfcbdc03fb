#pragma once

// Finite Lipschitz metric structures and exact formula evaluation.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affine/rational.hpp"
#include "affine/syntax.hpp"

namespace affine {

using Element = std::size_t;
using Tuple = std::vector<Element>;

/// Row-major indexing of M^n: tuple (a_1..a_n) <-> sum a_i * m^(n-i).
class TupleSpace {
 public:
  TupleSpace(std::size_t domain, std::size_t arity);

  std::size_t domain() const { return domain_; }
  std::size_t arity() const { return arity_; }
  std::size_t size() const { return size_; }

  std::size_t index(const Tuple& t) const;
  Tuple tuple(std::size_t index) const;

 private:
  std::size_t domain_;
  std::size_t arity_;
  std::size_t size_;
};

/// Checked m^n; throws Error when the result exceeds `cap`.
std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap);

struct FunctionTable {
  std::size_t arity = 1;
  std::vector<Element> values;  // indexed by TupleSpace(m, arity)
};

struct RelationTable {
  std::size_t arity = 1;
  std::vector<Rational> values;
};

/// A finite L-structure. Tables are positionally aligned with the signature's
/// constants/functions/relations. Use validate_structure before evaluating
/// structures that did not come from a trusted builder.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(Signature sig, std::vector<std::string> labels, std::vector<std::vector<Rational>> metric,
                  std::vector<Element> constants, std::vector<FunctionTable> functions,
                  std::vector<RelationTable> relations);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Rational& distance(Element a, Element b) const { return metric_[a][b]; }
  const std::vector<std::vector<Rational>>& metric() const { return metric_; }
  const std::vector<Element>& constants() const { return constants_; }
  const std::vector<FunctionTable>& functions() const { return functions_; }
  const std::vector<RelationTable>& relations() const { return relations_; }

  std::optional<Element> find_label(const std::string& label) const;
  Element constant(const std::string& name) const;
  const RelationTable& relation(const std::string& name) const;
  const FunctionTable& function(const std::string& name) const;

  /// Sum metric on M^n.
  Rational tuple_distance(const Tuple& a, const Tuple& b) const;
  Rational diameter() const;
  /// Metric and every relation table take values in {0,1}.
  bool is_first_order() const;

 private:
  Signature sig_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> metric_;
  std::vector<Element> constants_;
  std::vector<FunctionTable> functions_;
  std::vector<RelationTable> relations_;
};

struct ValidationReport {
  enum class Status { Pass, ShapeError, AxiomViolation };
  Status status = Status::Pass;
  std::string axiom;    // violated axiom or shape problem
  std::string symbol;   // offending symbol, if any
  std::vector<Tuple> witness;

  bool ok() const { return status == Status::Pass; }
};

ValidationReport validate_structure(const FiniteStructure& m);

/// Variable name -> element.
using Assignment = std::map<std::string, Element>;

class UnboundVariableError : public Error {
 public:
  using Error::Error;
};

Rational eval_formula(const FiniteStructure& m, const Formula& phi, const Assignment& asg);

/// Values of phi over all of M^n, with `vars` naming the tuple coordinates
/// (row-major TupleSpace order). Free variables of phi must be among `vars`.
std::vector<Rational> formula_table(const FiniteStructure& m, const Formula& phi,
                                    const std::vector<std::string>& vars);

bool holds(const FiniteStructure& m, const Condition& c, const Assignment& asg);

Element eval_term(const FiniteStructure& m, const TermPtr& t, const Assignment& asg);

using Permutation = std::vector<Element>;

/// All permutations of the domain preserving the metric, constants, function
/// tables and relation tables exactly. Identity first.
std::vector<Permutation> automorphisms(const FiniteStructure& m);

bool is_automorphism(const FiniteStructure& m, const Permutation& g);

}  // namespace affine
