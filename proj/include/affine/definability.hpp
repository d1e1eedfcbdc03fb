#pragma once

// Definable predicates, sets and functions on finite structures. Definability
// of a table is decided as exact affine factoring through a formula family,
// so every positive or negative answer is relative to that family.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affine/model.hpp"
#include "affine/typespace.hpp"

namespace affine {

struct PredicateTable {
  std::size_t domain = 0;
  std::size_t arity = 0;
  std::vector<Rational> values;  // TupleSpace(domain, arity) order
  std::optional<AffineFunctional> witness;

  const Rational& at(const Tuple& t) const { return values[TupleSpace(domain, arity).index(t)]; }
};

/// A total map M^n -> M^m with a declared Lipschitz constant.
struct FunctionMap {
  std::size_t domain = 0;
  std::size_t in_arity = 1;
  std::size_t out_arity = 1;
  std::vector<std::size_t> values;  // output tuple index per input tuple index
  Rational lambda;
};

using TupleSet = std::set<std::size_t>;

PredicateTable formula_predicate(const FiniteStructure& m, const Formula& phi, const std::vector<std::string>& vars);

/// d(x, D) = min over D of the sum metric; for empty D the constant sup of the
/// tuple metric on M^n.
PredicateTable distance_predicate(const FiniteStructure& m, std::size_t arity, const TupleSet& d);

struct DistanceAxiomReport {
  bool nonnegative = true;                 // (i)
  std::optional<std::size_t> negative_at;
  bool lipschitz = true;                   // (ii) P(x) - P(y) <= d(x, y)
  std::optional<std::pair<std::size_t, std::size_t>> lipschitz_pair;
  bool approximately_satisfiable = true;   // (iii) per-point LP
  std::optional<std::size_t> unsatisfiable_at;
  std::vector<Rational> farkas;            // for the failing point

  bool ok() const { return nonnegative && lipschitz && approximately_satisfiable; }
};

DistanceAxiomReport check_distance_axioms(const FiniteStructure& m, const PredicateTable& p);

/// Z(P), after checking the three distance axioms and that d(., Z(P)) == P.
TupleSet zeroset_recover(const FiniteStructure& m, const PredicateTable& p);

struct DominationResult {
  std::optional<Rational> lambda;  // minimal lambda with Q <= lambda P + eps
  std::optional<std::size_t> counterexample;  // P(a) = 0 and Q(a) > eps
};

DominationResult lambda_domination(const PredicateTable& p, const PredicateTable& q, const Rational& eps);

struct DefinabilityResult {
  bool definable = false;
  std::optional<AffineFunctional> witness;
  std::optional<FactoringFailure> failure;
};

/// Table features of a family: features[t][j] = F_j(tuple t).
std::vector<std::vector<Rational>> family_features(const FiniteStructure& m, const FormulaFamily& family);

DefinabilityResult is_definable_predicate(const FiniteStructure& m, const PredicateTable& p,
                                          const FormulaFamily& family);
DefinabilityResult is_definable_predicate(const PredicateTable& p, const std::vector<std::vector<Rational>>& features);

DefinabilityResult is_definable_set(const FiniteStructure& m, const TupleSet& d, const FormulaFamily& family);

struct ProjectionResult {
  PredicateTable table;        // Q(x) = min_{y in D} P(x, y), arity = outer
  std::vector<Rational> via_distance;  // min_z [P(x, z) + lambda d(z, D)]
  bool identity_holds = false;
};

/// P lives on M^(outer + |D tuples|) with the D-coordinates last.
ProjectionResult inf_over_definable(const FiniteStructure& m, const TupleSet& d, std::size_t inner_arity,
                                    const PredicateTable& p, const Rational& lambda);

/// d(x, f(D)) computed as min_{t in D} d(x, f(t)).
PredicateTable image_distance(const FiniteStructure& m, const FunctionMap& f, const TupleSet& d);
TupleSet image(const FunctionMap& f, const TupleSet& d);

void validate_function(const FiniteStructure& m, const FunctionMap& f);
TupleSet graph(const FunctionMap& f);

struct GraphIdentityReport {
  bool graph_distance_holds = false;     // d((x,y), G_f) = min_u [d(x,u) + d(f(u),y)]
  // d(f(x),y) = min_v [d(xv, G_f) + d(v,y)]; true exactly when f is 1-Lipschitz
  bool function_distance_holds = false;
  bool ok() const { return graph_distance_holds && function_distance_holds; }
};

GraphIdentityReport check_graph_identities(const FiniteStructure& m, const FunctionMap& f);

/// (x, y) -> P(f(x), y); P has arity f.out_arity + trailing.
PredicateTable compose(const PredicateTable& p, const FunctionMap& f, std::size_t trailing);
/// features(f(x), y) for the same layout as compose.
std::vector<std::vector<Rational>> compose_features(const std::vector<std::vector<Rational>>& features,
                                                    const FunctionMap& f, std::size_t trailing);

/// Witness is uniform on the shortest cycle of f (smallest element breaks ties).
TypeVector invariant_type(const FiniteStructure& m, const FunctionMap& f, const FamilyPtr& family);
bool is_pushforward_invariant(const FunctionMap& f, const Witness& w);

struct InvarianceReport {
  bool invariant = true;
  std::optional<Permutation> automorphism;
  std::optional<std::size_t> tuple;
};

InvarianceReport automorphism_invariant(const FiniteStructure& m, const PredicateTable& p);

}  // namespace affine
