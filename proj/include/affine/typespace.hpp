#pragma once

// Types as evaluation vectors over a finite formula family, and the geometry
// of the convex hull of realized types. All answers are relative to the
// chosen family; exact LP (affine::lp) backs every certificate.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "affine/model.hpp"

namespace affine {

inline constexpr std::size_t kDefaultTupleCap = 4096;

struct FormulaFamily {
  std::vector<std::string> vars;
  std::vector<Formula> formulas;
};

using FamilyPtr = std::shared_ptr<const FormulaFamily>;

/// Checks that every formula's free variables are among `vars`.
FamilyPtr make_family(std::vector<std::string> vars, std::vector<Formula> formulas);
/// Variables default to the free variables in order of first occurrence.
FamilyPtr make_family(std::vector<Formula> formulas);

/// A probability distribution over M^n, keyed by TupleSpace index.
struct Witness {
  std::size_t domain = 0;
  std::size_t arity = 0;
  std::map<std::size_t, Rational> weights;
};

struct TypeVector {
  FamilyPtr family;
  std::vector<Rational> values;
  std::optional<Witness> witness;
};

/// c + coeffs . p
struct AffineFunctional {
  Rational constant;
  std::vector<Rational> coeffs;

  Rational operator()(const std::vector<Rational>& point) const;
};

TypeVector realized_type(const FiniteStructure& m, const Tuple& a, const FamilyPtr& family);
TypeVector mixture_type(const std::vector<TypeVector>& types, const std::vector<Rational>& gamma);

/// Deduplicated realized types of M^n, plus the tuple -> vertex map.
struct TypeHull {
  FamilyPtr family;
  std::size_t domain = 0;
  std::size_t arity = 0;
  bool first_order = false;
  std::vector<std::vector<Rational>> vertices;
  std::vector<std::size_t> vertex_of_tuple;
  std::vector<std::size_t> representative;  // first tuple realizing each vertex

  std::size_t dimension() const { return vertices.empty() ? 0 : vertices.front().size(); }
  /// Hull of abstract points (no structure behind it); duplicates are merged.
  static TypeHull from_points(std::vector<std::vector<Rational>> points);
};

TypeHull type_hull(const FiniteStructure& m, const FamilyPtr& family, std::size_t cap = kDefaultTupleCap);

/// Extreme vertices carry a separating functional f with f(v) = 1 and f <= 0
/// on every other vertex; the rest carry convex weights over other vertices.
struct VertexClass {
  bool extreme = false;
  std::map<std::size_t, Rational> combination;
  AffineFunctional separator;
};

std::vector<VertexClass> extreme_points(const TypeHull& hull);
std::vector<std::size_t> extreme_indices(const TypeHull& hull);

/// Why a table does not factor affinely through the family: two tuples with
/// the same type but different values, or row weights y with
/// sum_a y_a (1, F(a)) = 0 but sum_a y_a P(a) != 0.
struct FactoringFailure {
  enum class Kind { CollidingTypes, Inconsistent };
  Kind kind = Kind::CollidingTypes;
  std::size_t first = 0;
  std::size_t second = 0;
  std::map<std::size_t, Rational> combination;
};

struct Factoring {
  std::optional<AffineFunctional> functional;
  std::optional<FactoringFailure> failure;

  bool ok() const { return functional.has_value(); }
};

/// Solves values[a] = c + coeffs . features[a] over all a and re-verifies the
/// solution entrywise.
Factoring affine_factor(const std::vector<Rational>& values, const std::vector<std::vector<Rational>>& features);

class NotFactorableError : public Error {
 public:
  NotFactorableError(const std::string& what, FactoringFailure failure) : Error(what), failure_(std::move(failure)) {}
  const FactoringFailure& failure() const { return failure_; }

 private:
  FactoringFailure failure_;
};

struct ExposedFace {
  bool entire = false;
  std::vector<std::size_t> vertices;
  Rational extremum;
  AffineFunctional functional;
};

/// Level set of the induced functional at its min (or max) over the hull.
/// `values` is a predicate table over the hull's tuple space.
ExposedFace exposed_face(const TypeHull& hull, const std::vector<Rational>& values, bool maximize = false);

class NonAffineError : public Error {
 public:
  using Error::Error;
};

/// Reads phi as an affine combination of family members and the constant 1.
AffineFunctional linearize(const Formula& phi, const FormulaFamily& family);

struct FaceViolation {
  std::size_t vertex = 0;                // hull vertex outside [Gamma]
  std::vector<Rational> point;           // point of [Gamma]
  std::vector<Rational> other;           // point = weight*vertex + (1-weight)*other
  Rational weight;
};

struct FaceReport {
  bool is_face = true;
  std::vector<std::size_t> solution_vertices;  // vertices satisfying Gamma
  std::vector<std::size_t> support;            // vertices used by some point of [Gamma]
  std::optional<FaceViolation> violation;
};

FaceReport is_face(const TypeHull& hull, const std::vector<Condition>& gamma);
/// Same, for constraints g(p) >= 0 given directly as functionals.
FaceReport is_face(const TypeHull& hull, const std::vector<AffineFunctional>& constraints);

struct SatisfiabilityResult {
  bool satisfiable = false;
  Witness distribution;         // satisfiable branch
  std::vector<Rational> farkas;  // unsatisfiable branch
  Rational combined_max;        // max_a sum_i r_i (rhs_i - lhs_i)(a) < 0
};

/// Either a distribution w on M^n with sum_a w_a (rhs_i - lhs_i)(a) >= 0 for
/// every condition, or nonnegative r whose combination fails at every tuple.
SatisfiabilityResult affine_satisfiable(const FiniteStructure& m, const std::vector<std::string>& vars,
                                        const std::vector<Condition>& sigma, std::size_t cap = kDefaultTupleCap);

/// Table form: slack[i][a] = (rhs_i - lhs_i)(a) over a tuple space of `domain`^`arity`.
SatisfiabilityResult affine_satisfiable_tables(std::size_t domain, std::size_t arity,
                                               const std::vector<std::vector<Rational>>& slack);

bool verify_distribution(const std::vector<std::vector<Rational>>& slack, const Witness& w);
bool verify_farkas(const std::vector<std::vector<Rational>>& slack, const std::vector<Rational>& r);

/// Weights over hull vertex indices.
struct BoundaryMeasure {
  std::map<std::size_t, Rational> weights;
};

TypeVector barycenter(const TypeHull& hull, const BoundaryMeasure& mu);
BoundaryMeasure keisler_decompose(const TypeHull& hull, const std::vector<Rational>& point);

/// Minimum transport cost between the witness distributions under the sum metric.
Rational type_distance(const FiniteStructure& m, const TypeVector& p, const TypeVector& q);

}  // namespace affine
