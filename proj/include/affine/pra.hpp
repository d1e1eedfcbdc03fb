#pragma once

// Finite probability algebras: atom subsets with a strictly positive measure,
// d(x, y) = mu(x xor y). Elements are atom bitmasks (bit i = atom i+1).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affine/model.hpp"

namespace affine::pra {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultAtomCap = 10;

class MeasureAlgebra {
 public:
  explicit MeasureAlgebra(std::vector<Rational> weights, std::size_t atom_cap = kDefaultAtomCap);

  std::size_t atoms() const { return weights_.size(); }
  std::size_t size() const { return std::size_t{1} << weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }

  Elem zero() const { return 0; }
  Elem one() const { return static_cast<Elem>(size() - 1); }
  Elem meet(Elem x, Elem y) const { return x & y; }
  Elem join(Elem x, Elem y) const { return x | y; }
  Elem complement(Elem x) const { return one() & ~x; }
  bool leq(Elem x, Elem y) const { return (x & ~y) == 0; }

  const Rational& measure(Elem x) const { return mu_[x]; }
  const Rational& distance(Elem x, Elem y) const { return mu_[x ^ y]; }

  /// "101" means atoms 1 and 3.
  std::string label(Elem x) const;
  Elem parse(const std::string& bits) const;

  /// Export over the signature {zero, one; meet, join, comp; mu}, extra
  /// `parameters` named as additional constants.
  FiniteStructure to_structure(const std::vector<std::pair<std::string, Elem>>& parameters = {}) const;

 private:
  std::vector<Rational> weights_;
  std::vector<Rational> mu_;
};

Signature pra_signature(const std::vector<std::string>& parameter_names = {});

/// Exhaustive check of the axiom schemes (Boolean algebra, mu(0) = 0 and
/// mu(1) = 1, monotonicity, modularity, d = mu of the symmetric difference)
/// against the tables of an exported structure. Returns the violated scheme,
/// or an empty string. Three-variable Boolean laws are checked when the
/// domain has at most 256 elements.
std::string check_axioms(const FiniteStructure& s);
std::string check_axioms(const MeasureAlgebra& a);

/// mu(x meet b') + mu(a meet x'); requires a <= b.
Rational interval_distance(const MeasureAlgebra& alg, Elem x, Elem a, Elem b);
/// a join (b meet x): the closest point of [a, b] to x.
Elem interval_projection(const MeasureAlgebra& alg, Elem x, Elem a, Elem b);

/// f(x) = sum of atom values over the atoms of x.
class AdditiveFunction {
 public:
  AdditiveFunction(const MeasureAlgebra& alg, std::vector<Rational> atom_values);
  Rational operator()(Elem x) const;
  const std::vector<Rational>& atom_values() const { return values_; }

 private:
  std::vector<Rational> values_;
};

struct HahnMaxSet {
  Elem positive;   // a: join of atoms with value >= 0
  Elem negative;   // b: join of atoms with value <= 0
  Elem lower;      // b'
  Elem upper;      // a
  Rational max_value;
};

HahnMaxSet hahn_max_set(const MeasureAlgebra& alg, const AdditiveFunction& f);

std::vector<Elem> interval_members(const MeasureAlgebra& alg, Elem lower, Elem upper);

/// Generated subalgebra: all unions of the atoms of the partition cut out by s.
std::set<Elem> dcl(const MeasureAlgebra& alg, const std::set<Elem>& s);

struct DefinableCheck {
  bool definable = false;
  Elem lower = 0;   // meet of D
  Elem upper = 0;   // join of D
  std::optional<Elem> missing;  // element of [lower, upper] not in D
  bool distance_formula_agrees = false;
};

DefinableCheck pra_definable_check(const MeasureAlgebra& alg, const std::set<Elem>& d);

}  // namespace affine::pra
