#pragma once

// Ultracharges on finite index sets and the ultramean (powermean) construction.

#include <cstddef>
#include <vector>

#include "affine/model.hpp"

namespace affine {

inline constexpr std::size_t kDefaultMeanCap = 4096;

/// Rational probability weights over a finite index set.
class Ultracharge {
 public:
  explicit Ultracharge(std::vector<Rational> weights);

  static Ultracharge point_mass(std::size_t size, std::size_t index);
  static Ultracharge uniform(std::size_t size);

  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  /// Indices with positive weight.
  std::vector<std::size_t> support() const;

 private:
  std::vector<Rational> weights_;
};

/// A raw element of the product: one coordinate per index.
using RawTuple = std::vector<Element>;

/// The quotient structure together with the class map. Zero-weight
/// coordinates are dropped: for valid factors d_i(a,b) = 0 iff a = b, so the
/// zero-distance classes are exactly the fibres of the projection onto the
/// support of the ultracharge.
class MeanStructure {
 public:
  MeanStructure(FiniteStructure quotient, std::vector<std::size_t> support, std::vector<std::size_t> factor_sizes);

  const FiniteStructure& structure() const { return quotient_; }
  const std::vector<std::size_t>& support() const { return support_; }
  /// [a] for a raw tuple indexed over all of I.
  Element class_of(const RawTuple& raw) const;
  /// Canonical representative of a class (zero off the support).
  RawTuple representative(Element cls) const;

 private:
  FiniteStructure quotient_;
  std::vector<std::size_t> support_;
  std::vector<std::size_t> factor_sizes_;
};

MeanStructure build_ultramean(const std::vector<FiniteStructure>& factors, const Ultracharge& mu,
                              std::size_t cap = kDefaultMeanCap);

/// Sum_i mu_i d_i(a_i, b_i), computed directly on raw tuples.
Rational raw_distance(const std::vector<FiniteStructure>& factors, const Ultracharge& mu, const RawTuple& a,
                      const RawTuple& b);

struct UltrameanReport {
  Rational quotient_value;
  Rational integral_value;
  bool equal = false;
};

/// Evaluates phi at the classes of `raw[k]` (k-th entry bound to vars[k]) in
/// the quotient and as the mu-average of the coordinatewise values.
UltrameanReport check_ultramean_identity(const std::vector<FiniteStructure>& factors, const Ultracharge& mu,
                                         const Formula& phi, const std::vector<std::string>& vars,
                                         const std::vector<RawTuple>& raw, std::size_t cap = kDefaultMeanCap);

/// Same check against an already built mean (avoids rebuilding per formula).
UltrameanReport check_ultramean_identity(const std::vector<FiniteStructure>& factors, const Ultracharge& mu,
                                         const MeanStructure& mean, const Formula& phi,
                                         const std::vector<std::string>& vars, const std::vector<RawTuple>& raw);

/// Powermean of a single structure; diag(a) = [a, a, ..., a].
MeanStructure build_powermean(const FiniteStructure& base, const Ultracharge& mu, std::size_t cap = kDefaultMeanCap);
Element diagonal(const MeanStructure& power, std::size_t index_count, Element a);

}  // namespace affine
