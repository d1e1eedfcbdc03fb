#pragma once

// Random instance generators, brute-force oracles and the acceptance
// criteria. Oracles deliberately avoid the library's LP and linear algebra.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "affine/definability.hpp"
#include "affine/mean.hpp"
#include "affine/pra.hpp"
#include "affine/typespace.hpp"

namespace affine::suite {

using Rng = std::mt19937_64;

// ---- generators

/// Uniform on {lo/den, (lo+1)/den, ..., hi/den}.
Rational grid_rational(Rng& rng, long lo, long hi, long den);
std::size_t pick(Rng& rng, std::size_t n);

/// Constant c; function f/1; relations R/1, S/2. All lambdas 2.
Signature test_signature();

/// Distances drawn from [1/2, 1], so every table is 2-Lipschitz.
FiniteStructure random_structure(Rng& rng, const Signature& sig, std::size_t size);

/// Discrete metric; unary relations P1..Pk are the indicators of a random
/// partition into k nonempty blocks.
FiniteStructure random_partition_structure(Rng& rng, std::size_t size, std::size_t blocks);

struct FormulaOptions {
  std::size_t depth = 4;
  std::size_t max_nesting = 2;  // nested quantifiers
};

Formula random_formula(Rng& rng, const Signature& sig, const std::vector<std::string>& free_vars,
                       const FormulaOptions& opts = {});

/// Positive weights summing to 1.
std::vector<Rational> random_weights(Rng& rng, std::size_t k);
/// Weights summing to 1, some of them possibly zero.
Ultracharge random_ultracharge(Rng& rng, std::size_t k);

// ---- oracles

/// Carathéodory search: is v a convex combination of some affinely
/// independent subset of `others`?
bool oracle_in_hull(const std::vector<std::vector<Rational>>& others, const std::vector<Rational>& v);

/// min over y in [a, b] of the weight of x xor y.
Rational oracle_interval_min(const std::vector<Rational>& weights, std::uint32_t x, std::uint32_t a,
                             std::uint32_t b);

/// All subsets maximizing the atomwise sum.
std::set<std::uint32_t> oracle_argmax(const std::vector<Rational>& atom_values);

/// d(x, D) by direct enumeration of the sum metric.
std::vector<Rational> oracle_distance_table(const FiniteStructure& m, std::size_t arity,
                                            const std::vector<Tuple>& d);

/// Evaluates phi directly on the unquotiented product: d and relations are
/// mu-averages, quantifiers range over every raw tuple.
Rational oracle_raw_eval(const std::vector<FiniteStructure>& factors, const std::vector<Rational>& mu,
                         const Formula& phi, const std::map<std::string, RawTuple>& env);

// ---- acceptance

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::size_t instances = 0;
  std::string detail;
  double seconds = 0;
};

using Criterion = std::function<CriterionResult(std::uint64_t seed)>;

const std::vector<std::pair<int, Criterion>>& criteria();
CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_all(std::uint64_t seed);
std::string format(const CriterionResult& r);

}  // namespace affine::suite
