#pragma once

// Exact rational linear programming: dense two-phase tableau simplex with
// Bland's anti-cycling rule. Sizes here are desk-scale (hundreds of columns).

#include <cstddef>
#include <vector>

#include "affine/rational.hpp"

namespace affine::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

/// maximize objective . x subject to constraints; x_j >= 0 unless free[j].
struct Program {
  std::size_t num_vars = 0;
  std::vector<bool> free;
  std::vector<Constraint> constraints;
  std::vector<Rational> objective;

  explicit Program(std::size_t n) : num_vars(n), free(n, false), objective(n, Rational(0)) {}

  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value;

  bool feasible() const { return status != Status::Infeasible; }
};

Result solve(const Program& program);

/// Checks every constraint and sign restriction exactly.
bool satisfies(const Program& program, const std::vector<Rational>& x);

}  // namespace affine::lp
