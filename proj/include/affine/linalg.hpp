#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "affine/rational.hpp"

namespace affine {

/// Result of solving A c = b exactly. When inconsistent, `certificate` holds
/// row weights y with y^T A = 0 and y^T b != 0.
struct LinearSolution {
  bool consistent = false;
  std::size_t rank = 0;
  std::vector<Rational> solution;  // free unknowns set to zero
  std::map<std::size_t, Rational> certificate;
};

LinearSolution solve_linear(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs,
                            std::size_t unknowns);

std::size_t rank_of(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

}  // namespace affine
