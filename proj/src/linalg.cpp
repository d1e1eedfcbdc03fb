#include "affine/linalg.hpp"

#include <optional>

namespace affine {
namespace {

struct PivotRow {
  std::size_t column;
  std::vector<Rational> coeffs;
  Rational rhs;
  std::map<std::size_t, Rational> combination;
};

void axpy(std::map<std::size_t, Rational>& into, const Rational& factor, const std::map<std::size_t, Rational>& from) {
  for (const auto& [k, v] : from) {
    Rational& slot = into[k];
    slot -= factor * v;
    if (slot == 0) into.erase(k);
  }
}

}  // namespace

// Incremental Gauss-Jordan: pivots are kept fully reduced, and each carries the
// combination of input rows that produced it.
LinearSolution solve_linear(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs,
                            std::size_t unknowns) {
  if (rows.size() != rhs.size()) throw Error("solve_linear: row/rhs count mismatch");
  std::vector<PivotRow> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != unknowns) throw Error("solve_linear: row width mismatch");
    PivotRow cur{0, rows[r], rhs[r], {{r, Rational(1)}}};
    for (const auto& p : pivots) {
      if (cur.coeffs[p.column] == 0) continue;
      Rational f = cur.coeffs[p.column];
      for (std::size_t j = 0; j < unknowns; ++j) {
        if (p.coeffs[j] != 0) cur.coeffs[j] -= f * p.coeffs[j];
      }
      cur.rhs -= f * p.rhs;
      axpy(cur.combination, f, p.combination);
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < unknowns; ++j) {
      if (cur.coeffs[j] != 0) {
        col = j;
        break;
      }
    }
    if (!col) {
      if (cur.rhs != 0) {
        LinearSolution out;
        out.consistent = false;
        out.rank = pivots.size();
        out.certificate = std::move(cur.combination);
        return out;
      }
      continue;
    }
    Rational lead = cur.coeffs[*col];
    for (auto& v : cur.coeffs) v /= lead;
    cur.rhs /= lead;
    for (auto& [k, v] : cur.combination) v /= lead;
    cur.column = *col;
    for (auto& p : pivots) {
      if (p.coeffs[*col] == 0) continue;
      Rational f = p.coeffs[*col];
      for (std::size_t j = 0; j < unknowns; ++j) {
        if (cur.coeffs[j] != 0) p.coeffs[j] -= f * cur.coeffs[j];
      }
      p.rhs -= f * cur.rhs;
      axpy(p.combination, f, cur.combination);
    }
    pivots.push_back(std::move(cur));
  }
  LinearSolution out;
  out.consistent = true;
  out.rank = pivots.size();
  out.solution.assign(unknowns, Rational(0));
  for (const auto& p : pivots) out.solution[p.column] = p.rhs;
  return out;
}

std::size_t rank_of(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  return solve_linear(rows, std::vector<Rational>(rows.size(), Rational(0)), cols).rank;
}

}  // namespace affine
