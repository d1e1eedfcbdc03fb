#include "affine/lp.hpp"

#include <optional>

namespace affine::lp {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, std::vector<Rational>(cols + 1, Rational(0))) {}

  std::vector<Rational>& row(std::size_t i) { return rows_[i]; }
  Rational& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
  Rational& rhs(std::size_t i) { return rows_[i][cols_]; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void erase_row(std::size_t i) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = rows_[r][c];
    auto& pr = rows_[r];
    for (auto& v : pr) {
      if (v != 0) v /= p;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Rational factor = rows_[i][c];
      auto& ri = rows_[i];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (pr[j] != 0) ri[j] -= factor * pr[j];
      }
    }
    basis_[r] = c;
  }

  /// Maximizes cost over the current basis. Columns with allowed[j] == false
  /// never enter. Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    std::vector<bool> basic(cols_, false);
    while (true) {
      std::fill(basic.begin(), basic.end(), false);
      for (auto b : basis_) basic[b] = true;
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_ && !entering; ++j) {
        if (basic[j] || !allowed[j]) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          if (rows_[i][j] != 0 && cost[basis_[i]] != 0) reduced -= cost[basis_[i]] * rows_[i][j];
        }
        if (reduced > 0) entering = j;
      }
      if (!entering) return true;
      const std::size_t j = *entering;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][j] <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][j];
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, j);
    }
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result solve(const Program& program) {
  const std::size_t n = program.num_vars;
  // column layout: [x+ per var][x- per free var][slack/surplus][artificial]
  std::vector<std::size_t> neg_col(n, 0);
  std::size_t cols = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (program.free[j]) neg_col[j] = cols++;
  }
  const std::size_t m = program.constraints.size();
  std::vector<Relation> rels(m);
  std::vector<bool> flip(m, false);
  std::size_t slack_count = 0;
  std::size_t art_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = program.constraints[i];
    if (c.coeffs.size() != n) throw Error("lp: constraint width mismatch");
    Relation rel = c.relation;
    if (c.rhs < 0) {
      flip[i] = true;
      if (rel == Relation::LessEqual) rel = Relation::GreaterEqual;
      else if (rel == Relation::GreaterEqual) rel = Relation::LessEqual;
    }
    rels[i] = rel;
    if (rel != Relation::Equal) ++slack_count;
    if (rel != Relation::LessEqual) ++art_count;
  }
  const std::size_t slack_base = cols;
  const std::size_t art_base = slack_base + slack_count;
  const std::size_t total = art_base + art_count;

  Tableau t(m, total);
  t.basis().assign(m, 0);
  std::size_t next_slack = slack_base;
  std::size_t next_art = art_base;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = program.constraints[i];
    Rational sign = flip[i] ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coeffs[j] == 0) continue;
      t.at(i, j) = sign * c.coeffs[j];
      if (program.free[j]) t.at(i, neg_col[j]) = -t.at(i, j);
    }
    t.rhs(i) = sign * c.rhs;
    switch (rels[i]) {
      case Relation::LessEqual:
        t.at(i, next_slack) = 1;
        t.basis()[i] = next_slack++;
        break;
      case Relation::GreaterEqual:
        t.at(i, next_slack++) = -1;
        t.at(i, next_art) = 1;
        t.basis()[i] = next_art++;
        break;
      case Relation::Equal:
        t.at(i, next_art) = 1;
        t.basis()[i] = next_art++;
        break;
    }
  }

  std::vector<bool> allowed(total, true);
  if (art_count > 0) {
    std::vector<Rational> phase1(total, Rational(0));
    for (std::size_t j = art_base; j < total; ++j) phase1[j] = -1;
    t.optimize(phase1, allowed);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basis()[i] >= art_base) infeasibility += t.rhs(i);
    }
    if (infeasibility > 0) return {Status::Infeasible, {}, Rational(0)};
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis()[i] < art_base) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_base; ++j) {
        if (t.at(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        t.erase_row(i);
      }
    }
    for (std::size_t j = art_base; j < total; ++j) allowed[j] = false;
  }

  std::vector<Rational> cost(total, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = program.objective[j];
    if (program.free[j]) cost[neg_col[j]] = -program.objective[j];
  }
  bool bounded = t.optimize(cost, allowed);

  std::vector<Rational> column_value(total, Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i) column_value[t.basis()[i]] = t.rhs(i);
  Result result;
  result.status = bounded ? Status::Optimal : Status::Unbounded;
  result.x.assign(n, Rational(0));
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] = column_value[j];
    if (program.free[j]) result.x[j] -= column_value[neg_col[j]];
    result.value += program.objective[j] * result.x[j];
  }
  return result;
}

bool satisfies(const Program& program, const std::vector<Rational>& x) {
  if (x.size() != program.num_vars) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!program.free[j] && x[j] < 0) return false;
  }
  for (const auto& c : program.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coeffs[j] * x[j];
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace affine::lp
