#include "affine/suite.hpp"

#include <algorithm>

namespace affine::suite {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Plain Gaussian elimination on an augmented matrix. Returns the unique
// solution, or nothing when the system is inconsistent or underdetermined.
std::optional<std::vector<Rational>> solve_unique(Matrix a, std::size_t unknowns) {
  const std::size_t rows = a.size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;  // free column
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k <= unknowns; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() < unknowns) return std::nullopt;
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][unknowns] != 0) return std::nullopt;
  }
  std::vector<Rational> x(unknowns);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][unknowns] / a[i][pivot_col[i]];
  return x;
}

}  // namespace

bool oracle_in_hull(const std::vector<std::vector<Rational>>& others, const std::vector<Rational>& v) {
  const std::size_t n = others.size();
  const std::size_t dim = v.size();
  const std::size_t max_k = std::min(n, dim + 1);
  for (std::size_t k = 1; k <= max_k; ++k) {
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<long>(k), true);
    do {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) idx.push_back(i);
      }
      // rows: each coordinate, plus sum of weights = 1
      Matrix a(dim + 1, std::vector<Rational>(k + 1));
      for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t j = 0; j < k; ++j) a[c][j] = others[idx[j]][c];
        a[c][k] = v[c];
      }
      for (std::size_t j = 0; j < k; ++j) a[dim][j] = 1;
      a[dim][k] = 1;
      if (auto x = solve_unique(std::move(a), k)) {
        if (std::all_of(x->begin(), x->end(), [](const Rational& w) { return w >= 0; })) return true;
      }
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
  }
  return false;
}

Rational oracle_interval_min(const std::vector<Rational>& weights, std::uint32_t x, std::uint32_t a,
                             std::uint32_t b) {
  const std::uint32_t size = std::uint32_t{1} << weights.size();
  bool first = true;
  Rational best;
  for (std::uint32_t y = 0; y < size; ++y) {
    if ((a & ~y) != 0 || (y & ~b) != 0) continue;
    Rational d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (((x ^ y) >> i) & 1U) d += weights[i];
    }
    if (first || d < best) best = d;
    first = false;
  }
  return best;
}

std::set<std::uint32_t> oracle_argmax(const std::vector<Rational>& atom_values) {
  const std::uint32_t size = std::uint32_t{1} << atom_values.size();
  std::vector<Rational> f(size);
  Rational best;
  for (std::uint32_t x = 0; x < size; ++x) {
    for (std::size_t i = 0; i < atom_values.size(); ++i) {
      if ((x >> i) & 1U) f[x] += atom_values[i];
    }
    if (x == 0 || f[x] > best) best = f[x];
  }
  std::set<std::uint32_t> out;
  for (std::uint32_t x = 0; x < size; ++x) {
    if (f[x] == best) out.insert(x);
  }
  return out;
}

std::vector<Rational> oracle_distance_table(const FiniteStructure& m, std::size_t arity,
                                            const std::vector<Tuple>& d) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) total *= m.size();
  std::vector<Rational> out(total);
  Tuple x(arity, 0);
  for (std::size_t t = 0; t < total; ++t) {
    // decode t most-significant first
    std::size_t rest = t;
    for (std::size_t i = arity; i-- > 0;) {
      x[i] = rest % m.size();
      rest /= m.size();
    }
    bool first = true;
    for (const auto& y : d) {
      Rational s = 0;
      for (std::size_t i = 0; i < arity; ++i) s += m.metric()[x[i]][y[i]];
      if (first || s < out[t]) out[t] = s;
      first = false;
    }
  }
  return out;
}

namespace {

struct RawEval {
  const std::vector<FiniteStructure>& factors;
  const std::vector<Rational>& mu;

  RawTuple term(const TermPtr& t, const std::map<std::string, RawTuple>& env) const {
    RawTuple out(factors.size());
    switch (t->kind) {
      case Term::Kind::Var:
        return env.at(t->name);
      case Term::Kind::Const:
        for (std::size_t i = 0; i < factors.size(); ++i) out[i] = factors[i].constant(t->name);
        return out;
      case Term::Kind::Func: {
        std::vector<RawTuple> args;
        for (const auto& a : t->args) args.push_back(term(a, env));
        for (std::size_t i = 0; i < factors.size(); ++i) {
          std::size_t idx = 0;
          for (const auto& a : args) idx = idx * factors[i].size() + a[i];
          out[i] = factors[i].function(t->name).values[idx];
        }
        return out;
      }
    }
    return out;
  }

  Rational eval(const Formula& phi, std::map<std::string, RawTuple>& env) const {
    switch (phi->kind) {
      case FormulaKind::One:
        return 1;
      case FormulaKind::Atom: {
        std::vector<RawTuple> args;
        for (const auto& t : phi->terms) args.push_back(term(t, env));
        Rational total = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          if (phi->symbol == "d") {
            total += mu[i] * factors[i].metric()[args[0][i]][args[1][i]];
          } else {
            std::size_t idx = 0;
            for (const auto& a : args) idx = idx * factors[i].size() + a[i];
            total += mu[i] * factors[i].relation(phi->symbol).values[idx];
          }
        }
        return total;
      }
      case FormulaKind::Scale:
        return phi->coeff * eval(phi->left, env);
      case FormulaKind::Sum:
        return eval(phi->left, env) + eval(phi->right, env);
      case FormulaKind::Inf:
      case FormulaKind::Sup: {
        auto saved = env.find(phi->var) == env.end() ? std::nullopt : std::optional<RawTuple>(env[phi->var]);
        RawTuple cur(factors.size(), 0);
        bool first = true;
        Rational best;
        while (true) {
          env[phi->var] = cur;
          Rational v = eval(phi->left, env);
          if (first || (phi->kind == FormulaKind::Inf ? v < best : v > best)) best = v;
          first = false;
          std::size_t i = 0;
          while (i < cur.size() && ++cur[i] == factors[i].size()) cur[i++] = 0;
          if (i == cur.size()) break;
        }
        if (saved) env[phi->var] = *saved;
        else env.erase(phi->var);
        return best;
      }
    }
    return 0;
  }
};

}  // namespace

Rational oracle_raw_eval(const std::vector<FiniteStructure>& factors, const std::vector<Rational>& mu,
                         const Formula& phi, const std::map<std::string, RawTuple>& env) {
  std::map<std::string, RawTuple> scope = env;
  return RawEval{factors, mu}.eval(phi, scope);
}

}  // namespace affine::suite
