#include "affine/suite.hpp"

#include <numeric>

namespace affine::suite {

Rational grid_rational(Rng& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Rational r(dist(rng), den);
  r.canonicalize();
  return r;
}

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Signature test_signature() {
  return Signature({"c"}, {{"f", 1, Rational(2)}}, {{"R", 1, Rational(2)}, {"S", 2, Rational(2)}});
}

FiniteStructure random_structure(Rng& rng, const Signature& sig, std::size_t size) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::vector<Rational>> metric(size, std::vector<Rational>(size));
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) {
      Rational v = grid_rational(rng, 6, 12, 12);
      metric[a][b] = v;
      metric[b][a] = v;
    }
  }
  std::vector<Element> constants;
  for (std::size_t i = 0; i < sig.constants().size(); ++i) constants.push_back(pick(rng, size));
  std::vector<FunctionTable> functions;
  for (const auto& f : sig.functions()) {
    FunctionTable t{f.arity, std::vector<Element>(TupleSpace(size, f.arity).size())};
    for (auto& v : t.values) v = pick(rng, size);
    functions.push_back(std::move(t));
  }
  std::vector<RelationTable> relations;
  for (const auto& r : sig.relations()) {
    RelationTable t{r.arity, std::vector<Rational>(TupleSpace(size, r.arity).size())};
    for (auto& v : t.values) v = grid_rational(rng, 0, 6, 6);
    relations.push_back(std::move(t));
  }
  return FiniteStructure(sig, std::move(labels), std::move(metric), std::move(constants), std::move(functions),
                         std::move(relations));
}

FiniteStructure random_partition_structure(Rng& rng, std::size_t size, std::size_t blocks) {
  if (blocks == 0 || blocks > size) throw Error("bad block count");
  std::vector<std::size_t> block_of(size);
  // first `blocks` elements seed the blocks, the rest land anywhere
  for (std::size_t i = 0; i < size; ++i) block_of[i] = i < blocks ? i : pick(rng, blocks);
  std::shuffle(block_of.begin(), block_of.end(), rng);
  std::vector<RelationSymbol> syms;
  std::vector<RelationTable> tables;
  for (std::size_t k = 0; k < blocks; ++k) {
    syms.push_back({"P" + std::to_string(k + 1), 1, Rational(1)});
    RelationTable t{1, std::vector<Rational>(size)};
    for (std::size_t i = 0; i < size; ++i) t.values[i] = block_of[i] == k ? 1 : 0;
    tables.push_back(std::move(t));
  }
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> metric(size, std::vector<Rational>(size));
  for (std::size_t a = 0; a < size; ++a) {
    labels.push_back("e" + std::to_string(a));
    for (std::size_t b = 0; b < size; ++b) metric[a][b] = a == b ? 0 : 1;
  }
  return FiniteStructure(Signature({}, {}, std::move(syms)), std::move(labels), std::move(metric), {}, {},
                         std::move(tables));
}

namespace {

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const Signature& sig, const FormulaOptions& opts) : rng_(rng), sig_(sig), opts_(opts) {}

  Formula gen(std::size_t depth, std::vector<std::string>& scope, std::size_t nesting) {
    if (depth == 0 || coin(3)) return leaf(scope);
    switch (pick(rng_, nesting < opts_.max_nesting ? 4 : 2)) {
      case 0: {
        Rational r = grid_rational(rng_, -8, 7, 4);
        if (r >= 0) r += Rational(1, 4);  // never zero
        return scale(r, gen(depth - 1, scope, nesting));
      }
      case 1:
        return sum(gen(depth - 1, scope, nesting), gen(depth - 1, scope, nesting));
      default: {
        std::string v = "z" + std::to_string(fresh_++);
        scope.push_back(v);
        Formula body = gen(depth - 1, scope, nesting + 1);
        scope.pop_back();
        return coin(2) ? inf(v, body) : sup(v, body);
      }
    }
  }

 private:
  bool coin(std::size_t n) { return pick(rng_, n) == 0; }

  TermPtr term(const std::vector<std::string>& scope, std::size_t depth = 1) {
    if (depth > 0 && !sig_.functions().empty() && coin(4)) {
      const auto& f = sig_.functions()[pick(rng_, sig_.functions().size())];
      std::vector<TermPtr> args;
      for (std::size_t i = 0; i < f.arity; ++i) args.push_back(term(scope, depth - 1));
      return Term::apply(f.name, std::move(args));
    }
    bool use_const = !sig_.constants().empty() && (scope.empty() || coin(5));
    if (use_const) return Term::constant(sig_.constants()[pick(rng_, sig_.constants().size())]);
    if (scope.empty()) throw Error("no terms available");
    return Term::var(scope[pick(rng_, scope.size())]);
  }

  Formula leaf(const std::vector<std::string>& scope) {
    if (scope.empty() && sig_.constants().empty()) return one();
    std::size_t choice = pick(rng_, sig_.relations().size() + 2);
    if (choice == 0) return one();
    if (choice == 1) return metric(term(scope), term(scope));
    const auto& r = sig_.relations()[choice - 2];
    std::vector<TermPtr> args;
    for (std::size_t i = 0; i < r.arity; ++i) args.push_back(term(scope));
    return atom(r.name, std::move(args));
  }

  Rng& rng_;
  const Signature& sig_;
  FormulaOptions opts_;
  std::size_t fresh_ = 0;
};

}  // namespace

Formula random_formula(Rng& rng, const Signature& sig, const std::vector<std::string>& free_vars,
                       const FormulaOptions& opts) {
  FormulaGen g(rng, sig, opts);
  std::vector<std::string> scope = free_vars;
  return g.gen(opts.depth, scope, 0);
}

std::vector<Rational> random_weights(Rng& rng, std::size_t k) {
  std::vector<long> raw(k);
  for (auto& r : raw) r = std::uniform_int_distribution<long>(1, 6)(rng);
  long total = std::accumulate(raw.begin(), raw.end(), 0L);
  std::vector<Rational> out;
  for (auto r : raw) out.emplace_back(r, total);
  for (auto& w : out) w.canonicalize();
  return out;
}

Ultracharge random_ultracharge(Rng& rng, std::size_t k) {
  std::vector<long> raw(k);
  for (auto& r : raw) r = std::uniform_int_distribution<long>(0, 4)(rng);
  raw[pick(rng, k)] += 1;
  long total = std::accumulate(raw.begin(), raw.end(), 0L);
  std::vector<Rational> out;
  for (auto r : raw) {
    Rational w(r, total);
    w.canonicalize();
    out.push_back(w);
  }
  return Ultracharge(std::move(out));
}

}  // namespace affine::suite
