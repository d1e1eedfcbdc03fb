#pragma once

// Affine formula language: terms, formulas, conditions, signatures, the text
// grammar and syntax-directed Lipschitz/bound certificates.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "affine/rational.hpp"

namespace affine {

inline constexpr std::string_view kMetricSymbol = "d";

struct FunctionSymbol {
  std::string name;
  std::size_t arity = 1;
  Rational lambda;

  bool operator==(const FunctionSymbol&) const = default;
};

struct RelationSymbol {
  std::string name;
  std::size_t arity = 1;
  Rational lambda;

  bool operator==(const RelationSymbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> constants, std::vector<FunctionSymbol> functions,
            std::vector<RelationSymbol> relations);

  const std::vector<std::string>& constants() const { return constants_; }
  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<RelationSymbol>& relations() const { return relations_; }

  std::optional<std::size_t> constant_index(std::string_view name) const;
  std::optional<std::size_t> function_index(std::string_view name) const;
  std::optional<std::size_t> relation_index(std::string_view name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> constants_;
  std::vector<FunctionSymbol> functions_;
  std::vector<RelationSymbol> relations_;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Const, Func };
  Kind kind;
  std::string name;
  std::vector<TermPtr> args;

  static TermPtr var(std::string name);
  static TermPtr constant(std::string name);
  static TermPtr apply(std::string function, std::vector<TermPtr> args);
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

enum class FormulaKind { One, Atom, Scale, Sum, Inf, Sup };

/// Immutable AST node. Atom covers relation symbols and the metric symbol "d";
/// Inf/Sup bind `var` in `left`.
struct FormulaNode {
  FormulaKind kind;
  std::string symbol;
  std::vector<TermPtr> terms;
  Rational coeff;
  Formula left;
  Formula right;
  std::string var;
};

Formula one();
Formula atom(std::string symbol, std::vector<TermPtr> terms);
Formula metric(TermPtr lhs, TermPtr rhs);
Formula scale(Rational r, Formula phi);
Formula sum(Formula lhs, Formula rhs);
Formula inf(std::string var, Formula body);
Formula sup(std::string var, Formula body);
/// lhs + (-1)*rhs
Formula difference(Formula lhs, Formula rhs);
/// Constant formula r, encoded as r*1 (or 1 itself when r = 1).
Formula constant(const Rational& r);

bool structurally_equal(const TermPtr& a, const TermPtr& b);
bool structurally_equal(const Formula& a, const Formula& b);

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& phi);
std::vector<std::string> term_variables(const TermPtr& t);
std::size_t depth(const Formula& phi);

/// lhs <= rhs
struct Condition {
  Formula lhs;
  Formula rhs;
};
using Theory = std::vector<Condition>;

bool is_closed(const Condition& c);

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Formula parse_formula(std::string_view text, const Signature& sig);
/// "lhs <= rhs" or "lhs >= rhs".
Condition parse_condition(std::string_view text, const Signature& sig);
TermPtr parse_term(std::string_view text, const Signature& sig);

std::string render(const TermPtr& t);
std::string render(const Formula& phi);
std::string render(const Condition& c);

/// Checks every symbol use against `sig` (arity and declaration); throws Error.
void check_well_formed(const Formula& phi, const Signature& sig);

struct LipschitzCertificate {
  Rational lambda;
  Rational bound;
};

LipschitzCertificate certificate(const Formula& phi, const Signature& sig);

/// sum_i r_i * lhs_i <= sum_i r_i * rhs_i. Zero coefficients drop their condition.
Condition affine_combine(const std::vector<Condition>& conds, const std::vector<Rational>& coeffs);

}  // namespace affine
