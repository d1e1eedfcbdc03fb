#include "affine/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace affine {

// ---------------------------------------------------------------- signature

Signature::Signature(std::vector<std::string> constants, std::vector<FunctionSymbol> functions,
                     std::vector<RelationSymbol> relations)
    : constants_(std::move(constants)), functions_(std::move(functions)), relations_(std::move(relations)) {
  std::unordered_set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (name.empty()) throw Error("empty symbol name");
    if (name == kMetricSymbol || name == "inf" || name == "sup") {
      throw Error("symbol name '" + name + "' is reserved");
    }
    if (!seen.insert(name).second) throw Error("duplicate symbol '" + name + "'");
  };
  for (const auto& c : constants_) claim(c);
  for (const auto& f : functions_) {
    claim(f.name);
    if (f.lambda < 0) throw Error("negative Lipschitz constant for '" + f.name + "'");
  }
  for (const auto& r : relations_) {
    claim(r.name);
    if (r.lambda < 0) throw Error("negative Lipschitz constant for '" + r.name + "'");
  }
}

namespace {

template <class Seq, class Key>
std::optional<std::size_t> find_index(const Seq& seq, std::string_view name, Key key) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (key(seq[i]) == name) return i;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> Signature::constant_index(std::string_view name) const {
  return find_index(constants_, name, [](const std::string& s) -> const std::string& { return s; });
}
std::optional<std::size_t> Signature::function_index(std::string_view name) const {
  return find_index(functions_, name, [](const FunctionSymbol& s) -> const std::string& { return s.name; });
}
std::optional<std::size_t> Signature::relation_index(std::string_view name) const {
  return find_index(relations_, name, [](const RelationSymbol& s) -> const std::string& { return s.name; });
}

// ---------------------------------------------------------------- construction

TermPtr Term::var(std::string name) {
  return std::make_shared<const Term>(Term{Kind::Var, std::move(name), {}});
}
TermPtr Term::constant(std::string name) {
  return std::make_shared<const Term>(Term{Kind::Const, std::move(name), {}});
}
TermPtr Term::apply(std::string function, std::vector<TermPtr> args) {
  return std::make_shared<const Term>(Term{Kind::Func, std::move(function), std::move(args)});
}

Formula one() { return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::One, {}, {}, 0, {}, {}, {}}); }

Formula atom(std::string symbol, std::vector<TermPtr> terms) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Atom, std::move(symbol), std::move(terms), 0, {}, {}, {}});
}

Formula metric(TermPtr lhs, TermPtr rhs) { return atom(std::string(kMetricSymbol), {std::move(lhs), std::move(rhs)}); }

Formula scale(Rational r, Formula phi) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Scale, {}, {}, std::move(r), std::move(phi), {}, {}});
}

Formula sum(Formula lhs, Formula rhs) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Sum, {}, {}, 0, std::move(lhs), std::move(rhs), {}});
}

Formula inf(std::string var, Formula body) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Inf, {}, {}, 0, std::move(body), {}, std::move(var)});
}

Formula sup(std::string var, Formula body) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaKind::Sup, {}, {}, 0, std::move(body), {}, std::move(var)});
}

Formula difference(Formula lhs, Formula rhs) { return sum(std::move(lhs), scale(Rational(-1), std::move(rhs))); }

Formula constant(const Rational& r) { return r == 1 ? one() : scale(r, one()); }

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::One:
      return true;
    case FormulaKind::Atom:
      if (a->symbol != b->symbol || a->terms.size() != b->terms.size()) return false;
      for (std::size_t i = 0; i < a->terms.size(); ++i) {
        if (!structurally_equal(a->terms[i], b->terms[i])) return false;
      }
      return true;
    case FormulaKind::Scale:
      return a->coeff == b->coeff && structurally_equal(a->left, b->left);
    case FormulaKind::Sum:
      return structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
    case FormulaKind::Inf:
    case FormulaKind::Sup:
      return a->var == b->var && structurally_equal(a->left, b->left);
  }
  return false;
}

namespace {

void collect_term_vars(const TermPtr& t, const std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (t->kind == Term::Kind::Var) {
    if (std::find(bound.begin(), bound.end(), t->name) == bound.end() &&
        std::find(out.begin(), out.end(), t->name) == out.end()) {
      out.push_back(t->name);
    }
    return;
  }
  for (const auto& a : t->args) collect_term_vars(a, bound, out);
}

void collect_free(const Formula& phi, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (phi->kind) {
    case FormulaKind::One:
      return;
    case FormulaKind::Atom:
      for (const auto& t : phi->terms) collect_term_vars(t, bound, out);
      return;
    case FormulaKind::Scale:
      collect_free(phi->left, bound, out);
      return;
    case FormulaKind::Sum:
      collect_free(phi->left, bound, out);
      collect_free(phi->right, bound, out);
      return;
    case FormulaKind::Inf:
    case FormulaKind::Sup:
      bound.push_back(phi->var);
      collect_free(phi->left, bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& phi) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  collect_free(phi, bound, out);
  return out;
}

std::vector<std::string> term_variables(const TermPtr& t) {
  std::vector<std::string> out;
  collect_term_vars(t, {}, out);
  return out;
}

std::size_t depth(const Formula& phi) {
  switch (phi->kind) {
    case FormulaKind::One:
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::Scale:
    case FormulaKind::Inf:
    case FormulaKind::Sup:
      return 1 + depth(phi->left);
    case FormulaKind::Sum:
      return 1 + std::max(depth(phi->left), depth(phi->right));
  }
  return 0;
}

bool is_closed(const Condition& c) { return free_variables(c.lhs).empty() && free_variables(c.rhs).empty(); }

// ---------------------------------------------------------------- parsing

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

enum class Tok { Ident, Number, Slash, Star, Plus, Minus, LParen, RParen, Comma, Dot, Le, Ge, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::Number, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (c == '<' || c == '>') {
      if (i + 1 < text.size() && text[i + 1] == '=') {
        out.push_back({c == '<' ? Tok::Le : Tok::Ge, std::string(text.substr(i, 2)), start});
        i += 2;
        continue;
      }
      throw ParseError(std::string("expected '") + c + "='", start);
    }
    Tok kind;
    switch (c) {
      case '/': kind = Tok::Slash; break;
      case '*': kind = Tok::Star; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : tokens_(tokenize(text)), sig_(sig) {}

  Formula formula() { return parse_sum(); }

  Condition condition() {
    Formula lhs = parse_sum();
    const Token& op = peek();
    if (op.kind != Tok::Le && op.kind != Tok::Ge) throw ParseError("expected '<=' or '>='", op.pos);
    bool flipped = op.kind == Tok::Ge;
    ++pos_;
    Formula rhs = parse_sum();
    if (flipped) return {rhs, lhs};
    return {lhs, rhs};
  }

  TermPtr term() { return parse_term(); }

  void expect_end() {
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw ParseError(std::string("expected ") + what, peek().pos);
    return tokens_[pos_++];
  }

  Formula parse_sum() {
    Formula acc = parse_scaled();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = peek().kind == Tok::Minus;
      ++pos_;
      Formula rhs = parse_scaled();
      acc = minus ? difference(acc, rhs) : sum(acc, rhs);
    }
    return acc;
  }

  Rational parse_rational_literal(bool negative) {
    const Token& num = expect(Tok::Number, "integer");
    std::string text = (negative ? "-" : "") + num.text;
    if (peek().kind == Tok::Slash) {
      ++pos_;
      const Token& den = expect(Tok::Number, "denominator");
      text += "/" + den.text;
    }
    try {
      return parse_rational(text);
    } catch (const Error& e) {
      throw ParseError(e.what(), num.pos);
    }
  }

  Formula parse_scaled() {
    const Token& t = peek();
    if (t.kind == Tok::Minus) {
      ++pos_;
      if (peek().kind == Tok::Number) return after_rational(parse_rational_literal(true));
      return scale(Rational(-1), parse_scaled());
    }
    if (t.kind == Tok::Number) {
      bool plain_one = t.text == "1" && peek(1).kind != Tok::Slash;
      Rational r = parse_rational_literal(false);
      if (plain_one && peek().kind != Tok::Star) return one();
      return after_rational(std::move(r));
    }
    return parse_atom();
  }

  Formula after_rational(Rational r) {
    if (peek().kind == Tok::Star) {
      ++pos_;
      return scale(std::move(r), parse_scaled());
    }
    return constant(r);
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      Formula inner = parse_sum();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident) throw ParseError("expected formula", t.pos);
    if (t.text == "inf" || t.text == "sup") {
      bool is_inf = t.text == "inf";
      ++pos_;
      const Token& v = expect(Tok::Ident, "bound variable");
      check_variable_name(v);
      std::string var = v.text;
      expect(Tok::Dot, "'.' after bound variable");
      Formula body = parse_sum();
      return is_inf ? inf(var, body) : sup(var, body);
    }
    std::string name = t.text;
    std::size_t at = t.pos;
    ++pos_;
    if (peek().kind != Tok::LParen) throw ParseError("expected '(' after relation '" + name + "'", peek().pos);
    ++pos_;
    std::vector<TermPtr> args;
    args.push_back(parse_term());
    while (peek().kind == Tok::Comma) {
      ++pos_;
      args.push_back(parse_term());
    }
    expect(Tok::RParen, "')'");
    std::size_t arity;
    if (name == kMetricSymbol) {
      arity = 2;
    } else if (auto idx = sig_.relation_index(name)) {
      arity = sig_.relations()[*idx].arity;
    } else {
      throw ParseError("unknown relation symbol '" + name + "'", at);
    }
    if (args.size() != arity) {
      throw ParseError("arity mismatch for '" + name + "': expected " + std::to_string(arity) + ", got " +
                           std::to_string(args.size()),
                       at);
    }
    return atom(name, std::move(args));
  }

  void check_variable_name(const Token& v) const {
    if (v.text == "inf" || v.text == "sup" || sig_.constant_index(v.text)) {
      throw ParseError("'" + v.text + "' cannot be used as a variable", v.pos);
    }
  }

  TermPtr parse_term() {
    const Token& t = expect(Tok::Ident, "term");
    if (peek().kind == Tok::LParen) {
      auto idx = sig_.function_index(t.text);
      if (!idx) throw ParseError("unknown function symbol '" + t.text + "'", t.pos);
      ++pos_;
      std::vector<TermPtr> args;
      args.push_back(parse_term());
      while (peek().kind == Tok::Comma) {
        ++pos_;
        args.push_back(parse_term());
      }
      expect(Tok::RParen, "')'");
      if (args.size() != sig_.functions()[*idx].arity) {
        throw ParseError("arity mismatch for '" + t.text + "'", t.pos);
      }
      return Term::apply(t.text, std::move(args));
    }
    if (sig_.constant_index(t.text)) return Term::constant(t.text);
    if (t.text == "inf" || t.text == "sup") throw ParseError("keyword used as term", t.pos);
    if (sig_.function_index(t.text) || sig_.relation_index(t.text) || t.text == kMetricSymbol) {
      throw ParseError("symbol '" + t.text + "' used as a variable", t.pos);
    }
    return Term::var(t.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Formula phi = p.formula();
  p.expect_end();
  return phi;
}

Condition parse_condition(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Condition c = p.condition();
  p.expect_end();
  return c;
}

TermPtr parse_term(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  TermPtr t = p.term();
  p.expect_end();
  return t;
}

// ---------------------------------------------------------------- rendering

std::string render(const TermPtr& t) {
  if (t->kind != Term::Kind::Func) return t->name;
  std::string out = t->name + "(";
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ", ";
    out += render(t->args[i]);
  }
  return out + ")";
}

namespace {

// Quantifier bodies extend to the right, so any quantifier that is not the
// whole (sub)formula gets parenthesized.
std::string render_nested(const Formula& phi, bool top) {
  switch (phi->kind) {
    case FormulaKind::One:
      return "1";
    case FormulaKind::Atom: {
      std::string out = phi->symbol + "(";
      for (std::size_t i = 0; i < phi->terms.size(); ++i) {
        if (i) out += ", ";
        out += render(phi->terms[i]);
      }
      return out + ")";
    }
    case FormulaKind::Scale: {
      const Formula& inner = phi->left;
      std::string body = render_nested(inner, false);
      if (inner->kind == FormulaKind::Sum) body = "(" + body + ")";
      return to_short(phi->coeff) + " * " + body;
    }
    case FormulaKind::Sum: {
      std::string rhs = render_nested(phi->right, false);
      if (phi->right->kind == FormulaKind::Sum) rhs = "(" + rhs + ")";
      return render_nested(phi->left, false) + " + " + rhs;
    }
    case FormulaKind::Inf:
    case FormulaKind::Sup: {
      std::string out = (phi->kind == FormulaKind::Inf ? "inf " : "sup ") + phi->var + ". " +
                        render_nested(phi->left, true);
      return top ? out : "(" + out + ")";
    }
  }
  return {};
}

}  // namespace

std::string render(const Formula& phi) { return render_nested(phi, true); }

std::string render(const Condition& c) { return render(c.lhs) + " <= " + render(c.rhs); }

// ---------------------------------------------------------------- checks and certificates

namespace {

Rational term_lambda(const TermPtr& t, const Signature& sig) {
  switch (t->kind) {
    case Term::Kind::Var:
      return Rational(1);
    case Term::Kind::Const:
      if (!sig.constant_index(t->name)) throw Error("unknown constant '" + t->name + "'");
      return Rational(0);
    case Term::Kind::Func: {
      auto idx = sig.function_index(t->name);
      if (!idx) throw Error("unknown function symbol '" + t->name + "'");
      const auto& f = sig.functions()[*idx];
      if (f.arity != t->args.size()) throw Error("arity mismatch for '" + t->name + "'");
      Rational total = 0;
      for (const auto& a : t->args) total += term_lambda(a, sig);
      return f.lambda * total;
    }
  }
  return Rational(0);
}

}  // namespace

void check_well_formed(const Formula& phi, const Signature& sig) { (void)certificate(phi, sig); }

LipschitzCertificate certificate(const Formula& phi, const Signature& sig) {
  switch (phi->kind) {
    case FormulaKind::One:
      return {Rational(0), Rational(1)};
    case FormulaKind::Atom: {
      Rational rel_lambda;
      if (phi->symbol == kMetricSymbol) {
        if (phi->terms.size() != 2) throw Error("metric symbol takes two terms");
        rel_lambda = 1;
      } else {
        auto idx = sig.relation_index(phi->symbol);
        if (!idx) throw Error("unknown relation symbol '" + phi->symbol + "'");
        const auto& r = sig.relations()[*idx];
        if (r.arity != phi->terms.size()) throw Error("arity mismatch for '" + phi->symbol + "'");
        rel_lambda = r.lambda;
      }
      Rational total = 0;
      for (const auto& t : phi->terms) total += term_lambda(t, sig);
      return {Rational(rel_lambda * total), Rational(1)};
    }
    case FormulaKind::Scale: {
      auto inner = certificate(phi->left, sig);
      Rational r = abs(phi->coeff);
      return {Rational(r * inner.lambda), Rational(r * inner.bound)};
    }
    case FormulaKind::Sum: {
      auto a = certificate(phi->left, sig);
      auto b = certificate(phi->right, sig);
      return {Rational(a.lambda + b.lambda), Rational(a.bound + b.bound)};
    }
    case FormulaKind::Inf:
    case FormulaKind::Sup:
      return certificate(phi->left, sig);
  }
  return {};
}

Condition affine_combine(const std::vector<Condition>& conds, const std::vector<Rational>& coeffs) {
  if (conds.empty()) throw Error("affine_combine: empty condition list");
  if (conds.size() != coeffs.size()) throw Error("affine_combine: coefficient count mismatch");
  bool any_positive = false;
  for (const auto& r : coeffs) {
    if (r < 0) throw Error("affine_combine: negative coefficient " + to_short(r));
    if (r > 0) any_positive = true;
  }
  if (!any_positive) throw Error("affine_combine: all coefficients are zero");

  Formula lhs, rhs;
  auto weighted = [](const Rational& r, const Formula& f) { return r == 1 ? f : scale(r, f); };
  for (std::size_t i = 0; i < conds.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Formula l = weighted(coeffs[i], conds[i].lhs);
    Formula r = weighted(coeffs[i], conds[i].rhs);
    lhs = lhs ? sum(lhs, l) : l;
    rhs = rhs ? sum(rhs, r) : r;
  }
  return {lhs, rhs};
}

}  // namespace affine
