#pragma once

#include <gtest/gtest.h>

#include "affine/definability.hpp"
#include "affine/io.hpp"
#include "affine/mean.hpp"
#include "affine/pra.hpp"
#include "affine/suite.hpp"
#include "affine/typespace.hpp"

namespace fx {

using namespace affine;

inline Rational q(const char* s) { return parse_rational(s); }

inline std::vector<Rational> qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.push_back(q(x));
  return out;
}

inline pra::MeasureAlgebra algebra(std::initializer_list<const char*> w) { return pra::MeasureAlgebra(qs(w)); }

/// Atoms (1/2, 1/2): elements 00, 10, 01, 11.
inline FiniteStructure pra22() { return algebra({"1/2", "1/2"}).to_structure(); }
/// The two-element algebra {0, 1}.
inline FiniteStructure pra2() { return algebra({"1"}).to_structure(); }

inline Formula f(const FiniteStructure& m, const char* text) { return parse_formula(text, m.signature()); }

inline FamilyPtr fam(const FiniteStructure& m, std::initializer_list<const char*> texts) {
  std::vector<Formula> fs;
  for (auto t : texts) fs.push_back(f(m, t));
  return make_family(std::move(fs));
}

/// Three elements at mutual distance 1, one unary relation R (lambda 1).
inline FiniteStructure uniform3(std::vector<Rational> r) {
  std::vector<std::vector<Rational>> d(3, std::vector<Rational>(3, Rational(1)));
  for (int i = 0; i < 3; ++i) d[i][i] = 0;
  return FiniteStructure(Signature({}, {}, {{"R", 1, Rational(1)}}), {"a", "b", "c"}, d, {}, {},
                         {RelationTable{1, std::move(r)}});
}

}  // namespace fx
