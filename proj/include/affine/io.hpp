#pragma once

// JSON readers and writers. Rationals always travel as "p/q" strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "affine/definability.hpp"
#include "affine/mean.hpp"
#include "affine/typespace.hpp"

namespace affine::io {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path);

Json rational_json(const Rational& r);
Rational json_rational(const Json& j);
Json rationals_json(const std::vector<Rational>& values);

Json structure_to_json(const FiniteStructure& m);
FiniteStructure structure_from_json(const Json& j);

/// A path to a structure file, or a builtin: "pra22" (atoms 1/2,1/2),
/// "pra2" (the algebra {0,1}), or "pra:w1,w2,...".
FiniteStructure load_structure(const std::string& spec);

/// One formula per line, '#' starts a comment, optional "vars: x y" line.
FamilyPtr parse_family(const std::string& text, const Signature& sig);
FamilyPtr load_family(const std::string& path, const Signature& sig);

/// Tuple keys are comma-joined element indices ("0,2"); "values" may also be
/// a dense list in tuple order.
Json predicate_to_json(const PredicateTable& p);
PredicateTable predicate_from_json(const Json& j, std::size_t domain);

Json function_to_json(const FunctionMap& f);
FunctionMap function_from_json(const Json& j, std::size_t domain);

std::string tuple_key(const Tuple& t);
/// "a,b;c,d": tuples separated by ';', coordinates by ','. Each coordinate is
/// an element label, or an index when no label matches.
TupleSet parse_tuple_set(const std::string& text, const FiniteStructure& m, std::size_t arity);
Tuple parse_tuple(const std::string& text, const FiniteStructure& m);

Json functional_to_json(const AffineFunctional& f);
Json witness_to_json(const Witness& w, const FiniteStructure* m = nullptr);
Json type_to_json(const TypeVector& p, const FiniteStructure* m = nullptr);
Json hull_to_json(const TypeHull& hull);

}  // namespace affine::io
