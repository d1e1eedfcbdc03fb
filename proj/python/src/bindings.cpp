#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "affine/definability.hpp"
#include "affine/io.hpp"
#include "affine/mean.hpp"
#include "affine/pra.hpp"
#include "affine/typespace.hpp"

namespace py = pybind11;
using namespace affine;

// Rational <-> fractions.Fraction; ints and "p/q" strings are accepted on input
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = parse_rational(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::bool_>(src)) return false;
      py::object frac = py::module_::import("fractions").attr("Fraction")(src);
      std::string num = py::str(frac.attr("numerator"));
      std::string den = py::str(frac.attr("denominator"));
      value = Rational(mpz_class(num), mpz_class(den));
      value.canonicalize();
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::object num = py::int_(py::str(r.get_num().get_str()));
    py::object den = py::int_(py::str(r.get_den().get_str()));
    return fraction(num, den).release();
  }
};
}  // namespace pybind11::detail

namespace {

py::object to_py(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FamilyPtr family(const FiniteStructure& m, const std::vector<std::string>& formulas,
                 const std::optional<std::vector<std::string>>& vars) {
  std::vector<Formula> fs;
  for (const auto& text : formulas) fs.push_back(parse_formula(text, m.signature()));
  return vars ? make_family(*vars, std::move(fs)) : make_family(std::move(fs));
}

std::vector<Condition> conditions(const FiniteStructure& m, const std::vector<std::string>& texts) {
  std::vector<Condition> out;
  for (const auto& t : texts) out.push_back(parse_condition(t, m.signature()));
  return out;
}

TupleSet tuple_set(const FiniteStructure& m, const std::vector<std::vector<std::string>>& tuples) {
  std::size_t arity = tuples.empty() ? 1 : tuples.front().size();
  TupleSpace space(m.size(), arity);
  TupleSet out;
  for (const auto& t : tuples) {
    Tuple idx;
    for (const auto& label : t) {
      auto e = m.find_label(label);
      if (!e) throw Error("unknown element '" + label + "'");
      idx.push_back(*e);
    }
    if (idx.size() != arity) throw Error("tuples have different lengths");
    out.insert(space.index(idx));
  }
  return out;
}

Assignment assignment(const FiniteStructure& m, const std::map<std::string, std::string>& labels) {
  Assignment a;
  for (const auto& [var, label] : labels) {
    auto e = m.find_label(label);
    if (!e) throw Error("unknown element '" + label + "'");
    a[var] = *e;
  }
  return a;
}

pra::MeasureAlgebra algebra(const std::vector<Rational>& weights) { return pra::MeasureAlgebra(weights); }

std::set<pra::Elem> elements(const pra::MeasureAlgebra& alg, const std::vector<std::string>& labels) {
  std::set<pra::Elem> out;
  for (const auto& l : labels) out.insert(alg.parse(l));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  py::register_exception<Error>(mod, "AffineError", PyExc_ValueError);

  py::class_<FiniteStructure>(mod, "Structure")
      .def_static("load", &io::load_structure, py::arg("spec"))
      .def_static("from_json",
                  [](const std::string& text) { return io::structure_from_json(io::Json::parse(text)); })
      .def("to_json", [](const FiniteStructure& m) { return io::structure_to_json(m).dump(); })
      .def_property_readonly("size", &FiniteStructure::size)
      .def_property_readonly("labels", &FiniteStructure::labels)
      .def("distance",
           [](const FiniteStructure& m, const std::string& a, const std::string& b) {
             auto x = m.find_label(a);
             auto y = m.find_label(b);
             if (!x || !y) throw Error("unknown element");
             return m.distance(*x, *y);
           })
      .def("validate",
           [](const FiniteStructure& m) {
             auto r = validate_structure(m);
             return py::make_tuple(r.ok(), r.axiom);
           })
      .def("eval",
           [](const FiniteStructure& m, const std::string& formula, const std::map<std::string, std::string>& asg) {
             return eval_formula(m, parse_formula(formula, m.signature()), assignment(m, asg));
           },
           py::arg("formula"), py::arg("assign") = std::map<std::string, std::string>{})
      .def("table",
           [](const FiniteStructure& m, const std::string& formula, const std::vector<std::string>& vars) {
             return formula_table(m, parse_formula(formula, m.signature()), vars);
           })
      .def("automorphisms", &automorphisms);

  mod.def("render", [](const std::string& text, const FiniteStructure& m) {
    return render(parse_formula(text, m.signature()));
  });
  mod.def("certificate", [](const std::string& text, const FiniteStructure& m) {
    auto c = certificate(parse_formula(text, m.signature()), m.signature());
    return py::make_tuple(c.lambda, c.bound);
  });

  mod.def("ultramean",
          [](const std::vector<FiniteStructure>& factors, const std::vector<Rational>& weights, std::size_t cap) {
            return build_ultramean(factors, Ultracharge(weights), cap).structure();
          },
          py::arg("factors"), py::arg("weights"), py::arg("cap") = kDefaultMeanCap);
  mod.def("ultramean_identity",
          [](const std::vector<FiniteStructure>& factors, const std::vector<Rational>& weights,
             const std::string& formula, const std::vector<std::string>& vars,
             const std::vector<std::vector<std::size_t>>& raw) {
            if (factors.empty()) throw Error("no factors");
            auto r = check_ultramean_identity(factors, Ultracharge(weights),
                                              parse_formula(formula, factors.front().signature()), vars, raw);
            return py::make_tuple(r.quotient_value, r.integral_value);
          });

  mod.def("type_hull",
          [](const FiniteStructure& m, const std::vector<std::string>& formulas,
             std::optional<std::vector<std::string>> vars) {
            auto hull = type_hull(m, family(m, formulas, vars));
            return py::make_tuple(hull.vertices, extreme_indices(hull));
          },
          py::arg("structure"), py::arg("formulas"), py::arg("vars") = py::none());
  mod.def("extreme_points", [](std::vector<std::vector<Rational>> points) {
    auto hull = TypeHull::from_points(std::move(points));
    return py::make_tuple(hull.vertices, extreme_indices(hull));
  });
  mod.def("satisfiable",
          [](const FiniteStructure& m, const std::vector<std::string>& vars, const std::vector<std::string>& sigma) {
            auto r = affine_satisfiable(m, vars, conditions(m, sigma));
            py::dict out;
            out["satisfiable"] = r.satisfiable;
            if (r.satisfiable) {
              out["distribution"] = r.distribution.weights;
            } else {
              out["farkas"] = r.farkas;
            }
            return out;
          });
  mod.def("keisler_decompose",
          [](const FiniteStructure& m, const std::vector<std::string>& formulas, const std::vector<Rational>& point) {
            auto hull = type_hull(m, family(m, formulas, std::nullopt));
            return keisler_decompose(hull, point).weights;
          });

  mod.def("distance_predicate",
          [](const FiniteStructure& m, const std::vector<std::vector<std::string>>& d, std::size_t arity) {
            return distance_predicate(m, arity, tuple_set(m, d)).values;
          },
          py::arg("structure"), py::arg("tuples"), py::arg("arity") = 1);
  mod.def("is_definable_set",
          [](const FiniteStructure& m, const std::vector<std::vector<std::string>>& d,
             const std::vector<std::string>& formulas) {
            auto F = family(m, formulas, std::nullopt);
            auto r = is_definable_set(m, tuple_set(m, d), *F);
            py::dict out;
            out["definable"] = r.definable;
            if (r.witness) {
              out["constant"] = r.witness->constant;
              out["coeffs"] = r.witness->coeffs;
            }
            return out;
          });
  mod.def("json_report", [](const FiniteStructure& m, const std::vector<std::string>& formulas) {
    return to_py(io::hull_to_json(type_hull(m, family(m, formulas, std::nullopt))));
  });

  auto pra_mod = mod.def_submodule("pra");
  pra_mod.def("structure", [](const std::vector<Rational>& w) { return algebra(w).to_structure(); });
  pra_mod.def("interval_distance", [](const std::vector<Rational>& w, const std::string& x, const std::string& a,
                                      const std::string& b) {
    auto alg = algebra(w);
    return pra::interval_distance(alg, alg.parse(x), alg.parse(a), alg.parse(b));
  });
  pra_mod.def("hahn", [](const std::vector<Rational>& w, const std::vector<Rational>& values) {
    auto alg = algebra(w);
    auto h = pra::hahn_max_set(alg, pra::AdditiveFunction(alg, values));
    py::dict out;
    out["a"] = alg.label(h.positive);
    out["b"] = alg.label(h.negative);
    out["interval"] = py::make_tuple(alg.label(h.lower), alg.label(h.upper));
    out["max"] = h.max_value;
    return out;
  });
  pra_mod.def("dcl", [](const std::vector<Rational>& w, const std::vector<std::string>& s) {
    auto alg = algebra(w);
    std::vector<std::string> out;
    for (auto e : pra::dcl(alg, elements(alg, s))) out.push_back(alg.label(e));
    return out;
  });
  pra_mod.def("definable", [](const std::vector<Rational>& w, const std::vector<std::string>& d) {
    auto alg = algebra(w);
    auto r = pra::pra_definable_check(alg, elements(alg, d));
    py::dict out;
    out["definable"] = r.definable;
    out["interval"] = py::make_tuple(alg.label(r.lower), alg.label(r.upper));
    if (r.missing) out["missing"] = alg.label(*r.missing);
    return out;
  });
}
