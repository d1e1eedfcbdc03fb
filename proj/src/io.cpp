#include "affine/io.hpp"

#include <fstream>
#include <sstream>

#include "affine/pra.hpp"

namespace affine::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json rational_json(const Rational& r) { return to_pq(r); }

Rational json_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("expected a \"p/q\" rational, got " + j.dump());
}

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_pq(v));
  return out;
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(std::string("missing field '") + name + "'");
  return j.at(name);
}

Element element_ref(const Json& j, const std::vector<std::string>& labels) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    auto i = j.get<long>();
    if (i < 0 || static_cast<std::size_t>(i) >= labels.size()) throw Error("element index out of range");
    return static_cast<Element>(i);
  }
  if (!j.is_string()) throw Error("expected an element label");
  auto s = j.get<std::string>();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == s) return i;
  }
  throw Error("unknown element '" + s + "'");
}

Element lookup_element(const std::string& s, const FiniteStructure& m) {
  if (auto e = m.find_label(s)) return *e;
  try {
    std::size_t pos = 0;
    unsigned long i = std::stoul(s, &pos);
    if (pos == s.size() && i < m.size()) return i;
  } catch (const std::exception&) {
  }
  throw Error("unknown element '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Json structure_to_json(const FiniteStructure& m) {
  const auto& sig = m.signature();
  Json j;
  j["elements"] = m.labels();
  Json metric = Json::array();
  for (const auto& row : m.metric()) metric.push_back(rationals_json(row));
  j["metric"] = metric;
  Json consts = Json::object();
  for (std::size_t i = 0; i < sig.constants().size(); ++i) consts[sig.constants()[i]] = m.labels()[m.constants()[i]];
  j["constants"] = consts;
  Json funcs = Json::array();
  for (std::size_t i = 0; i < sig.functions().size(); ++i) {
    const auto& f = sig.functions()[i];
    Json table = Json::array();
    for (auto v : m.functions()[i].values) table.push_back(m.labels()[v]);
    funcs.push_back({{"name", f.name}, {"arity", f.arity}, {"lambda", to_pq(f.lambda)}, {"table", table}});
  }
  j["functions"] = funcs;
  Json rels = Json::array();
  for (std::size_t i = 0; i < sig.relations().size(); ++i) {
    const auto& r = sig.relations()[i];
    rels.push_back({{"name", r.name},
                    {"arity", r.arity},
                    {"lambda", to_pq(r.lambda)},
                    {"table", rationals_json(m.relations()[i].values)}});
  }
  j["relations"] = rels;
  return j;
}

FiniteStructure structure_from_json(const Json& j) {
  try {
    std::vector<std::string> labels;
    for (const auto& e : field(j, "elements")) {
      labels.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    }
    const std::size_t n = labels.size();
    if (n == 0) throw Error("structure needs at least one element");
    std::vector<std::vector<Rational>> metric;
    for (const auto& row : field(j, "metric")) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(json_rational(v));
      metric.push_back(std::move(r));
    }
    std::vector<std::string> const_names;
    std::vector<Element> consts;
    if (j.contains("constants")) {
      for (const auto& [name, ref] : j.at("constants").items()) {
        const_names.push_back(name);
        consts.push_back(element_ref(ref, labels));
      }
    }
    std::vector<FunctionSymbol> fsyms;
    std::vector<FunctionTable> ftables;
    if (j.contains("functions")) {
      for (const auto& f : j.at("functions")) {
        std::size_t arity = field(f, "arity").get<std::size_t>();
        fsyms.push_back({field(f, "name").get<std::string>(), arity, json_rational(field(f, "lambda"))});
        FunctionTable t{arity, {}};
        for (const auto& v : field(f, "table")) t.values.push_back(element_ref(v, labels));
        ftables.push_back(std::move(t));
      }
    }
    std::vector<RelationSymbol> rsyms;
    std::vector<RelationTable> rtables;
    if (j.contains("relations")) {
      for (const auto& r : j.at("relations")) {
        std::size_t arity = field(r, "arity").get<std::size_t>();
        rsyms.push_back({field(r, "name").get<std::string>(), arity, json_rational(field(r, "lambda"))});
        RelationTable t{arity, {}};
        for (const auto& v : field(r, "table")) t.values.push_back(json_rational(v));
        rtables.push_back(std::move(t));
      }
    }
    return FiniteStructure(Signature(std::move(const_names), std::move(fsyms), std::move(rsyms)), std::move(labels),
                           std::move(metric), std::move(consts), std::move(ftables), std::move(rtables));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("structure schema: ") + e.what());
  }
}

FiniteStructure load_structure(const std::string& spec) {
  if (spec == "pra22") return pra::MeasureAlgebra({Rational(1, 2), Rational(1, 2)}).to_structure();
  if (spec == "pra2") return pra::MeasureAlgebra({Rational(1)}).to_structure();
  if (spec.rfind("pra:", 0) == 0) return pra::MeasureAlgebra(parse_rational_list(spec.substr(4))).to_structure();
  Json j;
  try {
    j = Json::parse(read_file(spec));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("'" + spec + "' is not valid JSON: " + e.what());
  }
  return structure_from_json(j);
}

FamilyPtr parse_family(const std::string& text, const Signature& sig) {
  std::istringstream in(text);
  std::string line;
  std::optional<std::vector<std::string>> vars;
  std::vector<Formula> formulas;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    if (line.rfind("vars:", 0) == 0) {
      std::istringstream vs(line.substr(5));
      vars.emplace();
      for (std::string v; vs >> v;) vars->push_back(v);
      continue;
    }
    formulas.push_back(parse_formula(line, sig));
  }
  if (formulas.empty()) throw Error("formula family is empty");
  return vars ? make_family(*vars, std::move(formulas)) : make_family(std::move(formulas));
}

FamilyPtr load_family(const std::string& path, const Signature& sig) { return parse_family(read_file(path), sig); }

std::string tuple_key(const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out;
}

Json predicate_to_json(const PredicateTable& p) {
  TupleSpace space(p.domain, p.arity);
  Json values = Json::object();
  for (std::size_t t = 0; t < space.size(); ++t) values[tuple_key(space.tuple(t))] = to_pq(p.values[t]);
  Json j{{"arity", p.arity}, {"values", values}};
  if (p.witness) j["witness"] = functional_to_json(*p.witness);
  return j;
}

PredicateTable predicate_from_json(const Json& j, std::size_t domain) {
  try {
    PredicateTable p{domain, field(j, "arity").get<std::size_t>(), {}, std::nullopt};
    TupleSpace space(domain, p.arity);
    const Json& values = field(j, "values");
    if (values.is_array()) {
      for (const auto& v : values) p.values.push_back(json_rational(v));
      if (p.values.size() != space.size()) throw Error("predicate table has the wrong number of entries");
      return p;
    }
    p.values.resize(space.size());
    std::vector<bool> seen(space.size(), false);
    for (const auto& [key, v] : values.items()) {
      Tuple t;
      if (!key.empty()) {
        for (const auto& part : split(key, ',')) t.push_back(std::stoul(part));
      }
      if (t.size() != p.arity) throw Error("tuple key '" + key + "' has the wrong arity");
      for (auto e : t) {
        if (e >= domain) throw Error("tuple key '" + key + "' is out of range");
      }
      std::size_t idx = space.index(t);
      p.values[idx] = json_rational(v);
      seen[idx] = true;
    }
    for (std::size_t t = 0; t < space.size(); ++t) {
      if (!seen[t]) throw Error("predicate table is missing tuple " + tuple_key(space.tuple(t)));
    }
    return p;
  } catch (const std::invalid_argument&) {
    throw Error("malformed tuple key in predicate table");
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("predicate schema: ") + e.what());
  }
}

Json function_to_json(const FunctionMap& f) {
  TupleSpace in(f.domain, f.in_arity);
  TupleSpace out(f.domain, f.out_arity);
  Json map = Json::object();
  for (std::size_t x = 0; x < in.size(); ++x) map[tuple_key(in.tuple(x))] = tuple_key(out.tuple(f.values[x]));
  return {{"in_arity", f.in_arity}, {"out_arity", f.out_arity}, {"lambda", to_pq(f.lambda)}, {"map", map}};
}

FunctionMap function_from_json(const Json& j, std::size_t domain) {
  try {
    FunctionMap f;
    f.domain = domain;
    f.in_arity = j.value("in_arity", std::size_t{1});
    f.out_arity = j.value("out_arity", std::size_t{1});
    f.lambda = json_rational(field(j, "lambda"));
    TupleSpace in(domain, f.in_arity);
    TupleSpace out(domain, f.out_arity);
    auto parse_tuple_key = [&](const std::string& key, std::size_t arity) {
      Tuple t;
      for (const auto& part : split(key, ',')) t.push_back(std::stoul(part));
      if (t.size() != arity) throw Error("tuple '" + key + "' has the wrong arity");
      for (auto e : t) {
        if (e >= domain) throw Error("tuple '" + key + "' is out of range");
      }
      return t;
    };
    const Json& map = field(j, "map");
    f.values.assign(in.size(), 0);
    std::vector<bool> seen(in.size(), false);
    if (map.is_array()) {
      if (map.size() != in.size()) throw Error("function table has the wrong number of entries");
      for (std::size_t x = 0; x < in.size(); ++x) {
        const Json& v = map[x];
        f.values[x] = v.is_string() ? out.index(parse_tuple_key(v.get<std::string>(), f.out_arity))
                                    : out.index(Tuple{v.get<std::size_t>()});
        seen[x] = true;
      }
    } else {
      for (const auto& [key, v] : map.items()) {
        std::size_t x = in.index(parse_tuple_key(key, f.in_arity));
        f.values[x] = out.index(parse_tuple_key(v.get<std::string>(), f.out_arity));
        seen[x] = true;
      }
    }
    for (std::size_t x = 0; x < in.size(); ++x) {
      if (!seen[x]) throw Error("function table is missing input " + tuple_key(in.tuple(x)));
    }
    return f;
  } catch (const std::invalid_argument&) {
    throw Error("malformed tuple in function table");
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("function schema: ") + e.what());
  }
}

Tuple parse_tuple(const std::string& text, const FiniteStructure& m) {
  Tuple t;
  if (text.empty()) return t;
  for (const auto& part : split(text, ',')) t.push_back(lookup_element(part, m));
  return t;
}

TupleSet parse_tuple_set(const std::string& text, const FiniteStructure& m, std::size_t arity) {
  TupleSet out;
  if (text.empty()) return out;
  TupleSpace space(m.size(), arity);
  for (const auto& part : split(text, ';')) {
    if (part.empty()) continue;
    Tuple t = parse_tuple(part, m);
    if (t.size() != arity) throw Error("tuple '" + part + "' should have " + std::to_string(arity) + " entries");
    out.insert(space.index(t));
  }
  return out;
}

Json functional_to_json(const AffineFunctional& f) {
  return {{"constant", to_pq(f.constant)}, {"coeffs", rationals_json(f.coeffs)}};
}

Json witness_to_json(const Witness& w, const FiniteStructure* m) {
  TupleSpace space(w.domain, w.arity);
  Json out = Json::object();
  for (const auto& [t, weight] : w.weights) {
    Tuple tup = space.tuple(t);
    std::string key;
    if (m) {
      for (std::size_t i = 0; i < tup.size(); ++i) key += (i ? "," : "") + m->labels()[tup[i]];
    } else {
      key = tuple_key(tup);
    }
    out[key] = to_pq(weight);
  }
  return out;
}

Json type_to_json(const TypeVector& p, const FiniteStructure* m) {
  Json j{{"values", rationals_json(p.values)}};
  if (p.witness) j["witness"] = witness_to_json(*p.witness, m);
  return j;
}

Json hull_to_json(const TypeHull& hull) {
  Json verts = Json::array();
  for (const auto& v : hull.vertices) verts.push_back(rationals_json(v));
  Json j{{"vertices", verts}, {"first_order", hull.first_order}};
  if (!hull.representative.empty()) j["representatives"] = hull.representative;
  return j;
}

}  // namespace affine::io
