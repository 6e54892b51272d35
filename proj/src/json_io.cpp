#include "thomalab/json_io.hpp"

#include "thomalab/errors.hpp"

namespace thomalab {

Json permutation_to_json(const Permutation& p) {
  Json cycles = Json::array();
  for (const auto& c : cycle_decompose(p)) {
    Json pts = Json::array();
    for (int x : c.points()) pts.push_back(x);
    cycles.push_back(std::move(pts));
  }
  return Json{{"cycles", std::move(cycles)}};
}

Permutation permutation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("cycles") || !j["cycles"].is_array())
    throw ConfigError("permutation: expected {\"cycles\": [[...]]}");
  std::vector<std::vector<int>> cycles;
  for (const auto& c : j["cycles"]) {
    std::vector<int> pts;
    for (const auto& x : c) {
      if (!x.is_number_integer() || x.get<long>() < 0)
        throw ConfigError("permutation: points must be nonnegative integers");
      pts.push_back(x.get<int>());
    }
    cycles.push_back(std::move(pts));
  }
  return Permutation::from_cycles(cycles);
}

Json word_to_json(const GeneratorWord& w) {
  return Json{{"alphabet", w.alphabet == Alphabet::Star ? "star" : "coxeter"},
              {"letters", w.letters}};
}

GeneratorWord word_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("letters"))
    throw ConfigError("word: expected {\"alphabet\", \"letters\"}");
  GeneratorWord w;
  const std::string alphabet = j["alphabet"].get<std::string>();
  if (alphabet == "star")
    w.alphabet = Alphabet::Star;
  else if (alphabet == "coxeter")
    w.alphabet = Alphabet::Coxeter;
  else
    throw ConfigError("word: alphabet must be 'star' or 'coxeter'");
  for (const auto& l : j["letters"]) {
    if (!l.is_number_integer() || l.get<long>() < 0)
      throw ConfigError("word: letters must be nonnegative integers");
    w.letters.push_back(l.get<int>());
  }
  return w;
}

Json params_to_json(const ThomaParams& p) {
  Json a = Json::array(), b = Json::array();
  for (const auto& x : p.a) a.push_back(rat_to_string(x));
  for (const auto& x : p.b) b.push_back(rat_to_string(x));
  return Json{{"a", std::move(a)}, {"b", std::move(b)}, {"c", rat_to_string(p.c)}};
}

ThomaParams params_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("params: expected an object");
  std::vector<Rat> a, b;
  if (j.contains("a"))
    for (const auto& x : j["a"]) a.push_back(rat_from_string(x.get<std::string>()));
  if (j.contains("b"))
    for (const auto& x : j["b"]) b.push_back(rat_from_string(x.get<std::string>()));
  ThomaParams p;
  try {
    p = ThomaParams::make(std::move(a), std::move(b));
  } catch (const ContractError& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  if (j.contains("c") && rat_from_string(j["c"].get<std::string>()) != p.c)
    throw ConfigError("params: stated c does not match 1 - sum a - sum b");
  return p;
}

Json measure_to_json(const ThomaMeasure& m) {
  Json atoms = Json::array();
  for (const auto& [t, mass] : m.atoms)
    atoms.push_back(Json{{"t", rat_to_string(t)},
                         {"mass", rat_to_string(mass)},
                         {"multiplicity", rat_to_string(mass / rat_abs(t))}});
  return Json{{"atoms", std::move(atoms)}, {"zero_mass", rat_to_string(m.zero_mass)}};
}

ThomaMeasure measure_from_json(const Json& j) {
  ThomaMeasure m;
  if (j.contains("zero_mass")) m.zero_mass = rat_from_string(j["zero_mass"].get<std::string>());
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"]) {
      const Rat t = rat_from_string(a["t"].get<std::string>());
      if (t == 0) throw ConfigError("measure: atoms must sit at nonzero points");
      m.atoms[t] = rat_from_string(a["mass"].get<std::string>());
    }
  return m;
}

Json cycle_type_to_json(const CycleType& t) {
  Json j = Json::object();
  for (const auto& [k, mk] : t) j[std::to_string(k)] = mk;
  return j;
}

Json measure_report_to_json(const ThomaMeasureReport& report) {
  Json atoms = Json::array();
  for (const auto& a : report.atom_checks)
    atoms.push_back(Json{{"t", rat_to_string(a.t)},
                         {"mass", rat_to_string(a.mass)},
                         {"multiplicity", rat_to_string(a.multiplicity)},
                         {"integer_ratio", a.integer_ratio},
                         {"discreteness_bound", a.discreteness_bound}});
  return Json{{"ok", report.ok}, {"detail", report.detail}, {"atoms", std::move(atoms)}};
}

Json operator_to_json(const ModelOperator& x) {
  Json terms = Json::array();
  for (const auto& [key, coeff] : x.terms()) {
    Json diag = Json::object();
    for (const auto& [slot, values] : key.second) {
      Json vals = Json::array();
      for (const auto& v : values) vals.push_back(rat_to_string(v));
      diag[std::to_string(slot)] = std::move(vals);
    }
    terms.push_back(Json{{"coeff", rat_to_string(coeff)},
                         {"perm", permutation_to_json(key.first)},
                         {"diag", std::move(diag)}});
  }
  return Json{{"terms", std::move(terms)}};
}

ModelOperator operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms"))
    throw ConfigError("operator: expected {\"terms\": [...]}");
  ModelOperator out;
  for (const auto& term : j["terms"]) {
    const Rat coeff = rat_from_string(term.at("coeff").get<std::string>());
    const Permutation perm = permutation_from_json(term.at("perm"));
    ModelOperator::Diag diag;
    if (term.contains("diag"))
      for (const auto& [slot, values] : term["diag"].items()) {
        std::vector<Rat> vals;
        for (const auto& v : values) vals.push_back(rat_from_string(v.get<std::string>()));
        diag[std::stoi(slot)] = std::move(vals);
      }
    out += ModelOperator::monomial(coeff, perm, std::move(diag));
  }
  return out;
}

Json crat_to_json(const CRat& z) {
  if (z.is_real()) return Json(rat_to_string(z.re));
  return Json::array({rat_to_string(z.re), rat_to_string(z.im)});
}

CRat crat_from_json(const Json& j) {
  if (j.is_string()) return CRat(rat_from_string(j.get<std::string>()));
  if (j.is_array() && j.size() == 2)
    return CRat(rat_from_string(j[0].get<std::string>()),
                rat_from_string(j[1].get<std::string>()));
  throw ConfigError("scalar: expected \"p/q\" or [re, im]");
}

Json cmatrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& z : row) r.push_back(crat_to_json(z));
    rows.push_back(std::move(r));
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix: expected a nested array");
  CMatrix m;
  for (const auto& row : j) {
    std::vector<CRat> r;
    for (const auto& z : row) r.push_back(crat_from_json(z));
    m.push_back(std::move(r));
  }
  for (const auto& row : m)
    if (row.size() != m.size()) throw ConfigError("matrix: must be square");
  return m;
}

TracialAlgebra tracial_algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("density") || !j.contains("generators"))
    throw ConfigError("algebra: expected {\"density\", \"generators\"}");
  const CMatrix density = cmatrix_from_json(j["density"]);
  const int dim = static_cast<int>(density.size());
  if (j.contains("dim") && j["dim"].get<int>() != dim)
    throw ConfigError("algebra: stated dim does not match the density");
  std::vector<CMatrix> gens;
  for (const auto& g : j["generators"]) {
    CMatrix gen = cmatrix_from_json(g);
    if (static_cast<int>(gen.size()) != dim)
      throw ConfigError("algebra: generator size does not match the density");
    gens.push_back(std::move(gen));
  }
  return close_algebra(dim, gens, density);
}

Json commuting_square_report_to_json(const CommutingSquareReport& report) {
  Json conditions = Json::object();
  for (const auto& [item, ok] : report.checked_conditions) conditions[item] = ok;
  return Json{{"holds", report.holds},
              {"checked_conditions", std::move(conditions)},
              {"max_defect", rat_to_string(report.max_defect)}};
}

}  // namespace thomalab
