#pragma once

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "catalog.hpp"
#include "construct.hpp"

namespace g2nil {

using json = nlohmann::json;

// exact scalars travel as strings ("3/4", "1+sqrt(2)"), floats as numbers
template <class T>
json scalar_to_json(const T& x) {
  if constexpr (is_exact_v<T>) return str(x);
  else return x;
}

template <class T>
T scalar_from_json(const json& j, const std::map<std::string, T>& params = {}) {
  if (j.is_string()) return parse_scalar<T>(j.get<std::string>(), params);
  if (j.is_number_integer()) return T(static_cast<int>(j.get<long long>()));
  if (j.is_number()) {
    if constexpr (is_exact_v<T>) {
      std::ostringstream os;
      os.precision(17);
      os << j.get<double>();
      return parse_scalar<T>(os.str());
    } else {
      return j.get<double>();
    }
  }
  throw ParseError("expected a number or a numeric string, got " + j.dump());
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

template <class T>
Matrix<T> matrix_from_json(const json& a, const std::map<std::string, T>& params = {}) {
  if (!a.is_array() || a.empty() || !a[0].is_array()) throw ParseError("expected a matrix (array of rows)");
  int r = static_cast<int>(a.size()), c = static_cast<int>(a[0].size());
  Matrix<T> m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!a[i].is_array() || static_cast<int>(a[i].size()) != c) throw ParseError("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = scalar_from_json<T>(a[i][j], params);
  }
  return m;
}

// {"dim", "degree", "terms": [{"idx": [..], "num": "..", "den": ".."} | {"idx": [..], "val": x}]}
template <class T>
json form_to_json(const KForm<T>& f) {
  json terms = json::array();
  for (auto& [m, c] : f.terms()) {
    json t;
    t["idx"] = indices_of(m);
    if constexpr (std::is_same_v<T, Rational>) {
      t["num"] = numerator(c).str();
      t["den"] = denominator(c).str();
    } else {
      t["val"] = scalar_to_json(c);
    }
    terms.push_back(t);
  }
  return {{"dim", f.dim()}, {"degree", f.degree()}, {"terms", terms}};
}

template <class T>
KForm<T> form_from_json(const json& j) {
  try {
    int n = j.at("dim").get<int>(), k = j.at("degree").get<int>();
    KForm<T> f(n, k);
    for (auto& t : j.at("terms")) {
      auto idx = t.at("idx").get<std::vector<int>>();
      if (static_cast<int>(idx.size()) != k) throw ParseError("term degree does not match the form degree");
      T c;
      if (t.contains("num")) {
        T num = scalar_from_json<T>(t["num"]);
        T den = t.contains("den") ? scalar_from_json<T>(t["den"]) : T(1);
        if (is_zero(den)) throw ParseError("zero denominator");
        c = num / den;
      } else {
        c = scalar_from_json<T>(t.at("val"));
      }
      f += KForm<T>::monomial(n, idx, c);
    }
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("form JSON: ") + e.what());
  }
}

// {"name", "d": ["0", ..., "f12+f34"]} or {"dim", "d": [[{"idx": [1,2], "c": "1"}], ...]}
template <class T>
LieAlgebra<T> algebra_from_json(const json& j) {
  try {
    std::string name = j.value("name", std::string("custom"));
    const json& d = j.at("d");
    int n = j.contains("dim") ? j["dim"].get<int>() : static_cast<int>(d.size());
    if (static_cast<int>(d.size()) != n) throw ParseError("need one differential per basis covector");
    std::vector<KForm<T>> diffs;
    for (auto& dk : d) {
      if (dk.is_string()) {
        diffs.push_back(parse_form<T>(dk.get<std::string>(), n, 2));
        continue;
      }
      KForm<T> f(n, 2);
      for (auto& t : dk) {
        auto idx = t.at("idx").get<std::vector<int>>();
        if (idx.size() != 2) throw ParseError("structure equations are 2-forms");
        f += KForm<T>::monomial(n, idx, scalar_from_json<T>(t.at("c")));
      }
      diffs.push_back(f);
    }
    return LieAlgebra<T>(std::move(diffs), name);
  } catch (const json::exception& e) {
    throw ParseError(std::string("algebra JSON: ") + e.what());
  }
}

template <class T>
json algebra_to_json(const LieAlgebra<T>& L) {
  json d = json::array();
  for (auto& f : L.diffs()) {
    json terms = json::array();
    for (auto& [m, c] : f.terms()) terms.push_back({{"idx", indices_of(m)}, {"c", scalar_to_json(c)}});
    d.push_back(terms);
  }
  return {{"dim", L.dim()}, {"name", L.name()}, {"d", d}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
}

inline json catalog_entry_to_json(const CatalogEntry& e) {
  json j;
  j["id"] = e.id;
  j["latex"] = e.latex;
  j["aliases"] = e.aliases;
  j["d"] = e.d;
  j["structure"] = algebra_to_json(catalog_algebra<Rational>(e.id));
  j["derived_dim"] = e.derived_dim;
  j["decomposable"] = e.decomposable;
  j["admits_coclosed"] = e.admits_coclosed;
  j["admits_purely_coclosed"] = e.admits_purely_coclosed;
  j["nilsoliton_metric"] = matrix_to_json(nilsoliton_metric<Rational>(e.id));
  j["nilsoliton_purely_coclosed"] = e.nilsoliton_purely_coclosed;
  if (!e.family.params.empty())
    j["metric_family"] = {{"params", e.family.params}, {"domain", e.family.domain}, {"template", e.family.template_}};
  if (!e.coframe_B.empty()) j["test_coframes"] = {{"B", e.coframe_B}, {"C", e.coframe_C}};
  if (!e.example_coframe.empty()) j["example_coframe"] = e.example_coframe;
  return j;
}

inline json catalog_to_json() {
  json a = json::array();
  for (auto& e : catalog()) a.push_back(catalog_entry_to_json(e));
  return {{"entries", a}, {"expected_verdicts", [] {
             json v = json::array();
             for (auto& r : expected_verdicts())
               v.push_back({{"algebra", r.algebra}, {"metric", r.metric}, {"coclosed", r.coclosed},
                            {"purely_coclosed", r.purely}, {"group", r.tag}});
             return v;
           }()}};
}

inline json report_to_json(const CriterionReport& r) {
  json d = json::array();
  for (auto& x : r.diagnostics) {
    json dj{{"label", x.label}, {"lhs", x.lhs_str}, {"rhs", x.rhs_str}, {"holds", x.holds}};
    if (x.orientation != 0) dj["orientation"] = x.orientation;
    d.push_back(dj);
  }
  json w = json::object();
  if (!r.spectrum.empty()) w["spectrum"] = r.spectrum;
  if (!r.subspace.empty()) w["subspace"] = r.subspace;
  if (!r.rotation.empty()) w["rotation"] = r.rotation;
  json j{{"case", r.case_id}, {"exists", r.exists}, {"coclosed_possible", r.coclosed_possible},
         {"orientation", r.orientation}, {"witness", w}, {"diagnostics", d}, {"fallback", r.fallback}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json construction_to_json(const Construction& c) {
  json j{{"coframe", matrix_to_json(c.coframe)},
         {"coclosed", c.torsion.coclosed},
         {"purely_coclosed", c.torsion.purely_coclosed},
         {"dstar_residual", c.torsion.dstar_residual},
         {"tau0", c.torsion.tau0},
         {"metric_error", c.metric_error}};
  if (!c.block_values.empty()) j["block_values"] = c.block_values;
  return j;
}

}  // namespace g2nil
