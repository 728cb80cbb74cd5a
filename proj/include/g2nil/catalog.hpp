#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "expr.hpp"
#include "liealg.hpp"

namespace g2nil {

struct MetricFamilyInfo {
  std::vector<std::string> params;
  std::string domain;    // human-readable
  std::string template_; // symmetric-product form
};

struct CatalogEntry {
  std::string id;                    // ASCII slug, e.g. n7_3_B1
  std::string latex;                 // e.g. n_{7,3,B_1}
  std::vector<std::string> aliases;  // extra short names
  std::array<std::string, 7> d;      // d f^1 .. d f^7
  int derived_dim = 0;
  bool decomposable = false;
  bool admits_coclosed = true;
  bool admits_purely_coclosed = true;
  std::vector<std::string> nilsoliton_diag;  // diagonal of the nilsoliton metric
  bool nilsoliton_purely_coclosed = false;
  MetricFamilyInfo family;                   // empty params: no parametrized family
  std::vector<std::string> coframe_B, coframe_C;  // dim n' = 3 test coframes
  std::vector<std::string> example_coframe;       // parametrized purely coclosed coframe (families)
};

namespace detail {

inline std::array<std::string, 7> diffs(std::string d5, std::string d6, std::string d7) {
  return {"0", "0", "0", "0", std::move(d5), std::move(d6), std::move(d7)};
}

inline std::vector<std::string> rows_with(std::initializer_list<std::pair<int, std::string>> subs) {
  std::vector<std::string> r;
  for (int i = 1; i <= 7; ++i) r.push_back("f" + std::to_string(i));
  for (auto& [i, v] : subs) r[i - 1] = v;
  return r;
}

inline std::vector<std::string> ones(std::initializer_list<std::pair<int, std::string>> subs = {}) {
  std::vector<std::string> r(7, "1");
  for (auto& [i, v] : subs) r[i - 1] = v;
  return r;
}

inline std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  auto add = [&](CatalogEntry e) { c.push_back(std::move(e)); };

  // dim n' = 1
  {
    CatalogEntry e{"h3+R4", "h_3+R^4", {"h3R4"}, diffs("0", "0", "f12"), 1, true};
    e.admits_purely_coclosed = false;
    e.nilsoliton_diag = ones();
    e.family = {{"r"}, "r > 0", "r^2 f1f1 + f2f2 + ... + f7f7"};
    add(e);
  }
  {
    CatalogEntry e{"h5+R2", "h_5+R^2", {"h5R2"}, diffs("0", "0", "f12+f34"), 1, true};
    e.nilsoliton_diag = ones();
    e.nilsoliton_purely_coclosed = true;
    e.family = {{"r", "s"}, "0 < r <= s", "r^2 f1f1 + f2f2 + s^2 f3f3 + f4f4 + ... + f7f7"};
    add(e);
  }
  {
    CatalogEntry e{"h7", "h_7", {}, diffs("0", "0", "f12+f34+f56"), 1, false};
    e.nilsoliton_diag = ones();
    e.family = {{"r", "s", "t"}, "0 < r <= s <= t", "r^2 f1f1 + f2f2 + s^2 f3f3 + f4f4 + t^2 f5f5 + f6f6 + f7f7"};
    add(e);
  }
  // dim n' = 2
  {
    CatalogEntry e{"n5_2+R2", "n_{5,2}+R^2", {"n52"}, diffs("f12", "f13", "0"), 2, true};
    e.nilsoliton_diag = ones();
    e.nilsoliton_purely_coclosed = true;
    e.family = {{"E", "G"}, "0 < E <= G", "f1f1 + ... + f4f4 + E f5f5 + G f6f6 + f7f7"};
    e.example_coframe = {"f1", "f4", "f3", "f2", "sqrt(E)*f6", "sqrt(E)*f5", "f7"};
    add(e);
  }
  {
    CatalogEntry e{"h3+h3+R", "h_3+h_3+R", {"h3h3"}, diffs("f12", "f34", "0"), 2, true};
    e.nilsoliton_diag = ones();
    e.family = {{"a", "b", "E", "F", "G"},
                "0 <= a <= b < 1, E > 0, G > 0, EG - F^2 > 0",
                "f1f1 + f2f2 + f3f3 + f4f4 + 2a f1f3 + 2b f2f4 + E f5f5 + 2F f5f6 + G f6f6 + f7f7"};
    e.example_coframe = {"f1+a*f3",          "-sqrt(1-a^2)*f3", "f2+b*f4", "sqrt(1-b^2)*f4",
                         "sqrt(E)*f5+F/sqrt(E)*f6", "sqrt((E^2-F^2)/E)*f6", "f7"};
    add(e);
  }
  {
    CatalogEntry e{"h3C+R", "h_3^C+R", {"h3C"}, diffs("f13-f24", "f14+f23", "0"), 2, true};
    e.nilsoliton_diag = ones();
    e.nilsoliton_purely_coclosed = true;
    e.family = {{"r", "s", "E", "F", "G"},
                "0 < s <= r <= 1, E > 0, G > 0, EG - F^2 > 0",
                "f1f1 + r f2f2 + f3f3 + s f4f4 + E f5f5 + 2F f5f6 + G f6f6 + f7f7"};
    e.example_coframe = {"f1", "sqrt(r)*f2", "f3", "sqrt(s)*f4", "sqrt(E)*f5",
                         "sqrt(E)*(sqrt(r*s)+1)/(sqrt(r)+sqrt(s))*f6", "f7"};
    add(e);
  }
  {
    CatalogEntry e{"n6_2+R", "n_{6,2}+R", {"n62"}, diffs("f12", "f14+f23", "0"), 2, true};
    e.nilsoliton_diag = ones();
    e.family = {{"r", "E", "F", "G"},
                "0 < r <= 1, E > 0, G > 0, EG - F^2 > 0",
                "f1f1 + f2f2 + f3f3 + r f4f4 + E f5f5 + 2F f5f6 + G f6f6 + f7f7"};
    e.example_coframe = {"f1", "-f3", "f2", "sqrt(r)*f4", "sqrt(E*r)/(sqrt(r)+1)*f6", "-sqrt(E)*f5", "f7"};
    add(e);
  }
  {
    CatalogEntry e{"n7_2_A", "n_{7,2,A}", {"n72A"}, diffs("0", "f12", "f14+f35"), 2, false};
    e.admits_coclosed = false;
    e.admits_purely_coclosed = false;
    e.nilsoliton_diag = ones({{3, "1/2"}, {6, "2"}});
    add(e);
  }
  {
    CatalogEntry e{"n7_2_B", "n_{7,2,B}", {"n72B"}, diffs("0", "f12+f34", "f15+f23"), 2, false};
    e.admits_coclosed = false;
    e.admits_purely_coclosed = false;
    e.nilsoliton_diag = ones({{4, "1/2"}, {5, "1/2"}});
    add(e);
  }
  // dim n' = 3
  auto case3 = [&](std::string id, std::string latex, std::string alias, std::array<std::string, 3> d, bool decomp,
                   std::vector<std::string> nil, bool nil_purely, std::vector<std::string> b, std::vector<std::string> cc) {
    CatalogEntry e{std::move(id), std::move(latex), {std::move(alias)}, diffs(d[0], d[1], d[2]), 3, decomp};
    e.nilsoliton_diag = std::move(nil);
    e.nilsoliton_purely_coclosed = nil_purely;
    e.coframe_B = std::move(b);
    e.coframe_C = std::move(cc);
    add(e);
  };
  case3("n6_3+R", "n_{6,3}+R", "n63", {"f12", "f13", "f23"}, true, ones(), false, rows_with({}),
        rows_with({{5, "f6"}, {6, "2*f7"}, {7, "f5"}}));
  case3("n7_3_A", "n_{7,3,A}", "n73A", {"f12", "f23", "f24"}, false, ones(), false, rows_with({}),
        rows_with({{5, "f7"}, {6, "f6"}, {7, "2*f5"}}));
  case3("n7_3_B", "n_{7,3,B}", "n73B", {"f12", "f23", "f34"}, false, ones({{6, "1/2"}}), false,
        rows_with({{6, "f6/sqrt(2)"}}), rows_with({{5, "f5-f7"}, {6, "2*f6"}, {7, "f5+f7"}}));
  case3("n7_3_B1", "n_{7,3,B_1}", "n73B1", {"f12-f34", "f13+f24", "f14"}, false, ones(), false, rows_with({}),
        rows_with({{1, "-f1"}, {5, "f6"}, {6, "4*f7"}, {7, "f5"}}));
  case3("n7_3_C", "n_{7,3,C}", "n73C", {"f12+f34", "f23", "f24"}, false, ones(), true, rows_with({{7, "2*f7"}}),
        rows_with({{5, "f7"}, {6, "f6"}, {7, "f5"}}));
  case3("n7_3_D", "n_{7,3,D}", "n73D", {"f12+f34", "f13", "f24"}, false, ones({{5, "1/2"}}), true, rows_with({}),
        rows_with({{5, "(f7-f6)/sqrt(2)"}, {6, "(f7+f6)/sqrt(2)"}, {7, "f5/sqrt(2)"}}));
  case3("n7_3_D1", "n_{7,3,D_1}", "n73D1", {"f12-f34", "f13+f24", "f14-f23"}, false, ones(), true,
        rows_with({{1, "2*f1"}}), rows_with({}));
  return c;
}

// lower-case, drop spaces/braces/underscores/carets/commas, \oplus -> +, \mathbb{R} -> R
inline std::string normalize_name(std::string s) {
  auto replace_all = [&](const std::string& from, const std::string& to) {
    for (std::size_t p = 0; (p = s.find(from, p)) != std::string::npos; p += to.size()) s.replace(p, from.size(), to);
  };
  replace_all("\\oplus", "+");
  replace_all("\\mathbb{R}", "R");
  replace_all("\\mathfrak{h}", "h");
  replace_all("\\mathfrak{n}", "n");
  replace_all("\\mathbb{C}", "C");
  replace_all("\\mathbb C", "C");
  std::string out;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch)) || std::string_view("{}_^,").find(ch) != std::string_view::npos)
      continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = detail::build_catalog();
  return c;
}

inline const CatalogEntry& catalog_get(const std::string& name) {
  std::string key = detail::normalize_name(name);
  for (auto& e : catalog()) {
    if (detail::normalize_name(e.id) == key || detail::normalize_name(e.latex) == key) return e;
    for (auto& a : e.aliases)
      if (detail::normalize_name(a) == key) return e;
  }
  throw UnknownName("unknown algebra '" + name + "'");
}

inline std::vector<std::string> catalog_list() {
  std::vector<std::string> v;
  for (auto& e : catalog()) v.push_back(e.id);
  return v;
}

template <class T>
LieAlgebra<T> make_algebra(const std::array<std::string, 7>& d, const std::string& name) {
  std::vector<KForm<T>> f;
  for (auto& s : d) f.push_back(parse_form<T>(s, 7, 2));
  return LieAlgebra<T>(std::move(f), name);
}

template <class T>
LieAlgebra<T> catalog_algebra(const std::string& name) {
  const auto& e = catalog_get(name);
  return make_algebra<T>(e.d, e.id);
}

template <class T>
Matrix<T> nilsoliton_metric(const std::string& name) {
  const auto& e = catalog_get(name);
  std::vector<T> d;
  for (auto& s : e.nilsoliton_diag) d.push_back(parse_scalar<T>(s));
  return Matrix<T>::diag(d);
}

// rows: covector expressions in f1..f7; result row i = coefficients of e^i
template <class T>
Matrix<T> coframe_from_rows(const std::vector<std::string>& rows, const std::map<std::string, T>& params = {}) {
  if (rows.size() != 7) throw DimensionMismatch("a coframe needs 7 covectors");
  Matrix<T> c(7, 7);
  for (int i = 0; i < 7; ++i) {
    auto v = parse_covector<T>(rows[i], 7, params);
    for (int j = 0; j < 7; ++j) c(i, j) = v[j];
  }
  return c;
}

template <class T>
Matrix<T> catalog_coframe(const std::string& name, char which) {
  const auto& e = catalog_get(name);
  const auto& rows = which == 'B' ? e.coframe_B : e.coframe_C;
  if (rows.empty()) throw UnknownName("no test coframe " + std::string(1, which) + " for " + e.id);
  return coframe_from_rows<T>(rows);
}

template <class T>
Matrix<T> family_metric(const std::string& name, const std::map<std::string, T>& p) {
  const auto& e = catalog_get(name);
  if (e.family.params.empty()) throw UnknownName("no parametrized metric family for " + e.id);
  for (auto& [k, v] : p)
    if (std::find(e.family.params.begin(), e.family.params.end(), k) == e.family.params.end())
      throw OutOfDomain("unknown parameter '" + k + "' for " + e.id);
  auto get = [&](const std::string& k) -> T {
    auto it = p.find(k);
    if (it == p.end()) throw OutOfDomain("missing parameter '" + k + "' for " + e.id);
    return it->second;
  };
  auto sg = [](const T& x) { return scalar_traits<T>::sign(x); };
  auto need = [&](bool ok) {
    if (!ok) throw OutOfDomain("parameters outside " + e.family.domain + " for " + e.id);
  };
  auto le = [&](const T& a, const T& b) { return sg(T(b - a)) >= 0; };
  Matrix<T> g = Matrix<T>::identity(7);
  auto efg = [&] {
    T E = get("E"), F = get("F"), G = get("G");
    need(sg(E) > 0 && sg(G) > 0 && sg(T(E * G - F * F)) > 0);
    g(4, 4) = E, g(5, 5) = G, g(4, 5) = F, g(5, 4) = F;
  };
  const std::string& id = e.id;
  if (id == "h3+R4") {
    T r = get("r");
    need(sg(r) > 0);
    g(0, 0) = r * r;
  } else if (id == "h5+R2") {
    T r = get("r"), s = get("s");
    need(sg(r) > 0 && le(r, s));
    g(0, 0) = r * r, g(2, 2) = s * s;
  } else if (id == "h7") {
    T r = get("r"), s = get("s"), t = get("t");
    need(sg(r) > 0 && le(r, s) && le(s, t));
    g(0, 0) = r * r, g(2, 2) = s * s, g(4, 4) = t * t;
  } else if (id == "n5_2+R2") {
    T E = get("E"), G = get("G");
    need(sg(E) > 0 && le(E, G));
    g(4, 4) = E, g(5, 5) = G;
  } else if (id == "h3+h3+R") {
    T a = get("a"), b = get("b");
    need(sg(a) >= 0 && le(a, b) && sg(T(T(1) - b)) > 0);
    g(0, 2) = g(2, 0) = a;
    g(1, 3) = g(3, 1) = b;
    efg();
  } else if (id == "h3C+R") {
    T r = get("r"), s = get("s");
    need(sg(s) > 0 && le(s, r) && le(r, T(1)));
    g(1, 1) = r, g(3, 3) = s;
    efg();
  } else if (id == "n6_2+R") {
    T r = get("r");
    need(sg(r) > 0 && le(r, T(1)));
    g(3, 3) = r;
    efg();
  } else {
    throw UnknownName("no parametrized metric family for " + id);
  }
  return g;
}

// one row of the regression table; metric: identity | nilsoliton | coframe-B | coframe-C | "k=v,..."
struct VerdictRow {
  std::string algebra;
  std::string metric;
  bool coclosed;
  bool purely;
  std::string tag;  // group label, e.g. "nilsoliton"
};

inline std::vector<VerdictRow> expected_verdicts() {
  std::vector<VerdictRow> v = {
      {"h3+R4", "r=1", true, false, "family"},
      {"h3+R4", "r=3", true, false, "family"},
      {"h5+R2", "r=1,s=1", true, true, "family"},
      {"h5+R2", "r=2,s=2", true, true, "family"},
      {"h5+R2", "r=1/2,s=1", true, false, "family"},
      {"h7", "r=1,s=1,t=1", true, false, "family"},
      {"h7", "r=1,s=1,t=2", true, false, "family"},
      {"h7", "r=1/2,s=1,t=1", true, true, "family"},
      {"h7", "r=1,s=2,t=2", true, true, "family"},
      {"n5_2+R2", "E=1,G=1", true, true, "family"},
      {"n5_2+R2", "E=1,G=2", true, false, "family"},
      {"h3+h3+R", "a=0,b=0,E=1,F=0,G=1", true, false, "family"},
      {"h3+h3+R", "a=3/5,b=4/5,E=1,F=-24/25,G=1", true, true, "family"},
      {"h3C+R", "r=1,s=1,E=1,F=0,G=1", true, true, "family"},
      {"h3C+R", "r=1,s=1,E=2,F=1,G=3", true, true, "family"},
      {"h3C+R", "r=1/4,s=1/9,E=1,F=0,G=49/25", true, true, "family"},
      {"h3C+R", "r=1/4,s=1/9,E=1,F=0,G=25", true, true, "family"},
      {"h3C+R", "r=1/4,s=1/9,E=1,F=0,G=1", true, false, "family"},
      {"n6_2+R", "r=1,E=1,F=0,G=1/4", true, true, "family"},
      {"n6_2+R", "r=1/4,E=1,F=0,G=1/9", true, true, "family"},
      {"n6_2+R", "r=1/4,E=1,F=0,G=1", true, true, "family"},
      {"n6_2+R", "r=1,E=1,F=0,G=1", true, false, "family"},
      {"n7_2_A", "identity", false, false, "identity"},
      {"n7_2_B", "identity", false, false, "identity"},
      {"n6_3+R", "identity", true, false, "identity"},
      {"n7_3_A", "identity", true, false, "identity"},
      {"n7_3_B", "identity", true, false, "identity"},
      {"n7_3_B1", "identity", true, false, "identity"},
      {"n7_3_C", "identity", true, true, "identity"},
      {"n7_3_D", "identity", true, false, "identity"},
      {"n7_3_D1", "identity", true, true, "identity"},
  };
  for (auto& e : catalog()) {
    if (!e.coframe_B.empty()) {
      v.push_back({e.id, "coframe-B", true, false, "coframe"});
      v.push_back({e.id, "coframe-C", true, true, "coframe"});
    }
  }
  for (auto& e : catalog()) v.push_back({e.id, "nilsoliton", e.admits_coclosed, e.nilsoliton_purely_coclosed, "nilsoliton"});
  return v;
}

}  // namespace g2nil
