#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <thread>

#include "json_io.hpp"

namespace g2nil {

enum class Kind { Coclosed, Purely };

inline Kind parse_kind(const std::string& s) {
  if (s == "coclosed") return Kind::Coclosed;
  if (s == "purely") return Kind::Purely;
  throw ParseError("kind must be coclosed or purely, got '" + s + "'");
}

template <class T>
constexpr const char* scalar_name() {
  if constexpr (std::is_same_v<T, Rational>) return "rational";
  else if constexpr (std::is_same_v<T, Quadratic<2>>) return "rational+sqrt(2)";
  else return "float";
}

// Runs f.template operator()<T>() over Rational, then Q(sqrt 2), then double; the last one is the fallback.
template <class F>
auto run_tiered(Mode mode, F&& f) {
  if (mode == Mode::Float) return f.template operator()<double>();
  try {
    return f.template operator()<Rational>();
  } catch (const InexactValue&) {
  }
  try {
    return f.template operator()<Quadratic<2>>();
  } catch (const InexactValue&) {
  }
  auto r = f.template operator()<double>();
  r.fallback = true;
  return r;
}

// algebra given by catalog name, inline JSON or a JSON file
struct AlgebraInput {
  std::string label;
  std::optional<json> custom;
  const CatalogEntry* entry = nullptr;

  template <class T>
  LieAlgebra<T> make() const {
    if (custom) return algebra_from_json<T>(*custom);
    return make_algebra<T>(entry->d, entry->id);
  }
};

inline AlgebraInput resolve_algebra(const std::string& s) {
  AlgebraInput in;
  in.label = s;
  if (!s.empty() && s.front() == '{') {
    in.custom = parse_json_text(s);
  } else if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    in.custom = read_json_file(s);
  } else {
    in.entry = &catalog_get(s);
    in.label = in.entry->id;
    return in;
  }
  in.label = in.custom->value("name", std::string("custom"));
  return in;
}

template <class T>
Matrix<T> resolve_metric(const AlgebraInput& alg, const std::string& spec, int dim) {
  auto need_entry = [&] {
    if (!alg.entry) throw ParseError("metric '" + spec + "' needs a catalog algebra");
    return alg.entry;
  };
  if (spec == "identity") return Matrix<T>::identity(dim);
  if (spec == "nilsoliton") return nilsoliton_metric<T>(need_entry()->id);
  if (spec == "coframe-B" || spec == "coframe-C") {
    Matrix<T> c = catalog_coframe<T>(need_entry()->id, spec.back());
    return c.transpose() * c;
  }
  json j;
  if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) j = parse_json_text(spec);
  else if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") j = read_json_file(spec);
  if (!j.is_null()) {
    Matrix<T> g = matrix_from_json<T>(j.is_object() ? j.at("g") : j);
    if (g.rows() != dim || g.cols() != dim) throw DimensionMismatch("metric has the wrong size");
    if (!is_symmetric(g)) throw NotPositiveDefinite("metric is not symmetric");
    return g;
  }
  if (spec.find('=') != std::string::npos) return family_metric<T>(need_entry()->id, parse_params<T>(spec));
  throw ParseError("unrecognized metric '" + spec + "'");
}

// ---------- exists ----------

struct ExistsResult {
  std::string algebra, metric, kind, scalar;
  bool fallback = false;
  int derived_dim = 0, a_dim = 0;
  CriterionReport report;
  json metric_json;
  std::optional<Construction> construction;
  bool witness_verified = false;
  std::string construct_error;
};

inline ExistsResult exists(const AlgebraInput& alg, const std::string& metric, Kind kind, bool construct,
                           Mode mode = Mode::Exact) {
  auto res = run_tiered(mode, [&]<class T>() {
    ExistsResult r;
    auto L = alg.make<T>();
    Matrix<T> g = resolve_metric<T>(alg, metric, L.dim());
    auto D = decompose(L, g);
    r.scalar = scalar_name<T>();
    r.derived_dim = D.derived_dim();
    r.a_dim = D.a_dim();
    r.metric_json = matrix_to_json(g);
    r.report = kind == Kind::Purely ? purely_exists(D, L, g) : coclosed_exists(D);
    if (construct && r.report.exists) {
      try {
        Construction c = kind == Kind::Purely ? construct_purely(D, L, g, r.report) : construct_coclosed(D, L, g);
        double tol = std::max(tolerance(), 1e-9);
        r.witness_verified = c.torsion.dstar_residual <= tol * (1 + L.max_constant()) && c.metric_error <= tol &&
                             (kind == Kind::Coclosed || c.torsion.tau0_residual <= tol * (1 + L.max_constant()));
        r.construction = std::move(c);
      } catch (const Error& e) {
        r.construct_error = e.what();
      }
    }
    return r;
  });
  res.algebra = alg.label;
  res.metric = metric;
  res.kind = kind == Kind::Purely ? "purely" : "coclosed";
  res.report.fallback = res.fallback;
  return res;
}

inline json exists_to_json(const ExistsResult& r) {
  json j = report_to_json(r.report);
  j["algebra"] = r.algebra;
  j["metric"] = r.metric;
  j["kind"] = r.kind;
  j["scalar"] = r.scalar;
  j["derived_dim"] = r.derived_dim;
  j["a_dim"] = r.a_dim;
  j["metric_matrix"] = r.metric_json;
  if (r.construction) {
    j["construction"] = construction_to_json(*r.construction);
    j["construction"]["verified"] = r.witness_verified;
  }
  if (!r.construct_error.empty()) j["construction_error"] = r.construct_error;
  return j;
}

// ---------- verify ----------

struct VerifyResult {
  std::string algebra, scalar;
  bool fallback = false;
  bool coclosed = false, purely_coclosed = false;
  std::string tau0;
  double dstar_residual = 0;
  std::optional<bool> calibrates_derived;
  json induced_metric;
};

// coframe document: {"coframe": [7 covector expressions | 7 numeric rows], "params": [names]}
inline VerifyResult verify(const AlgebraInput& alg, const json& doc, const std::string& params, Mode mode = Mode::Exact) {
  if (!doc.is_object() || !doc.contains("coframe") || !doc["coframe"].is_array())
    throw ParseError("coframe file needs a \"coframe\" array");
  auto res = run_tiered(mode, [&]<class T>() {
    VerifyResult r;
    auto L = alg.make<T>();
    if (L.dim() != 7) throw DimensionMismatch("verify needs a 7-dimensional algebra");
    auto p = parse_params<T>(params);
    for (auto& name : doc.value("params", std::vector<std::string>{}))
      if (!p.count(name)) throw ParseError("missing value for coframe parameter '" + name + "'");
    const json& rows = doc["coframe"];
    Matrix<T> c;
    if (rows.size() == 7 && rows[0].is_string()) {
      c = coframe_from_rows<T>(rows.get<std::vector<std::string>>(), p);
    } else {
      c = matrix_from_json<T>(rows, p);
      if (c.rows() != 7 || c.cols() != 7) throw DimensionMismatch("coframe must be 7 x 7");
    }
    auto s = phi_from_coframe(c);
    auto t = torsion_class(s, L);
    r.scalar = scalar_name<T>();
    r.coclosed = t.coclosed;
    r.purely_coclosed = t.purely_coclosed;
    r.tau0 = str(t.tau0);
    r.dstar_residual = t.dstar_residual;
    r.induced_metric = matrix_to_json(s.metric);
    if (is_two_step(L)) {
      Matrix<T> nd = derived_algebra(L);
      if (nd.cols() == 3) r.calibrates_derived = calibrates(s, nd).calibrated;
    }
    return r;
  });
  res.algebra = alg.label;
  return res;
}

inline json verify_to_json(const VerifyResult& r) {
  json j{{"algebra", r.algebra},      {"scalar", r.scalar},   {"fallback", r.fallback},
         {"coclosed", r.coclosed},    {"tau0", r.tau0},       {"purely_coclosed", r.purely_coclosed},
         {"dstar_residual", r.dstar_residual}, {"induced_metric", r.induced_metric}};
  j["calibrates_derived"] = r.calibrates_derived ? json(*r.calibrates_derived) : json(nullptr);
  return j;
}

// ---------- regress ----------

struct Check {
  std::string name;
  int derived_dim = 0;
  bool passed = false;
  std::string detail;
};

namespace detail {

template <class T>
std::string compare_matrix(const std::string& what, const Matrix<T>& got, const json& want) {
  Matrix<T> w = matrix_from_json<T>(want);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!same_value(got(i, j), w(i, j)))
        return what + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + str(got(i, j)) +
               ", expected " + str(w(i, j));
  return {};
}

template <class T>
std::string compare_scalar(const std::string& what, const T& got, const json& want) {
  T w = scalar_from_json<T>(want);
  if (same_value(got, w)) return {};
  return what + " = " + str(got) + ", expected " + str(w);
}

struct Mismatches {
  std::vector<std::string> items;
  bool fallback = false;
};

template <class T>
Mismatches check_case3_coframe(const LieAlgebra<T>& L, const json& want) {
  Mismatches out;
  auto add = [&](std::string s) {
    if (!s.empty()) out.items.push_back(std::move(s));
  };
  Matrix<T> c = coframe_from_rows<T>(want.at("rows").get<std::vector<std::string>>());
  auto m = coframe_matrices(L, c);
  add(compare_matrix("M", m.M, want.at("M")));
  add(compare_matrix("S_plus", m.S_plus, want.at("S_plus")));
  add(compare_matrix("S_minus", m.S_minus, want.at("S_minus")));
  add(compare_scalar("tr^2(S_plus)", m.tr2_plus, want.at("tr2_plus")));
  add(compare_scalar("2tr(S_plus^2)", m.twotr_plus, want.at("twotr_plus")));
  add(compare_scalar("tr^2(S_minus)", m.tr2_minus, want.at("tr2_minus")));
  add(compare_scalar("2tr(S_minus^2)", m.twotr_minus, want.at("twotr_minus")));
  auto t = torsion_class(phi_from_coframe(c), L);
  add(compare_scalar("tau0", t.tau0, want.at("tau0")));
  if (t.coclosed != want.at("coclosed").get<bool>()) add("coclosed verdict differs");
  if (t.purely_coclosed != want.at("purely_coclosed").get<bool>()) add("purely coclosed verdict differs");
  return out;
}

template <class T>
Mismatches check_abc(const LieAlgebra<T>& L, const json& doc) {
  Mismatches out;
  auto rows = doc.at("coframe").get<std::vector<std::string>>();
  for (auto triple : {"a=1,b=1,c=-2", "a=1,b=2,c=3", "a=-1/2,b=3,c=-5/2", "a=2,b=-1,c=1"}) {
    auto p = parse_params<T>(triple);
    auto t = torsion_class(phi_from_coframe(coframe_from_rows<T>(rows, p)), L);
    T want = parse_scalar<T>(doc.at("tau0").get<std::string>(), p);
    if (t.coclosed != doc.at("coclosed").get<bool>()) out.items.push_back(std::string(triple) + ": coclosed differs");
    if (!same_value(t.tau0, want))
      out.items.push_back(std::string(triple) + ": tau0 = " + str(t.tau0) + ", expected " + str(want));
  }
  return out;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

inline Check verdict_check(const VerdictRow& row, Mode mode) {
  Check c;
  c.name = "verdict " + row.algebra + " [" + row.metric + "]";
  c.derived_dim = catalog_get(row.algebra).derived_dim;
  auto alg = resolve_algebra(row.algebra);
  std::vector<std::string> bad;
  auto co = exists(alg, row.metric, Kind::Coclosed, false, mode);
  if (co.report.exists != row.coclosed) bad.push_back("coclosed: got " + std::string(co.report.exists ? "yes" : "no"));
  auto pu = exists(alg, row.metric, Kind::Purely, row.purely, mode);
  if (pu.report.exists != row.purely) bad.push_back("purely: got " + std::string(pu.report.exists ? "yes" : "no"));
  if (row.purely && pu.report.exists && !pu.witness_verified)
    bad.push_back("witness not verified" + (pu.construct_error.empty() ? "" : ": " + pu.construct_error));
  c.passed = bad.empty();
  c.detail = join(bad);
  return c;
}

inline Check catalog_check(const CatalogEntry& e) {
  Check c;
  c.name = "catalog " + e.id;
  c.derived_dim = e.derived_dim;
  std::vector<std::string> bad;
  auto L = catalog_algebra<Rational>(e.id);
  if (!d_squared_vanishes(L)) bad.push_back("d^2 != 0");
  if (!is_two_step(L)) bad.push_back("not 2-step");
  if (derived_algebra(L).cols() != e.derived_dim) bad.push_back("derived algebra dimension");
  if (!is_nilsoliton(L, nilsoliton_metric<Rational>(e.id)).verdict) bad.push_back("nilsoliton metric rejected");
  c.passed = bad.empty();
  c.detail = join(bad);
  return c;
}

inline Check fixture_check(const std::filesystem::path& file, const std::string& label, Mode mode) {
  Check c;
  c.name = "fixture " + file.filename().string() + (label.empty() ? "" : ":" + label);
  c.derived_dim = 3;
  try {
    json doc = read_json_file(file.string());
    AlgebraInput alg = resolve_algebra(doc.at("algebra").get<std::string>());
    c.derived_dim = alg.entry->derived_dim;
    auto m = run_tiered(mode, [&]<class T>() {
      auto L = alg.make<T>();
      if (label.empty()) return check_abc(L, doc);
      return check_case3_coframe(L, doc.at("coframes").at(label));
    });
    c.passed = m.items.empty();
    c.detail = join(m.items);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = e.what();
  }
  return c;
}

inline bool filter_match(const Check& c, const std::string& filter) {
  if (filter.empty()) return true;
  if (filter.size() == 5 && filter.rfind("case", 0) == 0) return c.derived_dim == filter[4] - '0';
  return c.name.find(filter) != std::string::npos;
}

}  // namespace detail

struct RegressSummary {
  std::vector<Check> checks;
  int failed = 0;
};

// all checks independent; results kept in row order whatever the completion order
inline RegressSummary regress(const std::string& filter, const std::string& fixtures_dir, Mode mode = Mode::Exact,
                              unsigned threads = 0) {
  std::vector<std::function<Check()>> jobs;
  std::vector<Check> heads;  // name and dim, known before running
  auto push = [&](std::string name, int dim, std::function<Check()> f) {
    Check head{std::move(name), dim};
    if (!detail::filter_match(head, filter)) return;
    heads.push_back(std::move(head));
    jobs.push_back(std::move(f));
  };
  for (auto& e : catalog()) push("catalog " + e.id, e.derived_dim, [&e] { return detail::catalog_check(e); });
  for (auto& row : expected_verdicts())
    push("verdict " + row.algebra + " [" + row.metric + "]", catalog_get(row.algebra).derived_dim,
         [row, mode] { return detail::verdict_check(row, mode); });
  std::vector<std::filesystem::path> files;
  if (!fixtures_dir.empty() && std::filesystem::is_directory(fixtures_dir))
    for (auto& f : std::filesystem::directory_iterator(fixtures_dir))
      if (f.path().extension() == ".json") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  for (auto& f : files) {
    std::string base = f.filename().string();
    if (base.rfind("case3_", 0) == 0) {
      for (std::string label : {"B", "C"})
        push("fixture " + base + ":" + label, 3, [f, label, mode] { return detail::fixture_check(f, label, mode); });
    } else if (base == "example_abc.json") {
      push("fixture " + base, 3, [f, mode] { return detail::fixture_check(f, "", mode); });
    }
  }

  RegressSummary s;
  s.checks.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  unsigned n = threads ? threads : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        s.checks[i] = jobs[i]();
      } catch (const std::exception& e) {
        s.checks[i] = heads[i];
        s.checks[i].detail = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& c : s.checks) s.failed += c.passed ? 0 : 1;
  return s;
}

}  // namespace g2nil
