// g2nil: command-line front end. Exit codes: 0 ok, 1 regression failure, 2 parse error,
// 3 degenerate input, 4 unsupported algebra.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "g2nil/g2nil.hpp"

#ifndef G2NIL_DEFAULT_FIXTURES
#define G2NIL_DEFAULT_FIXTURES "fixtures"
#endif

namespace {

using namespace g2nil;

struct Globals {
  std::string mode = "exact";
  std::string format = "text";
  double tol = 0;
};

Mode mode_of(const Globals& g) { return g.mode == "float" ? Mode::Float : Mode::Exact; }

std::string fixtures_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("G2NIL_FIXTURES")) return env;
  return G2NIL_DEFAULT_FIXTURES;
}

// as given, else relative to the fixtures directory
std::string find_file(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  fs::path alt = fs::path(fixtures_dir("")) / fs::path(path).filename();
  if (fs::exists(alt)) return alt.string();
  throw ParseError("cannot open " + path);
}

std::string yes(bool b) { return b ? "true" : "false"; }

void print_matrix(const json& m, const std::string& indent) {
  for (auto& row : m) {
    std::cout << indent;
    for (std::size_t j = 0; j < row.size(); ++j)
      std::cout << (j ? " " : "") << (row[j].is_string() ? row[j].get<std::string>() : row[j].dump());
    std::cout << "\n";
  }
}

int cmd_verify(const Globals& g, const std::string& algebra, const std::string& coframe, const std::string& params) {
  auto alg = resolve_algebra(algebra);
  auto doc = read_json_file(find_file(coframe));
  auto r = verify(alg, doc, params, mode_of(g));
  if (g.format == "json") {
    std::cout << verify_to_json(r).dump(2) << "\n";
    return 0;
  }
  std::cout << "algebra: " << r.algebra << "\n"
            << "scalar: " << r.scalar << (r.fallback ? " (fallback)" : "") << "\n"
            << "coclosed: " << yes(r.coclosed) << "\n"
            << "tau0: " << r.tau0 << "\n"
            << "purely_coclosed: " << yes(r.purely_coclosed) << "\n"
            << "calibrates_derived: " << (r.calibrates_derived ? yes(*r.calibrates_derived) : "n/a") << "\n"
            << "induced_metric:\n";
  print_matrix(r.induced_metric, "  ");
  return 0;
}

int cmd_exists(const Globals& g, const std::string& algebra, const std::string& metric, const std::string& kind,
               bool construct) {
  auto alg = resolve_algebra(algebra);
  auto r = exists(alg, metric, parse_kind(kind), construct, mode_of(g));
  if (g.format == "json") {
    std::cout << exists_to_json(r).dump(2) << "\n";
    return 0;
  }
  const auto& rep = r.report;
  std::cout << "algebra: " << r.algebra << "\n"
            << "metric: " << r.metric << "\n"
            << "scalar: " << r.scalar << (r.fallback ? " (fallback)" : "") << "\n"
            << "case: " << rep.case_id << " (dim n' = " << r.derived_dim << ", dim a = " << r.a_dim << ")\n"
            << "kind: " << r.kind << "\n"
            << "exists: " << yes(rep.exists) << "\n";
  if (rep.orientation) std::cout << "orientation: " << (rep.orientation > 0 ? "+" : "-") << "\n";
  for (auto& d : rep.diagnostics) {
    std::cout << "diagnostic: " << d.label;
    if (d.orientation) std::cout << " [" << (d.orientation > 0 ? "+" : "-") << "]";
    std::cout << ": " << d.lhs_str << " vs " << d.rhs_str << (d.holds ? " (holds)" : " (fails)") << "\n";
  }
  if (!rep.spectrum.empty()) {
    std::cout << "witness spectrum:";
    for (double v : rep.spectrum) std::cout << " " << v;
    std::cout << "\n";
  }
  if (!rep.subspace.empty()) {
    std::cout << "witness 4-plane:\n";
    for (auto& v : rep.subspace) {
      std::cout << "  (";
      for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << v[i];
      std::cout << ")\n";
    }
  }
  if (!rep.rotation.empty()) {
    std::cout << "witness rotation:\n";
    for (auto& row : rep.rotation) {
      std::cout << " ";
      for (double v : row) std::cout << " " << v;
      std::cout << "\n";
    }
  }
  if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
  if (r.construction) {
    auto& c = *r.construction;
    std::cout << "construction: " << (r.witness_verified ? "verified" : "NOT verified")
              << " (d*phi residual " << c.torsion.dstar_residual << ", tau0 " << c.torsion.tau0 << ", metric error "
              << c.metric_error << ")\ncoframe:\n";
    print_matrix(matrix_to_json(c.coframe), "  ");
  } else if (!r.construct_error.empty()) {
    std::cout << "construction failed: " << r.construct_error << "\n";
  }
  return 0;
}

int cmd_regress(const Globals& g, const std::string& filter, const std::string& fixtures, unsigned threads) {
  auto s = regress(filter, fixtures_dir(fixtures), mode_of(g), threads);
  if (g.format == "json") {
    json a = json::array();
    for (auto& c : s.checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    std::cout << json{{"checks", a}, {"total", s.checks.size()}, {"failed", s.failed}}.dump(2) << "\n";
  } else {
    for (auto& c : s.checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.passed ? "" : ": " + c.detail) << "\n";
    if (s.failed == 0) std::cout << "all " << s.checks.size() << " checks passed\n";
    else std::cout << s.failed << " of " << s.checks.size() << " checks failed\n";
  }
  return s.failed == 0 ? 0 : 1;
}

int cmd_catalog_export(const Globals& g) {
  json j = catalog_to_json();
  if (g.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& e : catalog()) {
      std::cout << e.id << "  (" << e.latex << ")  dim n' = " << e.derived_dim << "\n";
      for (int k = 0; k < 7; ++k)
        if (e.d[k] != "0") std::cout << "  d f" << k + 1 << " = " << e.d[k] << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coclosed G2-structures on 2-step nilpotent Lie algebras"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--mode", g.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tolerance", g.tol, "float comparison tolerance (also G2NIL_TOLERANCE)");
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string algebra, coframe, params;
  auto* verify_cmd = app.add_subcommand("verify", "torsion of the G2-structure of a coframe");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--algebra", algebra, "catalog name, inline JSON or JSON file")->required();
  verify_cmd->add_option("--coframe", coframe, "JSON file with a \"coframe\" array")->required();
  verify_cmd->add_option("--param", params, "coframe parameters, e.g. a=1,b=1,c=-2");

  std::string metric = "identity", kind = "purely";
  bool construct = false;
  auto* exists_cmd = app.add_subcommand("exists", "decide existence for a metric");
  exists_cmd->fallthrough();
  exists_cmd->add_option("algebra", algebra, "catalog name, inline JSON or JSON file")->required();
  exists_cmd->add_option("--metric", metric,
                         "identity | nilsoliton | coframe-B | coframe-C | family parameters | JSON matrix or file");
  exists_cmd->add_option("--kind", kind, "coclosed or purely")->check(CLI::IsMember({"coclosed", "purely"}));
  exists_cmd->add_flag("--construct", construct, "build and re-verify a witness coframe");

  std::string filter, fixtures;
  unsigned threads = 0;
  auto* regress_cmd = app.add_subcommand("regress", "run the regression table and fixtures");
  regress_cmd->fallthrough();
  regress_cmd->add_option("--filter", filter, "case1 | case2 | case3 | substring of a check name");
  regress_cmd->add_option("--fixtures", fixtures, "fixtures directory");
  regress_cmd->add_option("--threads", threads, "worker threads (0: automatic)");

  auto* catalog_cmd = app.add_subcommand("catalog", "catalog access");
  catalog_cmd->fallthrough();
  catalog_cmd->require_subcommand(1);
  auto* export_cmd = catalog_cmd->add_subcommand("export", "dump all entries");
  export_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (g.tol > 0) set_tolerance(g.tol);
    if (*verify_cmd) return cmd_verify(g, algebra, coframe, params);
    if (*exists_cmd) return cmd_exists(g, algebra, metric, kind, construct);
    if (*regress_cmd) return cmd_regress(g, filter, fixtures, threads);
    if (*export_cmd) return cmd_catalog_export(g);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownName& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const OutOfDomain& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    // non-definite metrics, dependent coframes, size mismatches
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
