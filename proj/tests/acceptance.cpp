// Acceptance checks. One PASS/FAIL line per criterion; `acceptance N` runs criterion N only.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include "g2nil/g2nil.hpp"

using namespace g2nil;
using Q = Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string join(const std::vector<std::string>& v, std::size_t limit = 12) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? "; " : "") + v[i];
  if (v.size() > limit) s += "; ... (" + std::to_string(v.size()) + " total)";
  return s;
}

Q random_rational(std::mt19937& rng, int num = 20, int den = 9) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  int a = 0;
  while (a == 0) a = n(rng);
  return Q(a, d(rng));
}

// C = I + U/4 with small rational U: g = C^T C is exactly positive definite when det C != 0
Matrix<Q> random_coframe(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> u(-4, 4);
  for (;;) {
    Matrix<Q> c = Matrix<Q>::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) += Q(u(rng), 16);
    if (det(c) != 0) return c;
  }
}

KForm<Q> random_form(std::mt19937& rng, int n, int k) {
  std::uniform_int_distribution<int> u(-5, 5);
  KForm<Q> f(n, k);
  for (Mask m : combinations(n, k)) f.add(m, Q(u(rng)));
  return f;
}

// ---------- 1 ----------

Outcome standard_form_round_trip() {
  Outcome o;
  // the adapted expressions, written out independently of the library's constants
  auto phi = parse_form<Q>("f127 + f347 + f567 + f135 - f146 - f236 - f245", 7, 3);
  auto psi = parse_form<Q>("f1234 + f1256 + f3456 + f1367 + f1457 + f2357 - f2467", 7, 4);
  if (!(phi == phi_standard<Q>())) o.pass = false, o.detail += "standard 3-form differs; ";
  std::vector<double> times;
  G2Structure<Q> s;
  for (int i = 0; i < 21; ++i) {
    auto t0 = Clock::now();
    s = g2_from_form(phi);
    times.push_back(seconds_since(t0));
  }
  std::sort(times.begin(), times.end());
  bool metric = s.metric == Matrix<Q>::identity(7), vol = s.volume == Q(1), star = s.star_phi == psi;
  o.pass = o.pass && metric && vol && star && times[10] < 1e-3;
  o.detail += std::string("metric ") + (metric ? "= I" : "!= I") + ", volume " + str(s.volume) + ", *phi " +
              (star ? "matches" : "differs") + ", median time " + fmt(times[10] * 1e3) + " ms";
  return o;
}

// ---------- 2 ----------

struct Case3Reference {
  std::string id;
  std::array<std::string, 9> s_plus_b, s_minus_b, m_c;
  std::array<std::string, 4> traces;  // tr^2 S+, 2 tr S+^2, tr^2 S-, 2 tr S-^2 ("" where not displayed)
};

const std::array<std::string, 9> half_id{"1/2", "0", "0", "0", "1/2", "0", "0", "0", "1/2"};

std::vector<Case3Reference> case3_reference() {
  return {
      {"n6_3+R", half_id, half_id, {"1", "0", "0", "0", "-2", "0", "0", "0", "1"}, {"", "", "", ""}},
      {"n7_3_A", half_id, half_id, {"-1", "0", "0", "0", "-1", "0", "0", "0", "2"}, {"", "", "", ""}},
      {"n7_3_B",
       {"1/2", "0", "1/2", "0", "1/4", "0", "1/2", "0", "1/2"},
       {"1/2", "0", "-1/2", "0", "1/4", "0", "-1/2", "0", "1/2"},
       {"0", "0", "0", "0", "-2", "0", "0", "0", "2"},
       {"25/16", "17/8", "25/16", "17/8"}},
      {"n7_3_B1",
       {"0", "0", "0", "0", "0", "0", "0", "0", "1/2"},
       {"2", "0", "0", "0", "2", "0", "0", "0", "1/2"},
       {"-2", "0", "0", "0", "4", "0", "0", "0", "-2"},
       {"1/4", "1/2", "25/4", "17/2"}},
      {"n7_3_C",
       {"2", "0", "0", "0", "1/2", "0", "0", "0", "1"},
       {"0", "0", "0", "0", "1/2", "0", "0", "0", "1"},
       {"-1", "0", "0", "0", "-1", "0", "0", "0", "2"},
       {"49/4", "21/2", "9/4", "9/2"}},
      {"n7_3_D",
       {"2", "0", "0", "0", "1/2", "-1/2", "0", "-1/2", "1/2"},
       {"0", "0", "0", "0", "1/2", "1/2", "0", "1/2", "1/2"},
       {"-sqrt(2)", "0", "0", "0", "0", "0", "0", "0", "sqrt(2)"},
       {"9", "10", "1", "2"}},
      {"n7_3_D1",
       {"1/8", "0", "0", "0", "1/8", "0", "0", "0", "1/8"},
       {"9/2", "0", "0", "0", "9/2", "0", "0", "0", "9/2"},
       {"0", "0", "0", "0", "0", "0", "0", "0", "0"},
       {"", "", "", ""}},
  };
}

struct Compared {
  std::vector<std::string> mismatches;
  int count = 0;
  bool fallback = false;
};

Outcome case3_reference_matrices() {
  Outcome o;
  std::vector<std::string> bad;
  int compared = 0;
  for (auto& ref : case3_reference()) {
    auto res = run_tiered(Mode::Exact, [&]<class T>() {
      Compared res;
      auto& out = res.mismatches;
      int& n = res.count;
      auto L = catalog_algebra<T>(ref.id);
      auto mb = coframe_matrices(L, catalog_coframe<T>(ref.id, 'B'));
      auto mc = coframe_matrices(L, catalog_coframe<T>(ref.id, 'C'));
      auto cmp = [&](const std::string& what, const T& got, const std::string& want) {
        if (want.empty()) return;
        ++n;
        if (!(got == parse_scalar<T>(want))) out.push_back(ref.id + " " + what + " = " + str(got) + ", reference " + want);
      };
      auto cmp_m = [&](const std::string& what, const Matrix<T>& m, const std::array<std::string, 9>& want) {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            cmp(what + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", m(i, j), want[3 * i + j]);
      };
      cmp_m("S+^B", mb.S_plus, ref.s_plus_b);
      cmp_m("S-^B", mb.S_minus, ref.s_minus_b);
      cmp_m("M^C", mc.M, ref.m_c);
      cmp("tr^2(S+^B)", mb.tr2_plus, ref.traces[0]);
      cmp("2tr(S+^B)^2", mb.twotr_plus, ref.traces[1]);
      cmp("tr^2(S-^B)", mb.tr2_minus, ref.traces[2]);
      cmp("2tr(S-^B)^2", mb.twotr_minus, ref.traces[3]);
      return res;
    });
    if (res.fallback) bad.push_back(ref.id + ": exact evaluation failed");
    bad.insert(bad.end(), res.mismatches.begin(), res.mismatches.end());
    compared += res.count;
  }
  o.pass = bad.empty();
  o.detail = std::to_string(compared) + " reference values compared exactly";
  if (!bad.empty()) o.detail += ", " + std::to_string(bad.size()) + " differ: " + join(bad, 20);
  return o;
}

// ---------- 3 ----------

Outcome global_purely_verdict() {
  Outcome o;
  // known-good metrics for algebras where the identity metric is not purely coclosed
  std::map<std::string, std::vector<std::string>> alternatives = {
      {"h7", {"r=1/2,s=1,t=1"}},
      {"h3+h3+R", {"a=3/5,b=4/5,E=1,F=-24/25,G=1"}},
      {"n6_2+R", {"r=1,E=1,F=0,G=1/4"}},
  };
  std::vector<std::string> none, bad;
  for (auto& e : catalog()) {
    std::vector<std::string> tries{"identity"};
    if (e.derived_dim == 3) tries.push_back("coframe-C");
    for (auto& a : alternatives[e.id]) tries.push_back(a);
    bool found = false;
    for (auto& m : tries) {
      auto r = exists(resolve_algebra(e.id), m, Kind::Purely, true, Mode::Exact);
      if (!r.report.exists) continue;
      if (!r.witness_verified) bad.push_back(e.id + " [" + m + "]: witness not verified");
      found = true;
      break;
    }
    if (!found) none.push_back(e.id);
  }
  std::vector<std::string> want{"h3+R4", "n7_2_A", "n7_2_B"};
  o.pass = none == want && bad.empty();
  o.detail = std::to_string(catalog().size()) + " algebras; no purely coclosed structure found for: " + join(none);
  if (!bad.empty()) o.detail += "; " + join(bad);
  return o;
}

// ---------- 4 ----------

Outcome case1_heisenberg_family() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937 rng(20261016);
  std::uniform_real_distribution<double> us(0.2, 3.0), ut(0.0, 2.0), u01(0.05, 1.0);
  auto L = catalog_algebra<double>("h7");
  int agree = 0, built = 0;
  double worst = 0;
  std::vector<std::string> bad;
  for (int i = 0; i < 1000; ++i) {
    double s = us(rng), t = s + ut(rng);
    double r = i % 2 == 0 ? s * t / (s + t) : s * u01(rng);
    std::map<std::string, double> p{{"r", r}, {"s", s}, {"t", t}};
    auto g = family_metric<double>("h7", p);
    bool closed = std::abs(1 / r - 1 / s - 1 / t) <= 1e-9 / r;
    auto D = decompose(L, g);
    auto rep = case1_exists(D, L, g);
    if (rep.exists == closed) ++agree;
    else bad.push_back("r=" + fmt(r) + " s=" + fmt(s) + " t=" + fmt(t));
    if (rep.exists) {
      auto c = construct_case1(D, L, g);
      double res = std::max({c.torsion.dstar_residual, c.torsion.tau0_residual, c.metric_error});
      worst = std::max(worst, res);
      ++built;
    }
  }
  double dt = seconds_since(t0);
  o.pass = agree == 1000 && worst < 1e-9 && built >= 400 && dt < 5;
  o.detail = std::to_string(agree) + "/1000 agree, " + std::to_string(built) + " witnesses, max residual " + fmt(worst) +
             ", " + fmt(dt) + " s";
  if (!bad.empty()) o.detail += "; disagreements: " + join(bad);
  return o;
}

// ---------- 5 ----------

struct FamilyDraw {
  std::map<std::string, double> p;
  bool closed;
};

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * (1 + std::abs(a) + std::abs(b)); }

FamilyDraw draw_h3c(std::mt19937& rng, bool on) {
  std::uniform_real_distribution<double> u(0.05, 1.0), ue(0.2, 3.0), uf(-1, 1);
  std::uniform_int_distribution<int> branch(0, 2);
  double r = u(rng), s = u(rng), E = ue(rng), F = 0, G = ue(rng);
  if (s > r) std::swap(r, s);
  auto kp = [&] { return std::pow((std::sqrt(r * s) + 1) / (std::sqrt(r) + std::sqrt(s)), 2); };
  auto km = [&] { return std::pow((std::sqrt(r * s) - 1) / (std::sqrt(r) - std::sqrt(s)), 2); };
  if (on) {
    int b = branch(rng);
    if (b == 0) {
      r = s = 1;
      F = 0.9 * std::sqrt(E * G) * uf(rng);
    } else if (b == 1) {
      G = E * kp();
    } else {
      if (r - s < 0.05) s = r / 2;
      G = E * km();
    }
  } else {
    F = 0.9 * std::sqrt(E * G) * uf(rng);
  }
  bool closed = (r == 1 && s == 1) ||
                (near(F, 0) && (near(G, E * kp()) || (r - s > 1e-9 && near(G, E * km()))));
  return {{{"r", r}, {"s", s}, {"E", E}, {"F", F}, {"G", G}}, closed};
}

FamilyDraw draw_h3h3(std::mt19937& rng, bool on) {
  std::uniform_real_distribution<double> u(0.0, 0.98), ue(0.2, 3.0), uf(-1, 1);
  double a = u(rng), b = u(rng), E = ue(rng), G = ue(rng), F = 0.9 * std::sqrt(E * G) * uf(rng);
  if (a > b) std::swap(a, b);
  auto c = [&](int sg) { return a * b + sg * std::sqrt((1 - a * a) * (1 - b * b)); };
  if (on) {
    int sg = rng() % 2 ? 1 : -1;
    if (c(sg) * c(sg) > 0.99) sg = -sg;
    if (c(sg) * c(sg) > 0.99) a = 0.3, b = 0.6;
    G = E;
    F = -E * c(sg);
  }
  bool closed = false;
  for (int sg : {1, -1})
    closed = closed || (c(sg) * c(sg) < 1 && near(G, E) && near(F, -E * c(sg)));
  return {{{"a", a}, {"b", b}, {"E", E}, {"F", F}, {"G", G}}, closed};
}

FamilyDraw draw_n62(std::mt19937& rng, bool on) {
  std::uniform_real_distribution<double> u(0.05, 1.0), ue(0.2, 3.0), uf(-1, 1);
  double r = u(rng), E = ue(rng), G = ue(rng), F = 0.9 * std::sqrt(E * G) * uf(rng);
  auto kp = [&] { return r / std::pow(std::sqrt(r) + 1, 2); };
  auto km = [&] { return r / std::pow(std::sqrt(r) - 1, 2); };
  if (on) {
    F = 0;
    if (rng() % 2) G = E * kp();
    else r = std::min(r, 0.95), G = E * km();
  }
  bool closed = near(F, 0) && (near(G, E * kp()) || (r < 1 && near(G, E * km())));
  return {{{"r", r}, {"E", E}, {"F", F}, {"G", G}}, closed};
}

FamilyDraw draw_n52(std::mt19937& rng, bool on) {
  std::uniform_real_distribution<double> ue(0.2, 3.0), ud(0.01, 3.0);
  double E = ue(rng), G = on ? E : E + ud(rng);
  return {{{"E", E}, {"G", G}}, near(G, E)};
}

Outcome case2_families() {
  Outcome o;
  std::mt19937 rng(5005);
  std::vector<std::pair<std::string, std::function<FamilyDraw(std::mt19937&, bool)>>> fams = {
      {"h3C+R", draw_h3c}, {"h3+h3+R", draw_h3h3}, {"n6_2+R", draw_n62}, {"n5_2+R2", draw_n52}};
  std::vector<std::string> bad, counts;
  for (auto& [id, draw] : fams) {
    auto L = catalog_algebra<double>(id);
    int positives = 0, disagree = 0;
    for (int i = 0; i < 500; ++i) {
      auto d = draw(rng, i % 2 == 0);
      auto g = family_metric<double>(id, d.p);
      auto rep = case2_exists(decompose(L, g), L, g);
      positives += rep.exists;
      if (rep.exists != d.closed) {
        ++disagree;
        std::string s = id + " {";
        for (auto& [k, v] : d.p) s += k + "=" + fmt(v) + " ";
        bad.push_back(s + "} closed form " + (d.closed ? "yes" : "no"));
      }
    }
    counts.push_back(id + " " + std::to_string(500 - disagree) + "/500 (" + std::to_string(positives) + " admit)");
  }
  o.pass = bad.empty();
  o.detail = join(counts);
  if (!bad.empty()) o.detail += "; disagreements: " + join(bad);
  return o;
}

// ---------- 6 ----------

Outcome nilsoliton_rows() {
  Outcome o;
  std::vector<std::string> bad;
  for (auto& e : catalog())
    if (!is_nilsoliton(catalog_algebra<Q>(e.id), nilsoliton_metric<Q>(e.id)).verdict)
      bad.push_back(e.id + ": nilsoliton metric rejected");
  // purely coclosed structures inducing the nilsoliton metric
  std::vector<std::pair<std::string, bool>> rows = {
      {"h5+R2", true},   {"h7", false},      {"h3C+R", true},   {"n5_2+R2", true},  {"h3+h3+R", false},
      {"n6_2+R", false}, {"n7_3_C", true},   {"n7_3_D", true},  {"n7_3_D1", true},  {"n6_3+R", false},
      {"n7_3_A", false}, {"n7_3_B", false},  {"n7_3_B1", false},
  };
  for (auto& [id, want] : rows) {
    auto r = exists(resolve_algebra(id), "nilsoliton", Kind::Purely, want, Mode::Exact);
    if (r.report.exists != want) bad.push_back(id + ": got " + (r.report.exists ? "yes" : "no"));
    else if (want && !r.witness_verified) bad.push_back(id + ": witness not verified");
  }
  o.pass = bad.empty();
  o.detail = std::to_string(catalog().size()) + " nilsoliton metrics checked, " + std::to_string(rows.size()) +
             " named rows";
  if (!bad.empty()) o.detail += "; " + join(bad);
  return o;
}

// ---------- 7 ----------

Matrix<double> random_orthogonal(std::mt19937& rng) {
  std::normal_distribution<double> n;
  double w = n(rng), x = n(rng), y = n(rng), z = n(rng), s = std::sqrt(w * w + x * x + y * y + z * z);
  w /= s, x /= s, y /= s, z /= s;
  Matrix<double> R{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                   {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                   {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}};
  if (rng() % 2) R = R * Matrix<double>::diag({-1, 1, 1});
  return R;
}

Matrix<double> random_feasible(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  double y = u(rng), z = u(rng);
  std::array<double, 3> sv{y + z, y, z};
  std::shuffle(sv.begin(), sv.end(), rng);
  return random_orthogonal(rng) * Matrix<double>::diag({sv[0], sv[1], sv[2]}) * random_orthogonal(rng);
}

Outcome symmetrizer_properties() {
  Outcome o;
  std::mt19937 rng(413);
  double worst_orth = 0, worst_sym = 0;
  int feasible_ok = 0, verdict_ok = 0;
  for (int i = 0; i < 10000; ++i) {
    auto m = random_feasible(rng);
    try {
      auto sm = symmetrize_M(m);
      worst_orth = std::max(worst_orth, (sm.P.transpose() * sm.P - Matrix<double>::identity(3)).max_abs());
      worst_sym = std::max({worst_sym, (sm.A - sm.A.transpose()).max_abs(), std::abs(sm.A.trace()),
                            (m * sm.P - sm.A).max_abs()});
      ++feasible_ok;
    } catch (const Infeasible&) {
    }
  }
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 10000; ++i) {
    Matrix<double> m(3, 3);
    if (i % 3 == 0) {
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m(a, b) = u(rng);
    } else {
      m = random_feasible(rng);
      if (i % 3 == 2) m(rng() % 3, rng() % 3) += 1e-5 * u(rng);
    }
    double t = 0, t2 = 0;  // S = M^T M / 2
    double S[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        S[a][b] = 0;
        for (int k = 0; k < 3; ++k) S[a][b] += 0.5 * m(k, a) * m(k, b);
      }
    for (int a = 0; a < 3; ++a) t += S[a][a];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) t2 += S[a][b] * S[b][a];
    bool direct = std::abs(t * t - 2 * t2) <= 1e-9 * (1 + t * t + 2 * t2);
    bool lib = true;
    try {
      symmetrize_M(m);
    } catch (const Infeasible&) {
      lib = false;
    }
    verdict_ok += lib == direct;
  }
  o.pass = feasible_ok == 10000 && worst_orth < 1e-12 && worst_sym < 1e-9 && verdict_ok == 10000;
  o.detail = std::to_string(feasible_ok) + "/10000 feasible symmetrized, |P^T P - I| <= " + fmt(worst_orth) +
             ", asymmetry/trace <= " + fmt(worst_sym) + ", verdicts " + std::to_string(verdict_ok) + "/10000";
  return o;
}

// ---------- 8 ----------

Outcome oracle_identities() {
  Outcome o;
  std::vector<std::string> bad;
  std::mt19937 rng(88);
  int d2 = 0;
  for (auto& e : catalog()) {
    auto L = catalog_algebra<Q>(e.id);
    for (Mask m = 0; m < (Mask(1) << 7); ++m) {
      KForm<Q> f(7, std::popcount(m));
      f.add(m, Q(1));
      if (!ce_diff(L, ce_diff(L, f)).is_zero_form()) bad.push_back("d^2 != 0 on " + e.id);
      ++d2;
    }
  }
  for (int i = 0; i < 200; ++i) {
    int n = i % 2 ? 7 : 4;
    int k = std::uniform_int_distribution<int>(0, n)(rng);
    auto c = random_coframe(rng, n);
    Matrix<Q> g = c.transpose() * c;
    Q vol = det(c);
    auto a = random_form(rng, n, k);
    Q sign = (k * (n - k)) % 2 ? Q(-1) : Q(1);
    if (!(hodge_with_volume(hodge_with_volume(a, g, vol), g, vol) == sign * a))
      bad.push_back("** != (-1)^{k(n-k)} for n=" + std::to_string(n) + " k=" + std::to_string(k));
    auto b = random_form(rng, n, k);
    std::vector<int> all(n);
    for (int j = 0; j < n; ++j) all[j] = j + 1;
    auto volform = KForm<Q>::monomial(n, all, vol);
    if (!(form_inner(a, b, g) * volform == wedge(a, hodge_with_volume(b, g, vol))))
      bad.push_back("<a,b> vol != a ^ *b for n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  int jz = 0;
  const auto& cat = catalog();
  for (int i = 0; i < 200; ++i) {
    auto& e = cat[i % cat.size()];
    auto L = catalog_algebra<Q>(e.id);
    auto c = random_coframe(rng, 7);
    Matrix<Q> g = c.transpose() * c;
    auto D = decompose(L, g);
    int m = D.r.cols();
    int a = static_cast<int>(rng() % D.nprime.cols());
    const Matrix<Q>& J = D.j_mats[a];
    std::vector<Q> x(m), y(m);
    for (int q = 0; q < m; ++q) x[q] = random_rational(rng), y[q] = random_rational(rng);
    Matrix<Q> gj = D.gram_r * J;
    bool skew = gj.transpose() == Q(-1) * gj;
    Q lhs = dot(J * x, D.gram_r, y);
    Q rhs = dot(D.nprime.col(a), g, L.bracket(D.r * x, D.r * y));
    if (!skew || lhs != rhs) bad.push_back("j-map identity fails on " + e.id);
    ++jz;
  }
  o.pass = bad.empty();
  o.detail = std::to_string(d2) + " d^2 checks, 200 Hodge and 200 inner-product checks, " + std::to_string(jz) +
             " j-map triples, all exact";
  if (!bad.empty()) o.detail += "; " + join(bad);
  return o;
}

// ---------- 9 ----------

Outcome abc_family() {
  Outcome o;
  auto doc = read_json_file(std::string(G2NIL_SOURCE_DIR) + "/fixtures/example_abc.json");
  auto alg = resolve_algebra("n7_3_A");
  std::mt19937 rng(9);
  std::vector<std::string> bad;
  int coclosed = 0, on_plane = 0, off_plane = 0;
  auto check = [&](Q a, Q b, Q c) {
    std::string p = "a=" + str(a) + ",b=" + str(b) + ",c=" + str(c);
    auto r = verify(alg, doc, p);
    bool plane = a + b + c == 0;
    coclosed += r.coclosed;
    if (!r.coclosed) bad.push_back(p + ": not coclosed");
    if (r.purely_coclosed != plane) bad.push_back(p + ": purely " + (r.purely_coclosed ? "yes" : "no"));
    if (r.tau0 != str(Q(2) * (a + b + c) / Q(7))) bad.push_back(p + ": tau0 " + r.tau0);
    (plane ? on_plane : off_plane) += r.purely_coclosed == plane;
  };
  for (int i = 0; i < 100; ++i) check(random_rational(rng), random_rational(rng), random_rational(rng));
  for (int k = -10; k <= 10; ++k) {
    Q a = Q(k, 3) + Q(1, 7), b = 2;
    check(a, b, -a - b);
  }
  for (int i = 0; i < 50; ++i) {
    Q a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    if (a + b + c == 0) c += 1;
    check(a, b, c);
  }
  o.pass = bad.empty() && coclosed == 171;
  o.detail = std::to_string(coclosed) + "/171 coclosed, plane slice " + std::to_string(on_plane) +
             "/21 purely, off-plane correctly rejected";
  if (!bad.empty()) o.detail += "; " + join(bad);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"standard form round trip", standard_form_round_trip},
      {"case-3 reference matrices", case3_reference_matrices},
      {"global purely coclosed verdict", global_purely_verdict},
      {"h7 family against the closed form", case1_heisenberg_family},
      {"case-2 families against the closed forms", case2_families},
      {"nilsoliton rows", nilsoliton_rows},
      {"symmetrizer properties", symmetrizer_properties},
      {"oracle identities", oracle_identities},
      {"abc family on n7_3_A", abc_family},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::cout << (out.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << out.detail << std::endl;
  }
  return failed ? 1 : 0;
}
