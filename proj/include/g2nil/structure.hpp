#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>

#include "g2su3.hpp"

namespace g2nil {

// x + y sqrt(d), d > 0; lets the self-dual Gram stay exact when det of the 4-plane metric is not a square
template <class T>
struct Surd {
  T x{0}, y{0}, d{1};

  friend Surd operator+(const Surd& a, const Surd& b) { return {a.x + b.x, a.y + b.y, a.d}; }
  friend Surd operator-(const Surd& a, const Surd& b) { return {a.x - b.x, a.y - b.y, a.d}; }
  friend Surd operator*(const Surd& a, const Surd& b) {
    return {a.x * b.x + a.y * b.y * a.d, a.x * b.y + a.y * b.x, a.d};
  }
  friend Surd operator*(const T& s, const Surd& a) { return {s * a.x, s * a.y, a.d}; }

  double value() const { return to_double(x) + to_double(y) * std::sqrt(to_double(d)); }

  bool is_zero() const {
    if constexpr (is_exact_v<T>) {
      if (y == T(0)) return x == T(0);
      if (scalar_traits<T>::sign(x) * scalar_traits<T>::sign(y) >= 0) return false;
      return x * x == y * y * d;
    } else {
      return approx_equal(value(), 0.0);
    }
  }

  std::string str() const {
    if constexpr (is_exact_v<T>) {
      if (y == T(0)) return g2nil::str(x);
      T r;
      try {
        r = scalar_traits<T>::sqrt(d);
        return g2nil::str(T(x + y * r));
      } catch (const InexactValue&) {
      }
      T yy = y, dd = d;
      if constexpr (std::is_same_v<T, Rational>) {
        // y sqrt(p/q) = (y k / q) sqrt(m) with p q = k^2 m, small square factors only
        Integer n = numerator(d) * denominator(d), k = 1;
        yy = y / Rational(denominator(d));
        for (Integer f = 2; f * f <= n && f < 10000; ++f)
          while (n % (f * f) == 0) n /= f * f, k *= f;
        yy *= Rational(k);
        dd = Rational(n);
      }
      std::string s = x == T(0) ? "" : g2nil::str(x) + " + ";
      return s + g2nil::str(yy) + "*sqrt(" + g2nil::str(dd) + ")";
    } else {
      return g2nil::str(value());
    }
  }
};

template <class T>
bool surd_equal(const Surd<T>& a, const Surd<T>& b) {
  if constexpr (is_exact_v<T>) return (a - b).is_zero();
  else return approx_equal(a.value(), b.value());
}

// bases are columns in the defining coordinates; none of them orthonormal in general
template <class T>
struct MetricDecomposition {
  Matrix<T> nprime;  // n' (derived algebra), RREF basis
  Matrix<T> r;       // r = (n')^perp
  Matrix<T> center;
  Matrix<T> a;       // a = center ∩ (n')^perp
  Matrix<T> gram_n, gram_r;
  std::vector<Matrix<T>> j_mats;  // j(n_a) on r, in the r basis
  int derived_dim() const { return nprime.cols(); }
  int a_dim() const { return a.cols(); }
};

namespace detail {

template <class T>
Matrix<T> stack_rows(const Matrix<T>& top, const Matrix<T>& bottom) {
  return top.transpose().hcat(bottom.transpose()).transpose();
}

// linear constraints x -> ([x, e_j])_k for all j, k
template <class T>
Matrix<T> center_constraints(const LieAlgebra<T>& L) {
  int n = L.dim();
  Matrix<T> a(n * n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) a(j * n + k, i) = -L.c(i, j, k);
  return a;
}

}  // namespace detail

template <class T>
MetricDecomposition<T> decompose(const LieAlgebra<T>& L, const Matrix<T>& g) {
  int n = L.dim();
  if (g.rows() != n || g.cols() != n) throw DimensionMismatch("metric dimension mismatch");
  require_positive_definite(g);
  if (!is_two_step(L)) throw Unsupported("algebra is not 2-step nilpotent");
  MetricDecomposition<T> D;
  D.nprime = derived_algebra(L);
  int k = D.nprime.cols();
  if (n == 7 && (k < 1 || k > 3)) throw Unsupported("derived algebra dimension must be 1, 2 or 3");
  Matrix<T> ng = D.nprime.transpose() * g;
  D.r = nullspace(ng);
  D.center = center(L);
  D.a = nullspace(detail::stack_rows(detail::center_constraints(L), ng));
  D.gram_n = gram(D.nprime, g);
  D.gram_r = gram(D.r, g);
  Matrix<T> gri = inverse(D.gram_r);
  int m = D.r.cols();
  for (int a = 0; a < k; ++a) {
    auto z = D.nprime.col(a);
    Matrix<T> K(m, m);
    for (int q = 0; q < m; ++q)
      for (int s = q + 1; s < m; ++s) {
        K(q, s) = dot(z, g, L.bracket(D.r.col(q), D.r.col(s)));
        K(s, q) = -K(q, s);
      }
    D.j_mats.push_back(-(gri * K));
  }
  return D;
}

struct Diagnostic {
  std::string label;
  int orientation = 0;
  std::string lhs_str, rhs_str;
  double lhs = 0, rhs = 0;
  bool holds = false;
};

struct CriterionReport {
  int case_id = 0;
  bool exists = false;
  bool coclosed_possible = false;
  int orientation = 0;
  std::vector<Diagnostic> diagnostics;
  std::vector<double> spectrum;                       // case 1: (a, b, c) with a + b + c = 0
  std::vector<std::vector<std::string>> subspace;     // case 2: basis of the oriented 4-plane
  std::vector<std::vector<double>> rotation;          // case 3: symmetrizing P
  bool fallback = false;                              // computed in Float after an exact attempt failed
  std::string note;
};

template <class T>
bool coclosed_always(const MetricDecomposition<T>& D) {
  return D.derived_dim() != 2 || D.a_dim() > 0;
}

// ---------- orthogonal symmetrizer (Float) ----------

struct Symmetrized {
  Matrix<double> P;  // orthogonal
  Matrix<double> A;  // M P, symmetric and trace-free
};

inline Eigen::Matrix3d to_eigen3(const Matrix<double>& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m(i, j);
  return e;
}
inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

// tr^2(S) and 2 tr(S^2) for S = 1/2 M^T M
template <class T>
std::pair<T, T> trace_identity_sides(const Matrix<T>& S) {
  T t = S.trace();
  return {t * t, T(2) * (S * S).trace()};
}

// Q orthogonal with M Q symmetric positive semidefinite
inline Matrix<double> polar_rotation(const Matrix<double>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("polar decomposition needs a square matrix");
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return from_eigen(svd.matrixV() * svd.matrixU().transpose());
}

inline Symmetrized symmetrize_M(const Matrix<double>& m) {
  if (m.rows() != 3 || m.cols() != 3) throw DimensionMismatch("symmetrize_M needs a 3x3 matrix");
  Matrix<double> S = 0.5 * (m.transpose() * m);
  auto [l, r] = trace_identity_sides(S);
  if (!approx_equal(l, r)) throw Infeasible("tr^2(S) != 2 tr(S^2)");
  double scale = std::max(1.0, m.max_abs());
  bool sym = true;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) sym = sym && std::abs(m(i, j) - m(j, i)) <= tolerance() * scale;
  if (sym && std::abs(m.trace()) <= tolerance() * scale) return {Matrix<double>::identity(3), m};

  Eigen::Matrix3d e = to_eigen3(m);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d U = svd.matrixU(), V = svd.matrixV();
  Eigen::Vector3d s = svd.singularValues();  // descending
  Eigen::Matrix3d Q = V * U.transpose();     // M Q = U diag(s) U^T
  // the singular value equal to the sum of the other two gets its sign flipped
  int slot = -1;
  for (int k = 0; k < 3 && slot < 0; ++k) {
    double rest = s.sum() - s(k);
    if (approx_equal(s(k), rest)) slot = k;
  }
  if (slot < 0) {
    // feasible within tolerance but no clean match: take the closest assignment
    double best = 1e300;
    for (int k = 0; k < 3; ++k) {
      double gap = std::abs(2 * s(k) - s.sum());
      if (gap < best) best = gap, slot = k;
    }
  }
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  D(slot, slot) = -1;
  Eigen::Matrix3d P = Q * U * D * U.transpose();
  Matrix<double> Pm = from_eigen(P);
  return {Pm, m * Pm};
}

// ---------- case 1 ----------

// skew matrix of d z_flat on an orthonormal frame of r (float)
inline Matrix<double> omega_on_frame(const LieAlgebra<double>& L, const Matrix<double>& g, const std::vector<double>& z,
                                     const Matrix<double>& frame) {
  KForm<double> dz = ce_diff(L, KForm<double>::covector(g * z));
  KForm<double> restricted = substitute(dz, frame);
  int m = frame.cols();
  Matrix<double> om(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) om(p, q) = restricted.coeff(std::vector<int>{p + 1, q + 1});
  return om;
}

// block magnitudes of a skew matrix (descending), one per 2-plane
inline std::vector<double> skew_block_magnitudes(const Matrix<double>& om) {
  int m = om.rows();
  Eigen::MatrixXd e(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e(i, j) = om(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-(e * e));
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
  std::sort(ev.rbegin(), ev.rend());
  std::vector<double> out;
  for (int k = 0; k + 1 < m; k += 2) out.push_back(std::sqrt(std::max(0.0, 0.5 * (ev[k] + ev[k + 1]))));
  return out;
}

// signs s_k with sum s_k |b_k| = 0 if such a choice exists (first in enumeration order)
inline std::optional<std::vector<int>> balancing_signs(const std::vector<double>& mags) {
  int n = static_cast<int>(mags.size());
  double scale = 0;
  for (double v : mags) scale = std::max(scale, v);
  for (int mask = 0; mask < (1 << n); ++mask) {
    double s = 0;
    for (int k = 0; k < n; ++k) s += (mask >> k & 1 ? -1 : 1) * mags[k];
    if (std::abs(s) <= 1e-7 * std::max(1.0, scale)) {
      std::vector<int> sg(n);
      for (int k = 0; k < n; ++k) sg[k] = mask >> k & 1 ? -1 : 1;
      return sg;
    }
  }
  return std::nullopt;
}

template <class T>
CriterionReport case1_exists(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g) {
  if (D.derived_dim() != 1) throw Error("case 1 needs a one-dimensional derived algebra");
  CriterionReport rep;
  rep.case_id = 1;
  rep.coclosed_possible = true;
  const Matrix<T>& J = D.j_mats.front();
  Matrix<T> J2 = J * J;
  T t2 = J2.trace(), t4 = (J2 * J2).trace();
  Diagnostic dg;
  dg.label = "tr^2(j(z)^2) = 4 tr(j(z)^4)";
  T l = t2 * t2, r = T(4) * t4;
  dg.lhs_str = str(l), dg.rhs_str = str(r);
  dg.lhs = to_double(l), dg.rhs = to_double(r);
  if constexpr (is_exact_v<T>) dg.holds = l == r;
  else dg.holds = approx_equal(dg.lhs, dg.rhs);
  rep.diagnostics.push_back(dg);
  rep.exists = dg.holds;
  if (rep.exists) {
    auto Ld = L.template cast<double>();
    auto gd = g.template cast<double>();
    auto frame = gram_schmidt(D.r.template cast<double>(), gd);
    auto nz = gram_schmidt(D.nprime.template cast<double>(), gd).col(0);
    auto mags = skew_block_magnitudes(omega_on_frame(Ld, gd, nz, frame));
    auto sg = balancing_signs(mags);
    if (sg) {
      for (std::size_t k = 0; k < mags.size(); ++k) rep.spectrum.push_back((*sg)[k] * mags[k]);
    } else {
      rep.note = "trace identity holds but no sign balancing found within float tolerance";
    }
  }
  return rep;
}

// ---------- shared self-dual Gram machinery for cases 2 and 3 ----------

// For eta_a = n_a-flat restricted to the plane with basis rb (columns), the self-dual Gram of the
// orthonormalized duals is similar to 1/2 (A + o B / sqrt(d)) with A = P Gn^-1, B = W Gn^-1.
template <class T>
struct SelfDualData {
  Matrix<T> A, B;
  T d;
  std::vector<KForm<T>> beta;  // d eta_a in rb coordinates

  Surd<T> entry(int i, int j, int o) const {
    return Surd<T>{A(i, j) / T(2), T(o) * B(i, j) / (T(2) * d), d};
  }
};

template <class T>
SelfDualData<T> self_dual_data(const LieAlgebra<T>& L, const Matrix<T>& g, const Matrix<T>& rb, const Matrix<T>& nb) {
  int k = nb.cols();
  SelfDualData<T> sd;
  Matrix<T> gr = gram(rb, g);
  sd.d = det(gr);
  for (int a = 0; a < k; ++a) {
    KForm<T> eta = KForm<T>::covector(g * nb.col(a));
    sd.beta.push_back(substitute(ce_diff(L, eta), rb));
  }
  Matrix<T> P(k, k), W(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      P(a, b) = form_inner(sd.beta[a], sd.beta[b], gr);
      W(a, b) = wedge(sd.beta[a], sd.beta[b]).top();
    }
  Matrix<T> gni = inverse(gram(nb, g));
  sd.A = P * gni;
  sd.B = W * gni;
  return sd;
}

template <class T>
Diagnostic make_diag(std::string label, int o, const Surd<T>& l, const Surd<T>& r) {
  Diagnostic dg;
  dg.label = std::move(label);
  dg.orientation = o;
  dg.lhs_str = l.str(), dg.rhs_str = r.str();
  dg.lhs = l.value(), dg.rhs = r.value();
  dg.holds = surd_equal(l, r);
  return dg;
}

template <class T>
std::vector<std::string> column_strings(const Matrix<T>& m, int j) {
  std::vector<std::string> v;
  for (int i = 0; i < m.rows(); ++i) v.push_back(str(m(i, j)));
  return v;
}

// ---------- case 2 ----------

// 4-plane of r carrying all d(n')^*: r ∩ a^perp, padded with the first a-vector when that is 3-dimensional
template <class T>
Matrix<T> case2_plane(const MetricDecomposition<T>& D, const Matrix<T>& g) {
  Matrix<T> cons = detail::stack_rows(D.nprime.transpose() * g, D.a.transpose() * g);
  Matrix<T> w = nullspace(cons);
  if (w.cols() == 3 && D.a_dim() >= 1) w = w.hcat(D.a.cols_subset({0}));
  if (w.cols() != 4) throw Unsupported("no 4-dimensional subspace of r carries the differentials");
  return w;
}

template <class T>
CriterionReport case2_exists(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g) {
  if (D.derived_dim() != 2) throw Error("case 2 needs a two-dimensional derived algebra");
  CriterionReport rep;
  rep.case_id = 2;
  rep.coclosed_possible = coclosed_always(D);
  if (!rep.coclosed_possible) {
    rep.note = "a = 0: no coclosed G2-structure induces this metric";
    return rep;
  }
  Matrix<T> rt = case2_plane(D, g);
  auto sd = self_dual_data(L, g, rt, D.nprime);
  for (int o : {1, -1}) {
    Surd<T> zero{T(0), T(0), sd.d};
    Diagnostic off = make_diag("T12 = 0", o, sd.entry(0, 1, o), zero);
    Diagnostic off2 = make_diag("T21 = 0", o, sd.entry(1, 0, o), zero);
    Diagnostic diag = make_diag("T11 = T22", o, sd.entry(0, 0, o), sd.entry(1, 1, o));
    rep.diagnostics.push_back(off);
    rep.diagnostics.push_back(diag);
    if (off.holds && off2.holds && diag.holds && !rep.exists) {
      rep.exists = true;
      rep.orientation = o;
    }
  }
  for (int j = 0; j < 4; ++j) rep.subspace.push_back(column_strings(rt, j));
  if (!rep.exists) rep.subspace.clear();
  return rep;
}

// ---------- case 3 ----------

// M_ij = <sigma_i, alpha_j> on an oriented orthonormal frame of r; float
inline Matrix<double> case3_M(const LieAlgebra<double>& L, const Matrix<double>& g, const Matrix<double>& rframe,
                              const Matrix<double>& nframe) {
  auto s = sigma_basis<double>();
  Matrix<double> M(3, 3);
  Matrix<double> id = Matrix<double>::identity(4);
  for (int j = 0; j < 3; ++j) {
    KForm<double> alpha = substitute(ce_diff(L, KForm<double>::covector(g * nframe.col(j))), rframe);
    for (int i = 0; i < 3; ++i) M(i, j) = form_inner(s[i], alpha, id);
  }
  return M;
}

// orthonormal frames used by every float construction: Gram-Schmidt in basis order, last vector flipped for o = -1
inline Matrix<double> oriented_frame(const Matrix<double>& basis, const Matrix<double>& g, int o) {
  Matrix<double> f = gram_schmidt(basis, g);
  if (o < 0) {
    int last = f.cols() - 1;
    for (int i = 0; i < f.rows(); ++i) f(i, last) = -f(i, last);
  }
  return f;
}

template <class T>
CriterionReport case3_exists(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g) {
  if (D.derived_dim() != 3) throw Error("case 3 needs a three-dimensional derived algebra");
  CriterionReport rep;
  rep.case_id = 3;
  rep.coclosed_possible = true;
  auto sd = self_dual_data(L, g, D.r, D.nprime);
  for (int o : {1, -1}) {
    // T = 1/2 (A + o B / sqrt d): traces of T and T^2 as surds
    Surd<T> tr{T(0), T(0), sd.d}, tr2{T(0), T(0), sd.d};
    for (int i = 0; i < 3; ++i) {
      tr = tr + sd.entry(i, i, o);
      for (int k = 0; k < 3; ++k) tr2 = tr2 + sd.entry(i, k, o) * sd.entry(k, i, o);
    }
    Diagnostic dg = make_diag("tr^2(S) = 2 tr(S^2)", o, tr * tr, T(2) * tr2);
    rep.diagnostics.push_back(dg);
    if (dg.holds && !rep.exists) {
      rep.exists = true;
      rep.orientation = o;
    }
  }
  if (rep.exists) {
    auto Ld = L.template cast<double>();
    auto gd = g.template cast<double>();
    auto rf = oriented_frame(D.r.template cast<double>(), gd, rep.orientation);
    auto nf = gram_schmidt(D.nprime.template cast<double>(), gd);
    try {
      auto sym = symmetrize_M(case3_M(Ld, gd, rf, nf));
      for (int i = 0; i < 3; ++i) rep.rotation.push_back(sym.P.row(i));
    } catch (const Infeasible&) {
      rep.note = "exact trace identity holds but the float symmetrizer rejected M";
    }
  }
  return rep;
}

// dispatch on dim n'
template <class T>
CriterionReport purely_exists(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g) {
  switch (D.derived_dim()) {
    case 1: return case1_exists(D, L, g);
    case 2: return case2_exists(D, L, g);
    case 3: return case3_exists(D, L, g);
  }
  throw Unsupported("derived algebra dimension must be 1, 2 or 3");
}

template <class T>
CriterionReport coclosed_exists(const MetricDecomposition<T>& D) {
  CriterionReport rep;
  rep.case_id = D.derived_dim();
  rep.coclosed_possible = coclosed_always(D);
  rep.exists = rep.coclosed_possible;
  Diagnostic dg;
  dg.label = "dim n' != 2 or dim a > 0";
  dg.lhs_str = std::to_string(D.derived_dim());
  dg.rhs_str = std::to_string(D.a_dim());
  dg.lhs = D.derived_dim(), dg.rhs = D.a_dim();
  dg.holds = rep.exists;
  rep.diagnostics.push_back(dg);
  return rep;
}

// ---------- explicit coframes (fixtures) ----------

template <class T>
struct CoframeMatrices {
  Matrix<T> M, S_plus, S_minus;
  T tr2_plus, twotr_plus, tr2_minus, twotr_minus;
};

// M_ij = <sigma_i, alpha_j>, S_pm = Gram of the (anti-)self-dual parts, alpha_i = d e^{i+4}, e-coframe orthonormal
template <class T>
CoframeMatrices<T> coframe_matrices(const LieAlgebra<T>& L, const Matrix<T>& c) {
  if (L.dim() != 7 || c.rows() != 7 || c.cols() != 7) throw DimensionMismatch("need a 7-dimensional coframe");
  Matrix<T> e = inverse(c);  // columns: dual frame in f-coordinates
  Matrix<T> nd = derived_algebra(L);
  if (nd.cols() != 3) throw Error("coframe matrices need a three-dimensional derived algebra");
  for (int i = 0; i < 4; ++i) {
    auto row = c.row(i);
    for (int a = 0; a < 3; ++a) {
      T s(0);
      for (int j = 0; j < 7; ++j) s += row[j] * nd(j, a);
      if (!is_zero(s)) throw Error("e^1..e^4 must vanish on the derived algebra");
    }
  }
  Matrix<T> id4 = Matrix<T>::identity(4);
  std::vector<KForm<T>> al;
  for (int i = 0; i < 3; ++i) {
    KForm<T> a7 = substitute(ce_diff(L, KForm<T>::covector(c.row(i + 4))), e);
    KForm<T> a4(4, 2);
    for (auto& [m, v] : a7.terms()) {
      if (m & ~Mask(0xF)) {
        if (!is_zero(v)) throw Error("d e^{i+4} leaves the span of e^1..e^4");
        continue;
      }
      a4.add(m, v);
    }
    al.push_back(a4);
  }
  auto s = sigma_basis<T>();
  CoframeMatrices<T> out{Matrix<T>(3, 3), Matrix<T>(3, 3), Matrix<T>(3, 3), T(0), T(0), T(0), T(0)};
  std::vector<KForm<T>> ap, am;
  for (auto& a : al) {
    KForm<T> h = hodge(a, id4);
    ap.push_back(T(1) / T(2) * (a + h));
    am.push_back(T(1) / T(2) * (a - h));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out.M(i, j) = form_inner(s[i], al[j], id4);
      out.S_plus(i, j) = form_inner(ap[i], ap[j], id4);
      out.S_minus(i, j) = form_inner(am[i], am[j], id4);
    }
  std::tie(out.tr2_plus, out.twotr_plus) = trace_identity_sides(out.S_plus);
  std::tie(out.tr2_minus, out.twotr_minus) = trace_identity_sides(out.S_minus);
  return out;
}

}  // namespace g2nil
