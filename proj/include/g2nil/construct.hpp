#pragma once

#include "structure.hpp"

namespace g2nil {

struct Construction {
  Matrix<double> coframe;  // rows: e^1..e^7 in the defining dual basis
  TorsionReport<double> torsion;
  double metric_error = 0;  // max |C^T C - g|
  std::vector<double> block_values;  // case 1: d e^7 = b1 e^12 + b2 e^34 + b3 e^56
};

namespace detail {

inline std::vector<double> normalized(std::vector<double> v) {
  double n = 0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  for (double& x : v) x /= n;
  return v;
}

inline double euclid_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// remove components along an orthonormal list; returns the residual norm
inline double project_out(std::vector<double>& v, const std::vector<std::vector<double>>& used) {
  for (int pass = 0; pass < 2; ++pass)
    for (auto& u : used) {
      double c = euclid_dot(u, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
  return std::sqrt(euclid_dot(v, v));
}

inline Matrix<double> frame_coframe(const Matrix<double>& g, const std::vector<std::vector<double>>& rows) {
  Matrix<double> c(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) c(i, j) = rows[i][j];
  return c;
}

inline std::vector<double> flat(const Matrix<double>& g, const std::vector<double>& v) { return g * v; }

inline Construction finish(const LieAlgebra<double>& L, const Matrix<double>& g, Matrix<double> coframe) {
  Construction out;
  out.coframe = std::move(coframe);
  auto s = phi_from_coframe(out.coframe);
  out.torsion = torsion_class(s, L);
  out.metric_error = (s.metric - g).max_abs();
  return out;
}

// u-frame of an oriented 4-plane: coordinates of sigma_i-combinations and their complex structures
inline Matrix<double> complex_structure(const std::vector<double>& s) {
  auto sig = sigma_basis<double>();
  KForm<double> tau(4, 2);
  for (int i = 0; i < 3; ++i) tau += s[i] * sig[i];
  Matrix<double> j(4, 4);
  // tau(x, y) = g(J x, y): column a of J is row a of tau, negated by antisymmetry
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) j(b, a) = tau.coeff(std::vector<int>{a + 1, b + 1});
  return j;
}

// self-dual coordinates: beta^+ = sum X_i sigma_i
inline std::vector<double> sd_coords(const KForm<double>& beta) {
  auto sig = sigma_basis<double>();
  Matrix<double> id = Matrix<double>::identity(4);
  std::vector<double> x(3);
  for (int i = 0; i < 3; ++i) x[i] = form_inner(beta, sig[i], id) / 2;
  return x;
}

// oriented orthonormal frame (coordinates in the u-frame) with sigma_1 = s1, sigma_2 = s2
inline std::array<std::vector<double>, 4> frame_for(const std::vector<double>& s1, const std::vector<double>& s2) {
  Matrix<double> j1 = complex_structure(s1), j2 = complex_structure(s2);
  std::vector<double> e1{1, 0, 0, 0};
  std::vector<double> e3 = j1 * e1;
  std::vector<double> e4 = j2 * e1;
  for (double& x : e4) x = -x;
  std::vector<double> e2 = j1 * e4;
  return {e1, e2, e3, e4};
}

}  // namespace detail

// ---------- case 1 ----------

template <class T>
Construction construct_case1(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g,
                             bool balance = true) {
  if (D.derived_dim() != 1) throw Error("case 1 construction needs dim n' = 1");
  auto Ld = L.template cast<double>();
  auto gd = g.template cast<double>();
  Matrix<double> frame = gram_schmidt(D.r.template cast<double>(), gd);
  std::vector<double> z = gram_schmidt(D.nprime.template cast<double>(), gd).col(0);
  Matrix<double> om = omega_on_frame(Ld, gd, z, frame);
  int m = om.rows();

  Eigen::MatrixXd e(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e(i, j) = om(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-(e * e));
  double scale = std::max(1.0, om.max_abs());
  std::vector<std::vector<double>> used, kernel;
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
  for (int k = m - 1; k >= 0; --k) {
    std::vector<double> v(es.eigenvectors().col(k).data(), es.eigenvectors().col(k).data() + m);
    if (detail::project_out(v, used) < 1e-6) continue;
    v = detail::normalized(v);
    if (es.eigenvalues()(k) > 1e-10 * scale * scale) {
      std::vector<double> w = om * v;
      detail::project_out(w, used);
      w = detail::normalized(w);
      used.push_back(v), used.push_back(w);
      pairs.push_back({v, w});
    } else {
      used.push_back(v);
      kernel.push_back(v);
    }
  }
  for (std::size_t k = 0; k + 1 < kernel.size(); k += 2) pairs.push_back({kernel[k], kernel[k + 1]});
  if (static_cast<int>(pairs.size()) * 2 != m) throw Error("could not block-diagonalize d z_flat");

  std::vector<double> b;
  for (auto& [v, w] : pairs) b.push_back(detail::euclid_dot(v, om * w));
  if (balance) {
    bool found = false;
    for (int mask = 0; mask < (1 << pairs.size()) && !found; ++mask) {
      double s = 0;
      for (std::size_t k = 0; k < b.size(); ++k) s += (mask >> k & 1 ? -b[k] : b[k]);
      if (std::abs(s) <= 1e-7 * scale) {
        found = true;
        for (std::size_t k = 0; k < b.size(); ++k)
          if (mask >> k & 1) std::swap(pairs[k].first, pairs[k].second), b[k] = -b[k];
      }
    }
    if (!found) throw Infeasible("block spectrum cannot be balanced to a + b + c = 0");
  }
  std::vector<std::vector<double>> rows;
  for (auto& [v, w] : pairs) {
    rows.push_back(detail::flat(gd, frame * v));
    rows.push_back(detail::flat(gd, frame * w));
  }
  rows.push_back(detail::flat(gd, z));
  Construction out = detail::finish(Ld, gd, detail::frame_coframe(gd, rows));
  out.block_values = b;
  return out;
}

// ---------- case 2 ----------

template <class T>
Construction construct_case2(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g, int orientation,
                             bool purely = true) {
  if (D.derived_dim() != 2) throw Error("case 2 construction needs dim n' = 2");
  if (D.a_dim() == 0) throw Infeasible("a = 0: no coclosed G2-structure exists");
  auto Ld = L.template cast<double>();
  auto gd = g.template cast<double>();
  Matrix<double> rt = case2_plane(D, g).template cast<double>();
  Matrix<double> nd = D.nprime.template cast<double>();
  // x: unit vector of r orthogonal to the 4-plane
  Matrix<double> cons = detail::stack_rows(nd.transpose() * gd, rt.transpose() * gd);
  Matrix<double> xs = nullspace(cons);
  if (xs.cols() != 1) throw Error("complement of the 4-plane in r is not a line");
  std::vector<double> x = gram_schmidt(xs, gd).col(0);

  Matrix<double> u = oriented_frame(rt, gd, orientation);
  Matrix<double> nf = gram_schmidt(nd, gd);
  std::vector<double> z1 = gd * nf.col(0), z2 = gd * nf.col(1);
  auto alpha = [&](const std::vector<double>& zf) { return substitute(ce_diff(Ld, KForm<double>::covector(zf)), u); };
  std::vector<double> X5 = detail::sd_coords(alpha(z1)), X6 = detail::sd_coords(alpha(z2));
  double n5 = std::sqrt(detail::euclid_dot(X5, X5)), n6 = std::sqrt(detail::euclid_dot(X6, X6));
  double scale = std::max({1.0, n5, n6});

  std::vector<double> s1{1, 0, 0}, s2{0, 1, 0};
  if (purely) {
    if (!approx_equal(n5, n6, 1e-7) || std::abs(detail::euclid_dot(X5, X6)) > 1e-7 * scale * scale)
      throw Infeasible("self-dual parts are not orthogonal with equal norms");
    if (n5 > 1e-12 * scale) {
      s1 = detail::normalized(X5);
      s2 = X6;
      for (double& v : s2) v = -v;
      detail::project_out(s2, {s1});
      s2 = detail::normalized(s2);
    }
  } else {
    // orthonormal basis of a plane containing X5, X6, rotated so the coefficient matrix is symmetric
    std::vector<std::vector<double>> basis;
    for (auto cand : {X5, X6, std::vector<double>{1, 0, 0}, std::vector<double>{0, 1, 0}, std::vector<double>{0, 0, 1}}) {
      if (basis.size() == 2) break;
      if (detail::project_out(cand, basis) > 1e-9 * scale) basis.push_back(detail::normalized(cand));
    }
    Matrix<double> N{{detail::euclid_dot(X5, basis[0]), detail::euclid_dot(X5, basis[1])},
                     {detail::euclid_dot(X6, basis[0]), detail::euclid_dot(X6, basis[1])}};
    Matrix<double> Q = polar_rotation(N);
    for (int i = 0; i < 3; ++i) {
      s1[i] = basis[0][i] * Q(0, 0) + basis[1][i] * Q(1, 0);
      s2[i] = basis[0][i] * Q(0, 1) + basis[1][i] * Q(1, 1);
    }
  }
  auto e = detail::frame_for(s1, s2);
  std::vector<std::vector<double>> rows;
  for (auto& v : e) rows.push_back(detail::flat(gd, u * v));
  rows.push_back(z1);
  rows.push_back(z2);
  rows.push_back(detail::flat(gd, x));
  return detail::finish(Ld, gd, detail::frame_coframe(gd, rows));
}

// ---------- case 3 ----------

template <class T>
Construction construct_case3(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g, int orientation,
                             bool purely = true) {
  if (D.derived_dim() != 3) throw Error("case 3 construction needs dim n' = 3");
  auto Ld = L.template cast<double>();
  auto gd = g.template cast<double>();
  Matrix<double> rf = oriented_frame(D.r.template cast<double>(), gd, orientation);
  Matrix<double> nf = gram_schmidt(D.nprime.template cast<double>(), gd);
  Matrix<double> M = case3_M(Ld, gd, rf, nf);
  Matrix<double> P = purely ? symmetrize_M(M).P : polar_rotation(M);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 4; ++i) rows.push_back(detail::flat(gd, rf.col(i)));
  for (int j = 0; j < 3; ++j) {
    std::vector<double> v(7, 0.0);
    for (int k = 0; k < 3; ++k) {
      auto zk = detail::flat(gd, nf.col(k));
      for (int i = 0; i < 7; ++i) v[i] += P(k, j) * zk[i];
    }
    rows.push_back(v);
  }
  return detail::finish(Ld, gd, detail::frame_coframe(gd, rows));
}

template <class T>
Construction construct_purely(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g,
                              const CriterionReport& rep) {
  if (!rep.exists) throw Infeasible("criterion report does not assert existence");
  switch (D.derived_dim()) {
    case 1: return construct_case1(D, L, g, true);
    case 2: return construct_case2(D, L, g, rep.orientation, true);
    case 3: return construct_case3(D, L, g, rep.orientation, true);
  }
  throw Unsupported("derived algebra dimension must be 1, 2 or 3");
}

template <class T>
Construction construct_coclosed(const MetricDecomposition<T>& D, const LieAlgebra<T>& L, const Matrix<T>& g) {
  if (!coclosed_always(D)) throw Infeasible("dim n' = 2 and a = 0: no coclosed G2-structure exists");
  switch (D.derived_dim()) {
    case 1: return construct_case1(D, L, g, false);
    case 2: return construct_case2(D, L, g, 1, false);
    case 3: return construct_case3(D, L, g, 1, false);
  }
  throw Unsupported("derived algebra dimension must be 1, 2 or 3");
}

}  // namespace g2nil
