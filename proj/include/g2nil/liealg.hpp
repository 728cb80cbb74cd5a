#pragma once

#include <string>
#include <vector>

#include "exterior.hpp"

namespace g2nil {

// given by the structure equations d f^k; brackets recovered on demand
template <class T>
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::vector<KForm<T>> diffs, std::string name = {}) : d_(std::move(diffs)), name_(std::move(name)) {
    n_ = static_cast<int>(d_.size());
    if (n_ < 1 || n_ > 7) throw DimensionMismatch("Lie algebra dimension must be 1..7");
    for (auto& f : d_)
      if (f.dim() != n_ || f.degree() != 2) throw DimensionMismatch("each d f^k must be a 2-form on the algebra");
    c_.assign(static_cast<std::size_t>(n_) * n_ * n_, T(0));
    for (int k = 0; k < n_; ++k)
      for (auto& [m, v] : d_[k].terms()) {
        auto ij = indices_of(m);
        int i = ij[0] - 1, j = ij[1] - 1;
        at(i, j, k) = v;
        at(j, i, k) = -v;
      }
  }

  int dim() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<KForm<T>>& diffs() const { return d_; }
  const KForm<T>& diff(int k) const { return d_.at(k); }

  // c(i,j,k): coefficient of f^i ^ f^j in d f^k (antisymmetric in i, j), 0-based
  const T& c(int i, int j, int k) const { return c_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }

  // [x, y] = -sum c(i,j,k) x_i y_j e_k, matching d alpha(x, y) = -alpha([x, y])
  std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const {
    std::vector<T> r(n_, T(0));
    for (int i = 0; i < n_; ++i) {
      if (x[i] == T(0)) continue;
      for (int j = 0; j < n_; ++j) {
        if (y[j] == T(0)) continue;
        T xy = x[i] * y[j];
        for (int k = 0; k < n_; ++k)
          if (!(c(i, j, k) == T(0))) r[k] -= xy * c(i, j, k);
      }
    }
    return r;
  }
  std::vector<T> bracket_basis(int i, int j) const {
    std::vector<T> r(n_, T(0));
    for (int k = 0; k < n_; ++k) r[k] = -c(i, j, k);
    return r;
  }

  double max_constant() const {
    double m = 0;
    for (auto& v : c_) m = std::max(m, std::abs(to_double(v)));
    return m;
  }

  template <class U>
  LieAlgebra<U> cast() const {
    std::vector<KForm<U>> d;
    for (auto& f : d_) d.push_back(f.template cast<U>());
    return LieAlgebra<U>(std::move(d), name_);
  }

 private:
  T& at(int i, int j, int k) { return c_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
  int n_ = 0;
  std::vector<KForm<T>> d_;
  std::vector<T> c_;
  std::string name_;
};

// Chevalley-Eilenberg differential, antiderivation extension of the diffs table
template <class T>
KForm<T> ce_diff(const LieAlgebra<T>& L, const KForm<T>& a) {
  int n = L.dim();
  if (a.dim() != n) throw DimensionMismatch("form lives on a different space");
  if (a.degree() + 1 > n) return KForm<T>(n, n);
  KForm<T> r(n, a.degree() + 1);
  for (auto& [m, c] : a.terms()) {
    auto idx = indices_of(m);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const KForm<T>& df = L.diff(idx[p] - 1);
      if (df.empty()) continue;
      Mask rest = m & ~(Mask(1) << (idx[p] - 1));
      // e^{i_1..i_k} = (-1)^p e^{i_p} ^ e^{rest}; d e^{i_p} ^ e^{rest} needs no further sign
      for (auto& [md, cd] : df.terms()) {
        if (md & rest) continue;
        T v = c * cd;
        int s = wedge_sign(md, rest) * (p % 2 ? -1 : 1);
        r.add(md | rest, s > 0 ? v : T(-v));
      }
    }
  }
  return r;
}

template <class T>
bool d_squared_vanishes(const LieAlgebra<T>& L) {
  int n = L.dim();
  for (int k = 1; k < n; ++k)
    for (Mask m : combinations(n, k)) {
      KForm<T> e(n, k);
      e.add(m, T(1));
      if (!ce_diff(L, ce_diff(L, e)).is_zero_form(L.max_constant() * L.max_constant())) return false;
    }
  return true;
}

// columns: basis of span{[e_i, e_j]}
template <class T>
Matrix<T> derived_algebra(const LieAlgebra<T>& L) {
  int n = L.dim();
  Matrix<T> b(n, n * (n - 1) / 2);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.set_col(col++, L.bracket_basis(i, j));
  return column_basis(b);
}

// columns: basis of {x : [x, e_j] = 0 for all j}
template <class T>
Matrix<T> center(const LieAlgebra<T>& L) {
  int n = L.dim();
  Matrix<T> a(n * n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) a(j * n + k, i) = -L.c(i, j, k);
  return nullspace(a);
}

template <class T>
bool is_abelian(const LieAlgebra<T>& L) {
  for (auto& f : L.diffs())
    if (!f.is_zero_form()) return false;
  return true;
}

// nonabelian with derived algebra inside the center
template <class T>
bool is_two_step(const LieAlgebra<T>& L) {
  if (is_abelian(L)) return false;
  Matrix<T> nd = derived_algebra(L);
  for (int a = 0; a < nd.cols(); ++a) {
    auto z = nd.col(a);
    for (int j = 0; j < L.dim(); ++j) {
      std::vector<T> e(L.dim(), T(0));
      e[j] = T(1);
      for (auto& v : L.bracket(z, e))
        if (!is_zero(v, L.max_constant())) return false;
    }
  }
  return true;
}

// Ricci endomorphism in the defining basis, contracted with g^{-1} (no orthonormal frame needed):
// ric(x,y) = -1/2 sum g^{ab} g([x,b_a],[y,b_b]) + 1/4 sum g^{ac} g^{bd} g([b_a,b_b],x) g([b_c,b_d],y)
template <class T>
Matrix<T> ricci(const LieAlgebra<T>& L, const Matrix<T>& g) {
  int n = L.dim();
  if (g.rows() != n || g.cols() != n) throw DimensionMismatch("metric dimension mismatch");
  require_positive_definite(g);
  Matrix<T> gi = inverse(g);
  // ad[x] : matrix with columns [e_x, e_a]
  std::vector<Matrix<T>> ad(n, Matrix<T>(n, n));
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a) ad[x].set_col(a, L.bracket_basis(x, a));
  Matrix<T> ric(n, n);
  // first sum: tr(gi * ad_x^T g ad_y)
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      Matrix<T> m = ad[x].transpose() * g * ad[y];
      T s(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (!(gi(a, b) == T(0))) s += gi(a, b) * m(a, b);
      ric(x, y) = T(-s) / T(2);
    }
  // second sum: W[x](a,b) = g([b_a, b_b], e_x)
  std::vector<Matrix<T>> w(n, Matrix<T>(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto br = L.bracket_basis(a, b);
      auto low = g * br;
      for (int x = 0; x < n; ++x) w[x](a, b) = low[x];
    }
  std::vector<Matrix<T>> wr(n);
  for (int y = 0; y < n; ++y) wr[y] = gi * w[y] * gi;
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      T s(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (!(w[x](a, b) == T(0))) s += w[x](a, b) * wr[y](a, b);
      ric(x, y) += s / T(4);
      ric(y, x) = ric(x, y);
    }
  return gi * ric;
}

template <class T>
struct NilsolitonResult {
  bool verdict = false;
  T lambda{0};
  Matrix<T> derivation;  // Rc - lambda I
  double residual = 0;
};

// Rc = lambda I + D with D a derivation <=> Rc[x,y] - [Rc x,y] - [x,Rc y] + lambda [x,y] = 0
template <class T>
NilsolitonResult<T> is_nilsoliton(const LieAlgebra<T>& L, const Matrix<T>& g) {
  int n = L.dim();
  Matrix<T> rc = ricci(L, g);
  std::vector<T> lhs, rhs;  // lhs + lambda * rhs = 0
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto b = L.bracket_basis(i, j);
      auto rb = rc * b;
      std::vector<T> ei(n, T(0)), ej(n, T(0));
      ei[i] = T(1), ej[j] = T(1);
      auto t1 = L.bracket(rc * ei, ej);
      auto t2 = L.bracket(ei, rc * ej);
      for (int k = 0; k < n; ++k) {
        lhs.push_back(rb[k] - t1[k] - t2[k]);
        rhs.push_back(b[k]);
      }
    }
  NilsolitonResult<T> res;
  T bb(0), rb(0);
  for (std::size_t k = 0; k < lhs.size(); ++k) bb += rhs[k] * rhs[k], rb += lhs[k] * rhs[k];
  if (bb == T(0)) {
    // abelian: every Rc = 0 is lambda = 0, D = 0
    res.lambda = T(0);
  } else {
    res.lambda = -rb / bb;
  }
  double r2 = 0;
  bool exact_ok = true;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    T v = lhs[k] + res.lambda * rhs[k];
    r2 += to_double(v) * to_double(v);
    if (!(v == T(0))) exact_ok = false;
  }
  res.residual = std::sqrt(r2);
  if constexpr (is_exact_v<T>) res.verdict = exact_ok;
  else res.verdict = res.residual <= tolerance() * (1.0 + rc.max_abs());
  res.derivation = rc - res.lambda * Matrix<T>::identity(n);
  return res;
}

// Lie algebra on the span of the columns of F (must be closed under the bracket), dual basis coordinates
template <class T>
LieAlgebra<T> subalgebra(const LieAlgebra<T>& L, const Matrix<T>& F) {
  int m = F.cols();
  Matrix<T> FtF = F.transpose() * F;
  Matrix<T> pinv = inverse(FtF) * F.transpose();
  std::vector<KForm<T>> d(m, KForm<T>(m, 2));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      auto br = L.bracket(F.col(a), F.col(b));
      auto coords = pinv * br;
      auto back = F * coords;
      for (int k = 0; k < L.dim(); ++k)
        if (!is_zero(T(back[k] - br[k]), L.max_constant())) throw Error("span is not closed under the bracket");
      // [u_a, u_b] = -sum c^k_ab u_k  =>  c^k_ab = -coords[k]
      for (int k = 0; k < m; ++k)
        if (!(coords[k] == T(0))) d[k].add((Mask(1) << a) | (Mask(1) << b), T(-coords[k]));
    }
  return LieAlgebra<T>(std::move(d), L.name() + "|sub");
}

}  // namespace g2nil
