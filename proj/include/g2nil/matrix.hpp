#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace g2nil {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (auto& row : rows) {
      if (static_cast<int>(row.size()) != c_) throw DimensionMismatch("ragged matrix literal");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diag(const std::vector<T>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix column(const std::vector<T>& v) {
    Matrix m(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  std::vector<T> col(int j) const {
    std::vector<T> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(int i) const { return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_}; }
  void set_col(int j, const std::vector<T>& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(int i0, int j0, int nr, int nc) const {
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }
  Matrix cols_subset(const std::vector<int>& js) const {
    Matrix b(r_, static_cast<int>(js.size()));
    for (int i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < js.size(); ++k) b(i, static_cast<int>(k)) = (*this)(i, js[k]);
    return b;
  }
  Matrix hcat(const Matrix& o) const {
    if (r_ != o.r_ && c_ && o.c_) throw DimensionMismatch("hcat row mismatch");
    int rr = c_ ? r_ : o.r_;
    Matrix m(rr, c_ + o.c_);
    for (int i = 0; i < rr; ++i) {
      for (int j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
      for (int j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.check_same(y);
    Matrix m = x;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += y.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.check_same(y);
    Matrix m = x;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= y.a_[k];
    return m;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix m(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k) {
        const T& xik = x(i, k);
        if (xik == T(0)) continue;
        for (int j = 0; j < y.c_; ++j) m(i, j) += xik * y(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& x) {
    Matrix m = x;
    for (auto& v : m.a_) v = s * v;
    return m;
  }
  friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v) {
    if (static_cast<int>(v.size()) != x.c_) throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<T> out(x.r_, T(0));
    for (int i = 0; i < x.r_; ++i)
      for (int j = 0; j < x.c_; ++j) out[i] += x(i, j) * v[j];
    return out;
  }
  Matrix operator-() const { return T(-1) * *this; }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

  T trace() const {
    T t(0);
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }
  double max_abs() const {
    double m = 0;
    for (auto& v : a_) m = std::max(m, std::abs(to_double(v)));
    return m;
  }
  const std::vector<T>& data() const { return a_; }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(i, j) = scalar_cast<U>((*this)(i, j));
    return m;
  }

 private:
  void check_same(const Matrix& y) const {
    if (r_ != y.r_ || c_ != y.c_) throw DimensionMismatch("matrix shape mismatch");
  }
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  for (int i = 0; i < m.rows(); ++i) {
    os << '[';
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << str(m(i, j));
    os << "]\n";
  }
  return os;
}

namespace detail {

// index of pivot row in column j among rows >= i0, or -1
template <class T>
int pick_pivot(const Matrix<T>& m, int i0, int j, double scale) {
  if constexpr (is_exact_v<T>) {
    for (int i = i0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return i;
    return -1;
  } else {
    int best = -1;
    double bv = 0;
    for (int i = i0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > bv) bv = std::abs(m(i, j)), best = i;
    if (best < 0 || bv <= tolerance() * std::max(1.0, scale)) return -1;
    return best;
  }
}

template <class T>
void swap_rows(Matrix<T>& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

// reduced row echelon form in place; returns pivot columns
template <class T>
std::vector<int> rref(Matrix<T>& m) {
  std::vector<int> piv;
  double scale = m.max_abs();
  int r = 0;
  for (int j = 0; j < m.cols() && r < m.rows(); ++j) {
    int p = detail::pick_pivot(m, r, j, scale);
    if (p < 0) {
      if constexpr (!is_exact_v<T>)
        for (int i = r; i < m.rows(); ++i) m(i, j) = 0;
      continue;
    }
    detail::swap_rows(m, r, p);
    T inv = T(1) / m(r, j);
    for (int k = 0; k < m.cols(); ++k) m(r, k) = m(r, k) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, j) == T(0)) continue;
      T f = m(i, j);
      for (int k = 0; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    piv.push_back(j);
    ++r;
  }
  return piv;
}

template <class T>
int rank(Matrix<T> m) { return static_cast<int>(rref(m).size()); }

// columns span the kernel; free-variable basis, deterministic
template <class T>
Matrix<T> nullspace(const Matrix<T>& a) {
  Matrix<T> m = a;
  auto piv = rref(m);
  std::vector<bool> is_piv(a.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free;
  for (int j = 0; j < a.cols(); ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix<T> ns(a.cols(), static_cast<int>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    ns(free[f], static_cast<int>(f)) = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) ns(piv[r], static_cast<int>(f)) = -m(static_cast<int>(r), free[f]);
  }
  return ns;
}

// columns form a basis of the column space (RREF rows of the transpose)
template <class T>
Matrix<T> column_basis(const Matrix<T>& a) {
  Matrix<T> t = a.transpose();
  auto piv = rref(t);
  Matrix<T> b(a.rows(), static_cast<int>(piv.size()));
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (int i = 0; i < a.rows(); ++i) b(i, static_cast<int>(k)) = t(static_cast<int>(k), i);
  return b;
}

template <class T>
T det(Matrix<T> m) {
  if (!m.square()) throw DimensionMismatch("det of non-square matrix");
  int n = m.rows();
  T d(1);
  double scale = m.max_abs();
  for (int j = 0; j < n; ++j) {
    int p = detail::pick_pivot(m, j, j, scale);
    if (p < 0) return T(0);
    if (p != j) {
      detail::swap_rows(m, p, j);
      d = -d;
    }
    d *= m(j, j);
    T inv = T(1) / m(j, j);
    for (int i = j + 1; i < n; ++i) {
      if (m(i, j) == T(0)) continue;
      T f = m(i, j) * inv;
      for (int k = j; k < n; ++k) m(i, k) -= f * m(j, k);
    }
  }
  return d;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.square()) throw DimensionMismatch("inverse of non-square matrix");
  int n = a.rows();
  Matrix<T> aug = a.hcat(Matrix<T>::identity(n));
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw Singular("matrix is singular");
  return aug.block(0, n, n, n);
}

// x with a x = b (a square, nonsingular)
template <class T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
  return inverse(a) * b;
}

template <class T>
bool is_symmetric(const Matrix<T>& m) {
  if (!m.square()) return false;
  double scale = m.max_abs();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (!is_zero(T(m(i, j) - m(j, i)), scale)) return false;
  return true;
}

// leading principal minors (exact) or Cholesky (float)
template <class T>
bool is_positive_definite(const Matrix<T>& g) {
  if (!is_symmetric(g)) return false;
  int n = g.rows();
  if constexpr (is_exact_v<T>) {
    for (int k = 1; k <= n; ++k)
      if (scalar_traits<T>::sign(det(g.block(0, 0, k, k))) <= 0) return false;
    return true;
  } else {
    Matrix<double> l(n, n);
    for (int j = 0; j < n; ++j) {
      double s = g(j, j);
      for (int k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
      if (s <= tolerance() * std::max(1.0, g.max_abs())) return false;
      l(j, j) = std::sqrt(s);
      for (int i = j + 1; i < n; ++i) {
        double t = g(i, j);
        for (int k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
        l(i, j) = t / l(j, j);
      }
    }
    return true;
  }
}

template <class T>
void require_positive_definite(const Matrix<T>& g) {
  if (!is_positive_definite(g)) throw NotPositiveDefinite("metric is not positive definite");
}

template <class T>
T dot(const std::vector<T>& x, const Matrix<T>& g, const std::vector<T>& y) {
  T s(0);
  for (int i = 0; i < g.rows(); ++i) {
    if (x[i] == T(0)) continue;
    for (int j = 0; j < g.cols(); ++j) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

// Gram matrix B^T g B of the columns of B
template <class T>
Matrix<T> gram(const Matrix<T>& b, const Matrix<T>& g) {
  return b.transpose() * g * b;
}

// g-orthonormalize columns in order (float); preserves the orientation of the span
inline Matrix<double> gram_schmidt(const Matrix<double>& b, const Matrix<double>& g) {
  Matrix<double> q(b.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    std::vector<double> v = b.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) {
        auto qk = q.col(k);
        double c = dot(qk, g, v);
        for (int i = 0; i < b.rows(); ++i) v[i] -= c * qk[i];
      }
    double n = std::sqrt(dot(v, g, v));
    if (n <= tolerance()) throw Singular("dependent vectors in Gram-Schmidt");
    for (auto& x : v) x /= n;
    q.set_col(j, v);
  }
  return q;
}

}  // namespace g2nil
