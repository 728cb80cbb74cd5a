#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace g2nil {

using Mask = std::uint32_t;

// 1-based sorted indices <-> bitmask (bit i-1 set for index i)
inline Mask mask_of(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << (i - 1);
  return m;
}
inline std::vector<int> indices_of(Mask m) {
  std::vector<int> v;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) v.push_back(i + 1);
  return v;
}
inline int popcount(Mask m) { return std::popcount(m); }

// e^A ^ e^B = wedge_sign(A,B) e^{A|B} for disjoint A, B
inline int wedge_sign(Mask a, Mask b) {
  int inv = 0;
  for (Mask bb = b; bb; bb &= bb - 1) {
    int j = std::countr_zero(bb);
    inv += std::popcount(a >> (j + 1));
  }
  return inv & 1 ? -1 : 1;
}

// all masks of given popcount within n bits, lexicographic in index tuples
inline std::vector<Mask> combinations(int n, int k) {
  std::vector<Mask> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  if (k > n) return out;
  while (true) {
    out.push_back(mask_of(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// sign of the permutation sorting idx; 0 when an index repeats
inline int sort_sign(std::vector<int>& idx) {
  int inv = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      inv += idx[i] > idx[j];
    }
  std::sort(idx.begin(), idx.end());
  return inv % 2 ? -1 : 1;
}

template <class T>
class KForm {
 public:
  using Term = std::pair<Mask, T>;

  KForm() = default;
  KForm(int dim, int degree) : n_(dim), k_(degree) {
    if (dim < 1 || dim > 7) throw DimensionMismatch("ambient dimension must be 1..7");
    if (degree < 0 || degree > dim) throw DegreeOverflow("degree out of range");
  }

  static KForm scalar(int dim, const T& c) {
    KForm f(dim, 0);
    f.add(0, c);
    return f;
  }
  // c e^{i1...ik}; indices in any order, sign resolved here
  static KForm monomial(int dim, std::vector<int> idx, const T& c = T(1)) {
    KForm f(dim, static_cast<int>(idx.size()));
    for (int i : idx)
      if (i < 1 || i > dim) throw DimensionMismatch("index out of range");
    int s = sort_sign(idx);
    if (s == 0) return f;
    f.add(mask_of(idx), s > 0 ? c : T(-c));
    return f;
  }
  static KForm covector(const std::vector<T>& v) {
    KForm f(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) f.add(Mask(1) << i, v[i]);
    return f;
  }

  int dim() const { return n_; }
  int degree() const { return k_; }
  const std::vector<Term>& terms() const { return t_; }
  bool empty() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  T coeff(Mask m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, Mask b) { return a.first < b; });
    return it != t_.end() && it->first == m ? it->second : T(0);
  }
  T coeff(const std::vector<int>& idx) const {
    std::vector<int> v = idx;
    int s = sort_sign(v);
    if (s == 0) return T(0);
    T c = coeff(mask_of(v));
    return s > 0 ? c : T(-c);
  }
  // coefficient of e^{1...n}
  T top() const { return k_ == n_ ? coeff((Mask(1) << n_) - 1) : T(0); }

  void add(Mask m, const T& c) {
    if (popcount(m) != k_) throw DegreeOverflow("term degree mismatch");
    if (c == T(0)) return;
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, Mask b) { return a.first < b; });
    if (it != t_.end() && it->first == m) {
      it->second += c;
      if (it->second == T(0)) t_.erase(it);
    } else {
      t_.insert(it, {m, c});
    }
  }

  KForm& operator+=(const KForm& o) {
    check(o);
    *this = merge(*this, o, 1);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check(o);
    *this = merge(*this, o, -1);
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(const T& s, const KForm& a) {
    KForm f(a.n_, a.k_);
    if (s == T(0)) return f;
    f.t_.reserve(a.t_.size());
    for (auto& [m, c] : a.t_) {
      T v = s * c;
      if (!(v == T(0))) f.t_.push_back({m, v});
    }
    return f;
  }
  KForm operator-() const { return T(-1) * *this; }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.t_ == b.t_;
  }

  // float: entries within eps relative to the larger max coefficient
  bool approx(const KForm& o, double eps = tolerance()) const {
    if (n_ != o.n_ || k_ != o.k_) return false;
    if constexpr (is_exact_v<T>) return *this == o;
    else {
      double scale = std::max({1.0, max_abs(), o.max_abs()});
      KForm d = *this - o;
      return d.max_abs() <= eps * scale;
    }
  }
  bool is_zero_form(double scale = 1.0) const {
    if constexpr (is_exact_v<T>) return t_.empty();
    else return max_abs() <= tolerance() * std::max(1.0, scale);
  }
  double max_abs() const {
    double m = 0;
    for (auto& [k, c] : t_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  // terms in lexicographic order of their index tuples
  std::vector<std::pair<std::vector<int>, T>> sorted_terms() const {
    std::vector<std::pair<std::vector<int>, T>> v;
    for (auto& [m, c] : t_) v.push_back({indices_of(m), c});
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
  }

  std::string str(const std::string& letter = "e") const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [idx, c] : sorted_terms()) {
      std::string cs = g2nil::str(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs.erase(0, 1);
      s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (cs != "1" || idx.empty()) s += cs + (idx.empty() ? "" : "*");
      if (!idx.empty()) {
        s += letter + "^";
        for (int i : idx) s += std::to_string(i);
      }
    }
    return s;
  }

  template <class U>
  KForm<U> cast() const {
    KForm<U> f(n_, k_);
    for (auto& [m, c] : t_) f.add(m, scalar_cast<U>(c));
    return f;
  }

 private:
  void check(const KForm& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw DimensionMismatch("form dimension/degree mismatch");
  }
  static KForm merge(const KForm& a, const KForm& b, int sgn) {
    KForm r(a.n_, a.k_);
    r.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
        r.t_.push_back(a.t_[i++]);
      } else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first) {
        r.t_.push_back({b.t_[j].first, sgn > 0 ? b.t_[j].second : T(-b.t_[j].second)});
        ++j;
      } else {
        T v = sgn > 0 ? T(a.t_[i].second + b.t_[j].second) : T(a.t_[i].second - b.t_[j].second);
        if (!(v == T(0))) r.t_.push_back({a.t_[i].first, v});
        ++i, ++j;
      }
    }
    return r;
  }

  int n_ = 0, k_ = 0;
  std::vector<Term> t_;
};

template <class T>
KForm<T> wedge(const KForm<T>& a, const KForm<T>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms on different spaces");
  if (a.degree() + b.degree() > a.dim()) throw DegreeOverflow("wedge degree exceeds dimension");
  std::map<Mask, T> acc;
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      T v = ca * cb;
      if (wedge_sign(ma, mb) < 0) v = -v;
      auto [it, fresh] = acc.try_emplace(ma | mb, v);
      if (!fresh) it->second += v;
    }
  KForm<T> r(a.dim(), a.degree() + b.degree());
  for (auto& [m, c] : acc) r.add(m, c);
  return r;
}

// v ⌟ a, contraction in the first slot
template <class T>
KForm<T> interior(const std::vector<T>& v, const KForm<T>& a) {
  if (a.degree() < 1) throw DegreeOverflow("interior product of a 0-form");
  if (static_cast<int>(v.size()) != a.dim()) throw DimensionMismatch("vector/form dimension mismatch");
  KForm<T> r(a.dim(), a.degree() - 1);
  for (auto& [m, c] : a.terms()) {
    int pos = 0;
    for (Mask mm = m; mm; mm &= mm - 1, ++pos) {
      int i = std::countr_zero(mm);
      if (v[i] == T(0)) continue;
      T x = v[i] * c;
      r.add(m & ~(Mask(1) << i), pos % 2 ? T(-x) : x);
    }
  }
  return r;
}

// pullback along e^i = sum_j C(i,j) f^j; C has one row per old covector, one column per new
template <class T>
KForm<T> substitute(const KForm<T>& a, const Matrix<T>& c) {
  if (c.rows() != a.dim()) throw DimensionMismatch("substitution matrix rows must match form dimension");
  int n = c.cols();
  if (a.degree() > n) return KForm<T>(n, 0);
  std::vector<KForm<T>> lin;
  for (int i = 0; i < c.rows(); ++i) lin.push_back(KForm<T>::covector(c.row(i)));
  KForm<T> r(n, a.degree());
  for (auto& [m, coef] : a.terms()) {
    KForm<T> p = KForm<T>::scalar(n, coef);
    for (int i : indices_of(m)) {
      p = wedge(p, lin[i - 1]);
      if (p.empty()) break;
    }
    r += p;
  }
  return r;
}

// a(v_1, ..., v_k) with vectors as columns of vs
template <class T>
T evaluate(const KForm<T>& a, const Matrix<T>& vs) {
  if (vs.cols() != a.degree() || vs.rows() != a.dim()) throw DimensionMismatch("evaluate: need k vectors of dimension n");
  KForm<T> r = a;
  for (int j = 0; j < vs.cols(); ++j) r = interior(vs.col(j), r);
  return r.empty() ? T(0) : r.terms().front().second;
}

namespace detail {

template <class T>
T minor_of(const Matrix<T>& m, Mask rows, Mask cols) {
  auto ri = indices_of(rows), ci = indices_of(cols);
  int k = static_cast<int>(ri.size());
  if (k == 0) return T(1);
  Matrix<T> s(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) s(a, b) = m(ri[a] - 1, ci[b] - 1);
  return det(s);
}

template <class T>
bool is_identity(const Matrix<T>& g) {
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (!(g(i, j) == T(i == j ? 1 : 0))) return false;
  return true;
}

}  // namespace detail

// <a, b> induced by g on k-forms: <e^I, e^J> = det(g^{-1}[I, J])
template <class T>
T form_inner(const KForm<T>& a, const KForm<T>& b, const Matrix<T>& g) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) throw DimensionMismatch("form_inner: degree mismatch");
  if (g.rows() != a.dim()) throw DimensionMismatch("metric dimension mismatch");
  T s(0);
  if (detail::is_identity(g)) {
    for (auto& [m, c] : a.terms()) s += c * b.coeff(m);
    return s;
  }
  Matrix<T> gi = inverse(g);
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) s += ca * cb * detail::minor_of(gi, ma, mb);
  return s;
}

template <class T>
T form_norm2(const KForm<T>& a, const Matrix<T>& g) { return form_inner(a, a, g); }

// * with a known signed volume coefficient: vol_g = signed_vol * e^{1..n}
template <class T>
KForm<T> hodge_with_volume(const KForm<T>& a, const Matrix<T>& g, const T& signed_vol) {
  int n = a.dim(), k = a.degree();
  if (g.rows() != n || g.cols() != n) throw DimensionMismatch("metric dimension mismatch");
  Mask full = (Mask(1) << n) - 1;
  KForm<T> r(n, n - k);
  Matrix<T> gi = inverse(g);
  for (Mask j : combinations(n, k)) {
    T ip(0);
    for (auto& [m, c] : a.terms()) ip += c * detail::minor_of(gi, j, m);
    if (ip == T(0)) continue;
    T v = ip * signed_vol;
    r.add(full & ~j, wedge_sign(j, full & ~j) > 0 ? v : T(-v));
  }
  return r;
}

// * with respect to g and orientation o (sign of e^{1..n}); exact mode needs sqrt(det g) in the field
template <class T>
KForm<T> hodge(const KForm<T>& a, const Matrix<T>& g, int orientation = 1) {
  int n = a.dim();
  if (g.rows() != n || g.cols() != n) throw DimensionMismatch("metric dimension mismatch");
  if (orientation != 1 && orientation != -1) throw Error("orientation must be +1 or -1");
  if (detail::is_identity(g)) {
    Mask full = (Mask(1) << n) - 1;
    KForm<T> r(n, n - a.degree());
    for (auto& [m, c] : a.terms()) {
      T v = wedge_sign(m, full & ~m) * orientation > 0 ? c : T(-c);
      r.add(full & ~m, v);
    }
    return r;
  }
  require_positive_definite(g);
  T vol = scalar_traits<T>::sqrt(det(g));
  return hodge_with_volume(a, g, orientation < 0 ? T(-vol) : vol);
}

// standard basis objects

template <class T>
KForm<T> form_from_terms(int dim, std::initializer_list<std::pair<std::vector<int>, int>> terms) {
  if (terms.size() == 0) throw Error("form_from_terms needs at least one term");
  KForm<T> f(dim, static_cast<int>(terms.begin()->first.size()));
  for (auto& [idx, c] : terms) f += KForm<T>::monomial(dim, idx, T(c));
  return f;
}

// self-dual basis on an oriented orthonormal 4-frame
template <class T>
std::array<KForm<T>, 3> sigma_basis() {
  return {form_from_terms<T>(4, {{{1, 3}, 1}, {{2, 4}, -1}}),
          form_from_terms<T>(4, {{{1, 4}, -1}, {{2, 3}, -1}}),
          form_from_terms<T>(4, {{{1, 2}, 1}, {{3, 4}, 1}})};
}

}  // namespace g2nil
