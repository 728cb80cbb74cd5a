#pragma once

#include <optional>

#include "liealg.hpp"

namespace g2nil {

template <class T>
KForm<T> phi_standard() {
  return form_from_terms<T>(7, {{{1, 2, 7}, 1},
                                {{3, 4, 7}, 1},
                                {{5, 6, 7}, 1},
                                {{1, 3, 5}, 1},
                                {{1, 4, 6}, -1},
                                {{2, 3, 6}, -1},
                                {{2, 4, 5}, -1}});
}

template <class T>
KForm<T> star_phi_standard() {
  return form_from_terms<T>(7, {{{1, 2, 3, 4}, 1},
                                {{1, 2, 5, 6}, 1},
                                {{3, 4, 5, 6}, 1},
                                {{1, 3, 6, 7}, 1},
                                {{1, 4, 5, 7}, 1},
                                {{2, 3, 5, 7}, 1},
                                {{2, 4, 6, 7}, -1}});
}

template <class T>
KForm<T> omega_standard() {
  return form_from_terms<T>(6, {{{1, 2}, 1}, {{3, 4}, 1}, {{5, 6}, 1}});
}
template <class T>
KForm<T> psi_plus_standard() {
  return form_from_terms<T>(6, {{{1, 3, 5}, 1}, {{1, 4, 6}, -1}, {{2, 3, 6}, -1}, {{2, 4, 5}, -1}});
}
template <class T>
KForm<T> psi_minus_standard() {
  return form_from_terms<T>(6, {{{1, 3, 6}, 1}, {{1, 4, 5}, 1}, {{2, 3, 5}, 1}, {{2, 4, 6}, -1}});
}

template <class T>
struct G2Structure {
  KForm<T> phi;
  KForm<T> star_phi;
  Matrix<T> metric;
  T volume{1};                      // vol_phi = volume * e^{1..7}
  std::optional<Matrix<T>> coframe;  // rows: adapted covectors, when known
  int orientation() const { return scalar_traits<T>::sign(volume) < 0 ? -1 : 1; }
};

template <class T>
struct InducedMetric {
  Matrix<T> metric;
  T volume;
};

// g(v,w) vol = 1/6 (v -| phi) ^ (w -| phi) ^ phi, normalized by det(b)^(1/9)
template <class T>
InducedMetric<T> induced_metric_from_form(const KForm<T>& phi) {
  if (phi.dim() != 7 || phi.degree() != 3) throw DimensionMismatch("need a 3-form in dimension 7");
  Matrix<T> b(7, 7);
  std::vector<KForm<T>> ip;
  for (int i = 0; i < 7; ++i) {
    std::vector<T> e(7, T(0));
    e[i] = T(1);
    ip.push_back(interior(e, phi));
  }
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      b(i, j) = wedge(wedge(ip[i], ip[j]), phi).top() / T(6);
      b(j, i) = b(i, j);
    }
  bool pos = is_positive_definite(b), neg = is_positive_definite(Matrix<T>(-b));
  if (!pos && !neg) throw NotNondegenerate("3-form is not definite");
  // det(b) < 0 for negative definite b, so the real root flips the orientation by itself
  T v = scalar_traits<T>::root(det(b), 9);
  return {T(T(1) / v) * b, v};
}

template <class T>
G2Structure<T> g2_from_form(const KForm<T>& phi) {
  auto im = induced_metric_from_form(phi);
  G2Structure<T> s;
  s.phi = phi;
  s.metric = im.metric;
  s.volume = im.volume;
  s.star_phi = hodge_with_volume(phi, s.metric, s.volume);
  return s;
}

// coframe rows are e^i = sum_j C(i,j) f^j
template <class T>
G2Structure<T> phi_from_coframe(const Matrix<T>& c) {
  if (c.rows() != 7 || c.cols() != 7) throw DimensionMismatch("coframe must be 7 covectors in dimension 7");
  T d = det(c);
  if (is_zero(d, c.max_abs())) throw NotNondegenerate("coframe covectors are linearly dependent");
  G2Structure<T> s;
  s.phi = substitute(phi_standard<T>(), c);
  s.star_phi = substitute(star_phi_standard<T>(), c);
  s.metric = c.transpose() * c;
  s.volume = d;
  s.coframe = c;
  return s;
}

template <class T>
struct TorsionReport {
  bool coclosed = false;
  T tau0{0};
  bool purely_coclosed = false;
  double dstar_residual = 0;  // max |coefficient| of d*phi
  double tau0_residual = 0;   // |tau0|
};

template <class T>
TorsionReport<T> torsion_class(const G2Structure<T>& s, const LieAlgebra<T>& L) {
  if (L.dim() != 7) throw DimensionMismatch("torsion_class needs a 7-dimensional algebra");
  TorsionReport<T> r;
  double cmax = std::max(1.0, L.max_constant());
  KForm<T> ds = ce_diff(L, s.star_phi);
  r.dstar_residual = ds.max_abs();
  r.coclosed = ds.is_zero_form(cmax * std::max(1.0, s.star_phi.max_abs()));
  KForm<T> dphi = ce_diff(L, s.phi);
  T top = wedge(dphi, s.phi).top();
  r.tau0 = top / (T(7) * s.volume);
  r.tau0_residual = std::abs(to_double(r.tau0));
  double pscale = cmax * std::max(1.0, s.phi.max_abs() * s.phi.max_abs() / std::abs(to_double(s.volume)));
  r.purely_coclosed = r.coclosed && is_zero(r.tau0, pscale);
  return r;
}

template <class T>
struct SU3Structure {
  KForm<T> omega, psi_plus, psi_minus;  // on the 6-dim space with basis the columns of frame
  Matrix<T> metric;                     // h = F^T g F
  Matrix<T> J;                          // omega(u, v) = h(J u, v)
  Matrix<T> frame;                      // 7 x 6, spans z^perp
  Matrix<T> coframe;                    // 6 x 7, coframe * frame = I, coframe * z = 0
  std::vector<T> z;
  std::vector<T> z_flat;
};

// frame: optional 7x6 basis of z^perp (defaults to a free-variable kernel basis)
template <class T>
SU3Structure<T> su3_reduce(const G2Structure<T>& s, const std::vector<T>& z, std::optional<Matrix<T>> frame = {}) {
  if (z.size() != 7) throw DimensionMismatch("z must have 7 coordinates");
  const Matrix<T>& g = s.metric;
  T n2 = dot(z, g, z);
  if (!is_zero(T(n2 - T(1)))) throw Error("z is not a unit vector for the induced metric");
  std::vector<T> zf = g * z;
  SU3Structure<T> u;
  u.z = z;
  u.z_flat = zf;
  if (frame) {
    u.frame = *frame;
    if (u.frame.rows() != 7 || u.frame.cols() != 6) throw DimensionMismatch("frame must be 7 x 6");
    for (int a = 0; a < 6; ++a)
      if (!is_zero(dot(u.frame.col(a), g, z))) throw Error("frame is not orthogonal to z");
  } else {
    Matrix<T> row(1, 7);
    for (int j = 0; j < 7; ++j) row(0, j) = zf[j];
    u.frame = nullspace(row);
  }
  Matrix<T> full = u.frame.hcat(Matrix<T>::column(z));
  Matrix<T> inv = inverse(full);
  u.coframe = inv.block(0, 0, 6, 7);
  KForm<T> zflat = KForm<T>::covector(zf);
  KForm<T> om = interior(z, s.phi);
  KForm<T> pp = s.phi - wedge(om, zflat);
  KForm<T> pm = -interior(z, s.star_phi);
  u.omega = substitute(om, u.frame);
  u.psi_plus = substitute(pp, u.frame);
  u.psi_minus = substitute(pm, u.frame);
  u.metric = gram(u.frame, g);
  Matrix<T> Om(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) Om(a, b) = u.omega.coeff(std::vector<int>{a + 1, b + 1});
  u.J = -(inverse(u.metric) * Om);
  return u;
}

// phi = omega ^ z_flat + psi_plus, lifted through the stored coframe
template <class T>
KForm<T> phi_from_su3(const SU3Structure<T>& u) {
  KForm<T> om = substitute(u.omega, u.coframe);
  KForm<T> pp = substitute(u.psi_plus, u.coframe);
  return wedge(om, KForm<T>::covector(u.z_flat)) + pp;
}

template <class T>
bool su3_compatible(const SU3Structure<T>& u) {
  return wedge(u.omega, u.psi_plus).is_zero_form() && wedge(u.omega, u.psi_minus).is_zero_form();
}

// psi_+ ^ psi_- = 2/3 omega^3
template <class T>
bool su3_normalized(const SU3Structure<T>& u) {
  KForm<T> l = wedge(u.psi_plus, u.psi_minus);
  KForm<T> r = T(2) / T(3) * wedge(wedge(u.omega, u.omega), u.omega);
  return l.approx(r);
}

template <class T>
bool is_half_flat(const SU3Structure<T>& u, const LieAlgebra<T>& L6) {
  if (L6.dim() != 6) throw DimensionMismatch("half-flat test needs a 6-dimensional algebra");
  double sc = std::max(1.0, L6.max_constant());
  KForm<T> dw = ce_diff(L6, u.omega);
  return wedge(dw, u.omega).is_zero_form(sc) && ce_diff(L6, u.psi_minus).is_zero_form(sc);
}

template <class T>
bool is_special(const SU3Structure<T>& u, const LieAlgebra<T>& L6) {
  if (!is_half_flat(u, L6)) return false;
  return wedge(ce_diff(L6, u.omega), u.psi_plus).is_zero_form(std::max(1.0, L6.max_constant()));
}

template <class T>
struct CalibrationResult {
  bool calibrated = false;   // phi(w1,w2,w3)^2 == det Gram
  bool interior_test = false;  // w1 -| w2 -| w3 -| *phi == 0
  T phi_value{0};
  T gram_det{0};
};

// W: 7 x 3, columns span the plane
template <class T>
CalibrationResult<T> calibrates(const G2Structure<T>& s, const Matrix<T>& w) {
  if (w.rows() != 7 || w.cols() != 3) throw DimensionMismatch("calibration needs a 3-plane in dimension 7");
  CalibrationResult<T> r;
  r.phi_value = evaluate(s.phi, w);
  r.gram_det = det(gram(w, s.metric));
  if (is_zero(r.gram_det)) throw NotNondegenerate("plane basis is dependent");
  double scale = std::max(1.0, std::abs(to_double(r.gram_det)));
  r.calibrated = is_zero(T(r.phi_value * r.phi_value - r.gram_det), scale);
  KForm<T> c = s.star_phi;
  for (int j = 2; j >= 0; --j) c = interior(w.col(j), c);
  r.interior_test = c.is_zero_form(scale);
  return r;
}

}  // namespace g2nil
