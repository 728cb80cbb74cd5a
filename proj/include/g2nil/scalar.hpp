#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "config.hpp"
#include "error.hpp"

namespace g2nil {

namespace mp = boost::multiprecision;
using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

enum class Mode { Exact, Float };

inline std::string to_string(const Rational& q) {
  if (mp::denominator(q) == 1) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

// floor(n^(1/k)) for n >= 0
inline Integer iroot(const Integer& n, unsigned k) {
  if (n < 0) throw Error("iroot of negative integer");
  if (n < 2) return n;
  unsigned bits = static_cast<unsigned>(mp::msb(n)) / k + 1;
  Integer lo = 0, hi = Integer(1) << (bits + 1);
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (mp::pow(mid, k) <= n) lo = mid; else hi = mid;
  }
  return lo;
}

// exact k-th root of a rational, odd k accepts negatives
inline bool exact_root(const Rational& q, unsigned k, Rational& out) {
  if (q < 0 && k % 2 == 0) return false;
  bool neg = q < 0;
  Integer p = mp::abs(mp::numerator(q)), d = mp::denominator(q);
  Integer rp = iroot(p, k), rd = iroot(d, k);
  if (mp::pow(rp, k) != p || mp::pow(rd, k) != d) return false;
  out = Rational(rp, rd);
  if (neg) out = -out;
  return true;
}

// "3", "-7/4", "0.125", "1e-3", "2.5E2"
inline Rational parse_rational(std::string_view s) {
  auto fail = [&] { throw ParseError("not a rational number: '" + std::string(s) + "'"); };
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) fail();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational a = parse_rational(s.substr(0, slash)), b = parse_rational(s.substr(slash + 1));
    if (b == 0) fail();
    return a / b;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  Integer mant = 0;
  long exp10 = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      digits = true;
      if (dot) --exp10;
    } else if (c == '.' && !dot) {
      dot = true;
    } else break;
  }
  if (!digits) fail();
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail();
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i >= s.size()) fail();
    long e = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail();
      e = e * 10 + (s[i] - '0');
      if (e > 10000) fail();
    }
    exp10 += eneg ? -e : e;
  }
  Rational r(mant);
  if (exp10 > 0) r *= Rational(mp::pow(Integer(10), static_cast<unsigned>(exp10)));
  if (exp10 < 0) r /= Rational(mp::pow(Integer(10), static_cast<unsigned>(-exp10)));
  return neg ? Rational(-r) : r;
}

// a + b sqrt(D), D squarefree > 1
template <int D>
struct Quadratic {
  static_assert(D > 1);
  Rational a, b;

  Quadratic() = default;
  Quadratic(int x) : a(x), b(0) {}
  Quadratic(Rational x) : a(std::move(x)), b(0) {}
  Quadratic(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

  friend Quadratic operator+(const Quadratic& x, const Quadratic& y) { return {x.a + y.a, x.b + y.b}; }
  friend Quadratic operator-(const Quadratic& x, const Quadratic& y) { return {x.a - y.a, x.b - y.b}; }
  friend Quadratic operator*(const Quadratic& x, const Quadratic& y) {
    return {x.a * y.a + D * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend Quadratic operator/(const Quadratic& x, const Quadratic& y) {
    Rational n = y.a * y.a - D * y.b * y.b;
    if (n == 0) throw Singular("division by zero");
    return x * Quadratic(y.a / n, -y.b / n);
  }
  Quadratic operator-() const { return {-a, -b}; }
  Quadratic& operator+=(const Quadratic& y) { return *this = *this + y; }
  Quadratic& operator-=(const Quadratic& y) { return *this = *this - y; }
  Quadratic& operator*=(const Quadratic& y) { return *this = *this * y; }
  Quadratic& operator/=(const Quadratic& y) { return *this = *this / y; }
  friend bool operator==(const Quadratic& x, const Quadratic& y) { return x.a == y.a && x.b == y.b; }

  int sign() const {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    // opposite signs: compare a^2 with D b^2
    Rational l = a * a, r = D * b * b;
    if (l == r) return 0;
    return l > r ? sa : sb;
  }
  double to_double() const {
    return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(static_cast<double>(D));
  }
};

template <int D>
std::string to_string(const Quadratic<D>& q) {
  if (q.b == 0) return to_string(q.a);
  std::string rad = "sqrt(" + std::to_string(D) + ")";
  std::string tail = q.b == 1 ? rad : q.b == -1 ? "-" + rad : to_string(q.b) + "*" + rad;
  if (q.a == 0) return tail;
  return to_string(q.a) + (tail[0] == '-' ? "" : "+") + tail;
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr Mode mode = Mode::Float;
  static bool is_zero(double x, double scale = 1.0) { return std::abs(x) <= tolerance() * std::max(1.0, scale); }
  static int sign(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
  static double abs(double x) { return std::abs(x); }
  static double to_double(double x) { return x; }
  static double from_rational(const Rational& q) { return static_cast<double>(q); }
  static double sqrt(double x) {
    if (x < 0) {
      if (x > -tolerance()) return 0.0;
      throw InexactValue("sqrt of negative value");
    }
    return std::sqrt(x);
  }
  static double root(double x, unsigned k) {
    return x < 0 ? -std::pow(-x, 1.0 / k) : std::pow(x, 1.0 / k);
  }
  static std::string str(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::Exact;
  static bool is_zero(const Rational& x, double = 1.0) { return x == 0; }
  static int sign(const Rational& x) { return x.sign(); }
  static Rational abs(const Rational& x) { return mp::abs(x); }
  static double to_double(const Rational& x) { return static_cast<double>(x); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational sqrt(const Rational& x) { return root(x, 2); }
  static Rational root(const Rational& x, unsigned k) {
    Rational r;
    if (!exact_root(x, k, r)) throw InexactValue(std::to_string(k) + "-th root of " + to_string(x) + " is not rational");
    return r;
  }
  static std::string str(const Rational& x) { return to_string(x); }
};

template <int D>
struct scalar_traits<Quadratic<D>> {
  using Q = Quadratic<D>;
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::Exact;
  static bool is_zero(const Q& x, double = 1.0) { return x.a == 0 && x.b == 0; }
  static int sign(const Q& x) { return x.sign(); }
  static Q abs(const Q& x) { return x.sign() < 0 ? -x : x; }
  static double to_double(const Q& x) { return x.to_double(); }
  static Q from_rational(const Rational& q) { return Q(q); }
  static Q sqrt(const Q& x) {
    if (x.b == 0) {
      Rational r;
      if (exact_root(x.a, 2, r)) return Q(r);
      if (exact_root(x.a / D, 2, r)) return Q(0, r);
    }
    throw InexactValue("square root of " + to_string(x) + " leaves Q(sqrt(" + std::to_string(D) + "))");
  }
  static Q root(const Q& x, unsigned k) {
    if (k == 2) return sqrt(x);
    Rational r;
    if (x.b == 0 && exact_root(x.a, k, r)) return Q(r);
    throw InexactValue("root not representable");
  }
  static std::string str(const Q& x) { return to_string(x); }
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <class T>
bool is_zero(const T& x, double scale = 1.0) { return scalar_traits<T>::is_zero(x, scale); }

template <class T>
std::string str(const T& x) { return scalar_traits<T>::str(x); }

template <class T>
double to_double(const T& x) { return scalar_traits<T>::to_double(x); }

// exact: literal equality; float: relative tolerance
template <class T>
bool same_value(const T& x, const T& y) {
  if constexpr (is_exact_v<T>) return x == y;
  else return approx_equal(x, y);
}

template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) return x;
  else if constexpr (std::is_same_v<To, double>) return scalar_traits<From>::to_double(x);
  else if constexpr (std::is_same_v<From, Rational>) return To(x);
  else static_assert(sizeof(To) == 0, "unsupported scalar conversion");
}

}  // namespace g2nil
