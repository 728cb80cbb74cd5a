#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "exterior.hpp"

namespace g2nil {

// Small arithmetic language used for coframes, structure equations and parameters:
//   numbers (1, 0.6, 3/4), parameters, + - * / ^ (integer exponents), unary minus, parentheses, sqrt(.)
//   f<digits> is a basis monomial: f5 is a covector, f12 the 2-form f^1 ^ f^2.
// A value is either a scalar or a homogeneous form times scalars; products of two forms are rejected.

template <class T>
struct ExprValue {
  T scalar{0};
  std::optional<KForm<T>> form;
};

template <class T>
class ExprParser {
 public:
  ExprParser(std::string_view src, int dim, const std::map<std::string, T>& params)
      : s_(src), dim_(dim), params_(params) {}

  ExprValue<T> parse() {
    ExprValue<T> v = sum();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return v;
  }

 private:
  using V = ExprValue<T>;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression \"" + std::string(s_) + "\" at " + std::to_string(p_) + ": " + what);
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }

  V add(V a, const V& b, bool minus) {
    if (!a.form && !b.form) {
      a.scalar = minus ? T(a.scalar - b.scalar) : T(a.scalar + b.scalar);
      return a;
    }
    // a bare zero scalar is the additive identity of every degree
    if (!a.form && is_zero(a.scalar)) return minus ? neg(b) : b;
    if (!b.form && is_zero(b.scalar)) return a;
    if (!a.form || !b.form) fail("cannot add a scalar to a form");
    if (a.form->degree() != b.form->degree()) fail("cannot add forms of different degrees");
    if (minus) *a.form -= *b.form;
    else *a.form += *b.form;
    return a;
  }
  V neg(V a) {
    if (a.form) *a.form = T(-1) * *a.form;
    else a.scalar = -a.scalar;
    return a;
  }
  V mul(const V& a, const V& b) {
    if (a.form && b.form) fail("product of two forms; write f12 for f^1 ^ f^2");
    if (a.form) return V{T(0), b.scalar * *a.form};
    if (b.form) return V{T(0), a.scalar * *b.form};
    return V{a.scalar * b.scalar, std::nullopt};
  }
  T scalar_of(const V& v, const char* what) {
    if (v.form) fail(std::string(what) + " needs a scalar operand");
    return v.scalar;
  }

  V sum() {
    V v = product();
    for (;;) {
      if (eat('+')) v = add(v, product(), false);
      else if (eat('-')) v = add(v, product(), true);
      else return v;
    }
  }
  V product() {
    V v = unary();
    for (;;) {
      if (eat('*')) {
        v = mul(v, unary());
      } else if (eat('/')) {
        T d = scalar_of(unary(), "division");
        if (is_zero(d)) fail("division by zero");
        v = mul(v, V{T(T(1) / d), std::nullopt});
      } else {
        return v;
      }
    }
  }
  V unary() {
    if (eat('-')) return neg(unary());
    if (eat('+')) return unary();
    return power();
  }
  V power() {
    V base = atom();
    if (!eat('^')) return base;
    T b = scalar_of(base, "'^'");
    T e = scalar_of(unary(), "'^'");
    double ed = to_double(e);
    long n = std::lround(ed);
    if (std::abs(ed - static_cast<double>(n)) > 0 || std::abs(n) > 64) {
      // only x^(1/2) among fractional exponents
      if constexpr (is_exact_v<T>) {
        if (!(e == T(Rational(1, 2)))) fail("only integer exponents and 1/2 are supported");
      } else {
        if (ed != 0.5) fail("only integer exponents and 1/2 are supported");
      }
      return V{scalar_traits<T>::sqrt(b), std::nullopt};
    }
    T r(1);
    for (long i = 0; i < std::abs(n); ++i) r = r * b;
    if (n < 0) {
      if (is_zero(r)) fail("zero to a negative power");
      r = T(1) / r;
    }
    return V{r, std::nullopt};
  }
  V atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end of input");
    char c = s_[p_];
    if (c == '(') {
      ++p_;
      V v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }
  V number() {
    std::size_t b = p_;
    while (p_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[p_])) || s_[p_] == '.')) ++p_;
    if (p_ < s_.size() && (s_[p_] == 'e' || s_[p_] == 'E')) {
      std::size_t q = p_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        p_ = q;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      }
    }
    Rational q;
    try {
      q = parse_rational(s_.substr(b, p_ - b));
    } catch (const Error&) {
      fail("bad number");
    }
    return V{scalar_traits<T>::from_rational(q), std::nullopt};
  }
  V name() {
    std::size_t b = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
    std::string id(s_.substr(b, p_ - b));
    if (id == "sqrt") {
      if (!eat('(')) fail("sqrt needs parentheses");
      V arg = sum();
      if (!eat(')')) fail("missing ')'");
      T x = scalar_of(arg, "sqrt");
      if (scalar_traits<T>::sign(x) < 0) fail("sqrt of a negative number");
      return V{scalar_traits<T>::sqrt(x), std::nullopt};
    }
    if (auto it = params_.find(id); it != params_.end()) return V{it->second, std::nullopt};
    if (id.size() >= 2 && id[0] == 'f' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
      std::vector<int> idx;
      for (std::size_t i = 1; i < id.size(); ++i) {
        int k = id[i] - '0';
        if (k < 1 || k > dim_) fail("basis index out of range in " + id);
        idx.push_back(k);
      }
      if (dim_ < 1) fail("basis covectors are not allowed here");
      return V{T(0), KForm<T>::monomial(dim_, idx)};
    }
    fail("unknown name '" + id + "'");
  }

  std::string_view s_;
  std::size_t p_ = 0;
  int dim_;
  const std::map<std::string, T>& params_;
};

template <class T>
T parse_scalar(std::string_view src, const std::map<std::string, T>& params = {}) {
  auto v = ExprParser<T>(src, 0, params).parse();
  if (v.form) throw ParseError("expected a number: " + std::string(src));
  return v.scalar;
}

// homogeneous form of the given degree; "0" is the zero form
template <class T>
KForm<T> parse_form(std::string_view src, int dim, int degree, const std::map<std::string, T>& params = {}) {
  auto v = ExprParser<T>(src, dim, params).parse();
  if (!v.form) {
    if (is_zero(v.scalar) && degree > 0) return KForm<T>(dim, degree);
    if (degree == 0) return KForm<T>::scalar(dim, v.scalar);
    throw ParseError("expected a " + std::to_string(degree) + "-form: " + std::string(src));
  }
  if (v.form->degree() != degree)
    throw ParseError("expected a " + std::to_string(degree) + "-form: " + std::string(src));
  return *v.form;
}

template <class T>
std::vector<T> parse_covector(std::string_view src, int dim, const std::map<std::string, T>& params = {}) {
  KForm<T> f = parse_form<T>(src, dim, 1, params);
  std::vector<T> v(dim, T(0));
  for (auto& [m, c] : f.terms()) v[indices_of(m)[0] - 1] = c;
  return v;
}

// "a=1,b=0.5" -> map, values themselves parsed as expressions
template <class T>
std::map<std::string, T> parse_params(std::string_view src) {
  std::map<std::string, T> out;
  std::size_t p = 0;
  while (p < src.size()) {
    std::size_t comma = src.find(',', p);
    if (comma == std::string_view::npos) comma = src.size();
    std::string_view item = src.substr(p, comma - p);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("parameter needs name=value: " + std::string(item));
    std::string key(item.substr(0, eq));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.front()))) key.erase(key.begin());
    if (key.empty()) throw ParseError("empty parameter name");
    out[key] = parse_scalar<T>(item.substr(eq + 1), out);
    p = comma + 1;
  }
  return out;
}

}  // namespace g2nil
