#pragma once

// Multivariate polynomials with exact complex-rational coefficients, and
// quotients P / D^k closed under differentiation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "chevgrade/error.hpp"
#include "chevgrade/exact.hpp"

namespace chevgrade::analytic {

using Complex = std::complex<double>;

struct ComplexRational {
  Rational re = 0;
  Rational im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  Complex to_complex() const { return {re.get_d(), im.get_d()}; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexRational operator-() const { return {-re, -im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }
};

using Monomial = std::vector<int>;  // exponent per variable

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, ComplexRational c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    Polynomial p(nvars);
    Monomial m(nvars, 0);
    m.at(i) = 1;
    p.add_term(m, {1, 0});
    return p;
  }

  std::size_t num_vars() const { return nvars_; }
  const std::map<Monomial, ComplexRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Monomial& m, const ComplexRational& c) {
    if (m.size() != nvars_) throw ArgumentError("monomial has " + std::to_string(m.size()) + " exponents, expected " +
                                                std::to_string(nvars_));
    for (int e : m) {
      if (e < 0) throw ArgumentError("negative exponent in monomial");
    }
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(ma.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }
  friend Polynomial operator*(const ComplexRational& s, const Polynomial& a) {
    Polynomial out(a.nvars_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(int k) const {
    Polynomial out = constant(nvars_, {1, 0});
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  Polynomial derivative(std::size_t var) const {
    if (var >= nvars_) throw ArgumentError("derivative variable out of range");
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      --d[var];
      out.add_term(d, ComplexRational{Rational(m[var]), 0} * c);
    }
    return out;
  }

  Complex evaluate(const std::vector<Complex>& z) const {
    if (z.size() != nvars_) throw ArgumentError("evaluation point has the wrong dimension");
    Complex sum = 0;
    for (const auto& [m, c] : terms_) {
      Complex t = c.to_complex();
      for (std::size_t i = 0; i < nvars_; ++i) {
        for (int e = 0; e < m[i]; ++e) t *= z[i];
      }
      sum += t;
    }
    return sum;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw ArgumentError("polynomials over different variable counts");
  }

  std::size_t nvars_ = 0;
  std::map<Monomial, ComplexRational> terms_;
};

/// num / den^power. Differentiation keeps den and raises the power, so
/// repeated derivatives never multiply denominators together.
struct RationalFunction {
  Polynomial num;
  Polynomial den;
  int power = 1;

  static RationalFunction from(Polynomial n, Polynomial d) {
    if (d.is_zero()) throw ArgumentError("denominator is identically zero");
    return {std::move(n), std::move(d), 1};
  }

  RationalFunction derivative(std::size_t var) const {
    Polynomial top = num.derivative(var) * den - ComplexRational{Rational(power), 0} * num * den.derivative(var);
    return {std::move(top), den, power + 1};
  }

  Complex evaluate(const std::vector<Complex>& z) const {
    const Complex d = den.evaluate(z);
    if (d == Complex(0) || !std::isfinite(std::abs(d))) throw EvaluationError("evaluation at a pole");
    const Complex v = num.evaluate(z) / std::pow(d, power);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw EvaluationError("evaluation at a pole");
    return v;
  }
};

}  // namespace chevgrade::analytic
