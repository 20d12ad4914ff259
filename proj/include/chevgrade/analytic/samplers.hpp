#pragma once

// Seeded generators of test maps and evaluation points. Coefficients are
// small exact rationals so every sample is reproducible bit for bit.

#include <cstdint>
#include <random>
#include <vector>

#include "chevgrade/analytic/rational_map.hpp"

namespace chevgrade::analytic {

class MapSampler {
 public:
  explicit MapSampler(std::uint64_t seed) : rng_(seed) {}

  /// Rational in [-bound, bound] with denominator `den`.
  Rational coefficient(int bound, int den) {
    std::uniform_int_distribution<int> d(-bound * den, bound * den);
    Rational q(d(rng_), den);
    q.canonicalize();
    return q;
  }

  ComplexRational complex_coefficient(int bound, int den) { return {coefficient(bound, den), coefficient(bound, den)}; }

  /// Point with coordinates of modulus below `radius`.
  std::vector<Complex> point(std::size_t n, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Complex> z;
    for (std::size_t i = 0; i < n; ++i) z.emplace_back(u(rng_), u(rng_));
    return z;
  }

  /// (A z + b) / (c . z + d) with A near the identity and c small, so the
  /// map is regular on the polydisc of radius 1/2.
  RationalMap projective(std::size_t p) {
    RationalMap f;
    f.dimension = p;
    Polynomial den = Polynomial::constant(p, {1, 0});
    for (std::size_t i = 0; i < p; ++i) den += complex_coefficient(1, 8) * Polynomial::variable(p, i);
    for (std::size_t l = 0; l < p; ++l) {
      Polynomial num = Polynomial::constant(p, complex_coefficient(1, 4));
      for (std::size_t i = 0; i < p; ++i) {
        ComplexRational a = complex_coefficient(1, 8);
        if (i == l) a = a + ComplexRational{1, 0};
        num += a * Polynomial::variable(p, i);
      }
      f.components.push_back(RationalFunction::from(std::move(num), den));
    }
    return f;
  }

  /// z + (random terms of total degree 2..degree), a local biholomorphism near 0.
  RationalMap polynomial(std::size_t p, int degree, int terms_per_component = 4) {
    RationalMap f;
    f.dimension = p;
    for (std::size_t l = 0; l < p; ++l) {
      Polynomial num = Polynomial::variable(p, l);
      for (int t = 0; t < terms_per_component; ++t) num.add_term(random_monomial(p, degree), complex_coefficient(1, 4));
      f.components.push_back(RationalFunction::from(std::move(num), Polynomial::constant(p, {1, 0})));
    }
    return f;
  }

  /// z + small nonlinear terms over 1 + small linear denominator (p = 1).
  RationalMap rational_1d(int degree) {
    RationalMap f;
    f.dimension = 1;
    Polynomial num = Polynomial::variable(1, 0);
    for (int e = 2; e <= degree; ++e) num.add_term({e}, complex_coefficient(1, 4));
    Polynomial den = Polynomial::constant(1, {1, 0});
    den.add_term({2}, complex_coefficient(1, 8));
    f.components.push_back(RationalFunction::from(std::move(num), std::move(den)));
    return f;
  }

  /// Leaf coordinates z (p of them) moved by a projective map whose
  /// coefficients depend polynomially on the transverse coordinates w;
  /// W = w + (terms in w only).
  RationalMap foliated_projective(std::size_t p, std::size_t q) {
    const std::size_t n = p + q;
    auto w_poly = [&](ComplexRational base) {
      Polynomial c = Polynomial::constant(n, base);
      for (std::size_t a = 0; a < q; ++a) c += complex_coefficient(1, 8) * Polynomial::variable(n, p + a);
      return c;
    };
    RationalMap f;
    f.dimension = n;
    f.leaf_dimension = p;
    Polynomial den = w_poly({1, 0});
    for (std::size_t i = 0; i < p; ++i) den += w_poly(complex_coefficient(1, 8)) * Polynomial::variable(n, i);
    for (std::size_t l = 0; l < p; ++l) {
      Polynomial num = w_poly(complex_coefficient(1, 4));
      for (std::size_t i = 0; i < p; ++i) {
        ComplexRational a = complex_coefficient(1, 8);
        if (i == l) a = a + ComplexRational{1, 0};
        num += w_poly(a) * Polynomial::variable(n, i);
      }
      f.components.push_back(RationalFunction::from(std::move(num), den));
    }
    for (std::size_t a = 0; a < q; ++a) {
      Polynomial W = Polynomial::variable(n, p + a);
      Monomial m(n, 0);
      m[p + a] = 2;
      W.add_term(m, complex_coefficient(1, 4));
      f.components.push_back(RationalFunction::from(std::move(W), Polynomial::constant(n, {1, 0})));
    }
    return f;
  }

  /// Leaf coordinates moved by z + nonlinear terms (coefficients depending
  /// on w), transverse by w + w^2 terms.
  RationalMap foliated_polynomial(std::size_t p, std::size_t q, int degree) {
    const std::size_t n = p + q;
    RationalMap f;
    f.dimension = n;
    f.leaf_dimension = p;
    for (std::size_t l = 0; l < p; ++l) {
      Polynomial num = Polynomial::variable(n, l);
      for (int t = 0; t < 4; ++t) num.add_term(random_monomial(n, degree), complex_coefficient(1, 4));
      f.components.push_back(RationalFunction::from(std::move(num), Polynomial::constant(n, {1, 0})));
    }
    for (std::size_t a = 0; a < q; ++a) {
      Polynomial W = Polynomial::variable(n, p + a);
      Monomial m(n, 0);
      m[p + a] = 2;
      W.add_term(m, complex_coefficient(1, 4));
      f.components.push_back(RationalFunction::from(std::move(W), Polynomial::constant(n, {1, 0})));
    }
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  Monomial random_monomial(std::size_t n, int degree) {
    std::uniform_int_distribution<int> total(2, degree);
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    Monomial m(n, 0);
    const int d = total(rng_);
    for (int e = 0; e < d; ++e) ++m[var(rng_)];
    return m;
  }

  std::mt19937_64 rng_;
};

}  // namespace chevgrade::analytic
