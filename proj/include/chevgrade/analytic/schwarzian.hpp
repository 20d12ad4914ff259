#pragma once

// Schwarzian derivatives of rational maps: the one-variable classical form,
// the projective (p >= 2) form, the leafwise form on foliated charts, and an
// independently evaluated cochain expression for the same tensor.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "chevgrade/analytic/rational_map.hpp"
#include "chevgrade/error.hpp"

namespace chevgrade::analytic {

/// p == 1: one complex coefficient of dz^2. p >= 2: s^k_{ij} stored at
/// (k * p + i) * p + j.
struct SchwarzianValue {
  std::size_t p = 1;
  std::vector<Complex> data;

  Complex scalar() const {
    if (p != 1) throw ArgumentError("scalar Schwarzian requested for p >= 2");
    return data.at(0);
  }
  Complex operator()(std::size_t k, std::size_t i, std::size_t j) const { return data.at((k * p + i) * p + j); }

  double max_abs() const {
    double m = 0;
    for (const auto& v : data) m = std::max(m, std::abs(v));
    return m;
  }

  /// max |s^k_ij - s^k_ji| / max(1, max|s|).
  double symmetry_defect() const {
    double d = 0;
    for (std::size_t k = 0; k < p && p > 1; ++k) {
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) d = std::max(d, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
      }
    }
    return d / std::max(1.0, max_abs());
  }

  /// max_j |sum_k s^k_kj| / max(1, max|s|).
  double trace_defect() const {
    double d = 0;
    for (std::size_t j = 0; j < p && p > 1; ++j) {
      Complex t = 0;
      for (std::size_t k = 0; k < p; ++k) t += (*this)(k, k, j);
      d = std::max(d, std::abs(t));
    }
    return d / std::max(1.0, max_abs());
  }
};

namespace detail {

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

inline void check_point(const RationalMap& f, const std::vector<Complex>& z) {
  f.validate();
  if (z.size() != f.dimension) throw ArgumentError("evaluation point has the wrong dimension");
}

/// Z'_{l,i} = dZ^l/dz^i and Z''_{l,i,j}, for the first p components and
/// the first p variables.
struct Jets {
  std::size_t p = 0;
  CMatrix d1;
  std::vector<CMatrix> d2;  // d2[l](i, j)
};

inline Jets leaf_jets(const RationalMap& f, std::size_t p, const std::vector<Complex>& z) {
  Jets J;
  J.p = p;
  J.d1 = CMatrix(p, p);
  J.d2.assign(p, CMatrix(p, p));
  for (std::size_t l = 0; l < p; ++l) {
    for (std::size_t i = 0; i < p; ++i) {
      const RationalFunction di = f.components[l].derivative(i);
      J.d1(l, i) = di.evaluate(z);
      for (std::size_t j = i; j < p; ++j) {
        const Complex v = di.derivative(j).evaluate(z);
        J.d2[l](i, j) = v;
        J.d2[l](j, i) = v;
      }
    }
  }
  return J;
}

inline void require_regular(const CMatrix& jac) {
  double scale = 1;
  for (Eigen::Index r = 0; r < jac.rows(); ++r) scale *= std::max(jac.row(r).norm(), 1e-300);
  const Complex det = jac.determinant();
  if (!(std::abs(det) > 1e-12 * scale)) throw EvaluationError("singular Jacobian at the evaluation point");
}

inline Complex one_dimensional(const RationalFunction& Z, std::size_t var, const std::vector<Complex>& z) {
  const RationalFunction d1 = Z.derivative(var);
  const RationalFunction d2 = d1.derivative(var);
  const RationalFunction d3 = d2.derivative(var);
  const Complex z1 = d1.evaluate(z);
  if (!(std::abs(z1) > 1e-300)) throw EvaluationError("critical point: derivative vanishes");
  const Complex r2 = d2.evaluate(z) / z1;
  return d3.evaluate(z) / z1 - 1.5 * r2 * r2;
}

/// s^k_ij = sum_l d_i d_j Z^l (Z'^{-1})^k_l - (delta^k_i d_j log J + delta^k_j d_i log J) / (p + 1).
inline SchwarzianValue projective(const Jets& J) {
  const std::size_t p = J.p;
  require_regular(J.d1);
  const CMatrix inv = J.d1.inverse();
  std::vector<Complex> dlogJ(p, 0);
  for (std::size_t i = 0; i < p; ++i) {
    // d_i log J = tr(Z'^{-1} d_i Z'), (d_i Z')_{l,m} = d2[l](m, i)
    Complex t = 0;
    for (std::size_t m = 0; m < p; ++m) {
      for (std::size_t l = 0; l < p; ++l) t += inv(m, l) * J.d2[l](m, i);
    }
    dlogJ[i] = t;
  }
  SchwarzianValue s;
  s.p = p;
  s.data.assign(p * p * p, 0);
  const double w = 1.0 / static_cast<double>(p + 1);
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        Complex v = 0;
        for (std::size_t l = 0; l < p; ++l) v += J.d2[l](i, j) * inv(k, l);
        if (k == i) v -= w * dlogJ[j];
        if (k == j) v -= w * dlogJ[i];
        s.data[(k * p + i) * p + j] = v;
      }
    }
  }
  return s;
}

}  // namespace detail

inline Complex schwarzian_1d(const RationalMap& f, Complex z) {
  if (f.dimension != 1) throw ArgumentError("schwarzian_1d needs a one-variable map");
  std::vector<Complex> pt{z};
  detail::check_point(f, pt);
  return detail::one_dimensional(f.components[0], 0, pt);
}

inline SchwarzianValue schwarzian_nd(const RationalMap& f, const std::vector<Complex>& z) {
  detail::check_point(f, z);
  if (f.dimension < 2) throw ArgumentError("schwarzian_nd needs dimension >= 2");
  return detail::projective(detail::leaf_jets(f, f.dimension, z));
}

/// Largest |dW^a/dz^i| at the point: transverse outputs differentiated in
/// leaf variables.
inline double foliation_defect(const RationalMap& f, const std::vector<Complex>& z) {
  detail::check_point(f, z);
  const std::size_t p = f.leaf();
  double d = 0;
  for (std::size_t a = p; a < f.dimension; ++a) {
    for (std::size_t i = 0; i < p; ++i) d = std::max(d, std::abs(f.components[a].derivative(i).evaluate(z)));
  }
  return d;
}

inline constexpr double kFoliationTolerance = 1e-9;

/// Schwarzian in the leaf variables with the transverse ones frozen.
inline SchwarzianValue schwarzian_foliated(const RationalMap& f, const std::vector<Complex>& z) {
  const double defect = foliation_defect(f, z);
  if (defect > kFoliationTolerance) {
    throw ArgumentError("map does not preserve the foliation: |dW/dz| = " + std::to_string(defect));
  }
  const std::size_t p = f.leaf();
  if (p == 1) return {1, {detail::one_dimensional(f.components[0], 0, z)}};
  return detail::projective(detail::leaf_jets(f, p, z));
}

/// Max-norm difference between the leafwise Schwarzian and
/// Gamma^k_ij - (delta^k_i A_j + delta^k_j A_i)/(p+1), where
/// Gamma = Z'^{-1} d_i d_j Z (LU solve) and A_i = d_i log det(dZ/dz) from the
/// symbolic Jacobian determinant.
inline double atiyah_identity_residual(const RationalMap& f, const std::vector<Complex>& z) {
  const SchwarzianValue s = schwarzian_foliated(f, z);
  const std::size_t p = f.leaf();
  if (p < 2) throw ArgumentError("cochain identity needs leaf dimension >= 2");
  const std::size_t n = f.dimension;

  // Row l of the Jacobian is N_{l,i} / D_l^2 with D_l the component denominator.
  std::vector<std::vector<Polynomial>> rows(p);
  for (std::size_t l = 0; l < p; ++l) {
    for (std::size_t i = 0; i < p; ++i) rows[l].push_back(f.components[l].derivative(i).num);
  }
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial P(n);
  do {
    int sign = 1;
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a + 1; b < p; ++b) {
        if (perm[a] > perm[b]) sign = -sign;
      }
    }
    Polynomial term = Polynomial::constant(n, {Rational(sign), 0});
    for (std::size_t l = 0; l < p; ++l) term = term * rows[l][perm[l]];
    P += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const Complex Pz = P.evaluate(z);
  if (!(std::abs(Pz) > 1e-300)) throw EvaluationError("singular Jacobian at the evaluation point");
  std::vector<Complex> A(p);
  for (std::size_t i = 0; i < p; ++i) {
    Complex v = P.derivative(i).evaluate(z) / Pz;
    for (std::size_t l = 0; l < p; ++l) {
      const auto& D = f.components[l].den;
      v -= 2.0 * D.derivative(i).evaluate(z) / D.evaluate(z);
    }
    A[i] = v;
  }

  const detail::Jets J = detail::leaf_jets(f, p, z);
  const Eigen::PartialPivLU<detail::CMatrix> lu(J.d1);
  double residual = 0;
  const double w = 1.0 / static_cast<double>(p + 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      Eigen::Matrix<Complex, Eigen::Dynamic, 1> rhs(p);
      for (std::size_t l = 0; l < p; ++l) rhs(l) = J.d2[l](i, j);
      const auto gamma = lu.solve(rhs).eval();
      for (std::size_t k = 0; k < p; ++k) {
        Complex v = gamma(k);
        if (k == i) v -= w * A[j];
        if (k == j) v -= w * A[i];
        residual = std::max(residual, std::abs(v - s(k, i, j)));
      }
    }
  }
  return residual;
}

}  // namespace chevgrade::analytic
