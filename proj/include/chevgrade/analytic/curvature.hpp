#pragma once

// Kähler curvature tensors R_{i jbar k lbar}, a seeded sampler of Einstein
// tensors, and the pointwise form of the curvature identity behind the
// Chern-number inequality for Kähler-Einstein factors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chevgrade/analytic/polynomial.hpp"
#include "chevgrade/error.hpp"

namespace chevgrade::analytic {

struct CurvatureTensor {
  int n = 0;
  std::vector<Complex> R;  // n^4 entries, R_{i jbar k lbar} at ((i*n + j)*n + k)*n + l

  CurvatureTensor() = default;
  explicit CurvatureTensor(int dim) : n(dim), R(static_cast<std::size_t>(dim) * dim * dim * dim, 0) {}

  Complex& operator()(int i, int j, int k, int l) { return R[index(i, j, k, l)]; }
  const Complex& operator()(int i, int j, int k, int l) const { return R[index(i, j, k, l)]; }

  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  }

  /// Ricci form R_{i jbar} = R_{i jbar k kbar}.
  std::vector<Complex> ricci() const {
    std::vector<Complex> rho(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) rho[i * n + j] += (*this)(i, j, k, k);
      }
    }
    return rho;
  }

  /// s_1 = R_{i ibar k kbar}.
  Complex scalar() const {
    const auto rho = ricci();
    Complex s = 0;
    for (int i = 0; i < n; ++i) s += rho[i * n + i];
    return s;
  }

  /// Largest violation of the Kähler and hermitian symmetries.
  double symmetry_defect() const {
    double d = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            const Complex r = (*this)(i, j, k, l);
            d = std::max({d, std::abs(r - (*this)(k, j, i, l)), std::abs(r - (*this)(i, l, k, j)),
                          std::abs(std::conj(r) - (*this)(j, i, l, k))});
          }
        }
      }
    }
    return d;
  }

  /// max |R_{i jbar} - lambda delta_ij| with lambda = s_1 / n.
  double einstein_defect() const {
    const auto rho = ricci();
    const Complex lambda = scalar() / static_cast<double>(n);
    double d = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d = std::max(d, std::abs(rho[i * n + j] - (i == j ? lambda : Complex(0))));
    }
    return d;
  }

  friend CurvatureTensor operator*(double s, CurvatureTensor t) {
    for (auto& v : t.R) v *= s;
    return t;
  }
};

/// c (delta_ij delta_kl + delta_il delta_kj): constant holomorphic sectional curvature.
inline CurvatureTensor constant_curvature(int n, double c) {
  CurvatureTensor t(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      t(i, i, k, k) += c;
      t(i, k, k, i) += c;
    }
  }
  return t;
}

/// Einstein tensor with R_{i jbar} = lambda delta_ij: the constant-curvature
/// tensor with that Ricci form plus `perturbation` times a random
/// Ricci-free Kähler tensor.
inline CurvatureTensor make_einstein_curvature(int n, double lambda, std::uint64_t seed, double perturbation = 1.0) {
  if (n < 2) throw ArgumentError("curvature sampler needs n >= 2");
  const double s1 = n * lambda;
  CurvatureTensor R = constant_curvature(n, s1 / (n * (n + 1.0)));
  if (perturbation == 0) return R;

  // Random hermitian H on Sym^2 C^n; B_{i jbar k lbar} = H[{i,k}][{j,l}].
  std::vector<int> sym(static_cast<std::size_t>(n) * n);
  int N = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) sym[i * n + k] = sym[k * n + i] = N++;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> H(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < N; ++a) {
    H[a * N + a] = gauss(rng);
    for (int b = a + 1; b < N; ++b) {
      const double re = gauss(rng), im = gauss(rng);
      H[a * N + b] = {re, im};
      H[b * N + a] = {re, -im};
    }
  }
  CurvatureTensor B(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) B(i, j, k, l) = H[sym[i * n + k] * N + sym[j * n + l]];
      }
    }
  }
  // Remove the Ricci part: subtract A_ij d_kl + A_il d_kj + d_ij A_kl + d_il A_kj,
  // whose Ricci form is (n+2) A + tr(A) I. Solving for Ricci(B) gives
  // tr A = tr rho / (2n+2) and A = (rho - tr A I) / (n+2).
  const auto rho = B.ricci();
  Complex tr = 0;
  for (int i = 0; i < n; ++i) tr += rho[i * n + i];
  const Complex t = tr / (2.0 * n + 2.0);
  std::vector<Complex> A(rho.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i * n + j] = (rho[i * n + j] - (i == j ? t : Complex(0))) / (n + 2.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Complex c = 0;
          if (k == l) c += A[i * n + j];
          if (k == j) c += A[i * n + l];
          if (i == j) c += A[k * n + l];
          if (i == l) c += A[k * n + j];
          B(i, j, k, l) -= c;
          R(i, j, k, l) += perturbation * B(i, j, k, l);
        }
      }
    }
  }
  return R;
}

/// T = R - s_1/(n(n+1)) (delta_ij delta_kl + delta_il delta_kj).
inline CurvatureTensor t_tensor(const CurvatureTensor& R) {
  const double s1 = R.scalar().real();
  CurvatureTensor T = R;
  const CurvatureTensor C = constant_curvature(R.n, s1 / (R.n * (R.n + 1.0)));
  for (std::size_t x = 0; x < T.R.size(); ++x) T.R[x] -= C.R[x];
  return T;
}

/// sum T_{i jbar k lbar} T_{j ibar l kbar}
inline Complex curvature_contraction(const CurvatureTensor& T) {
  Complex s = 0;
  const int n = T.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) s += T(i, j, k, l) * T(j, i, l, k);
      }
    }
  }
  return s;
}

inline constexpr double kEinsteinTolerance = 1e-10;

struct EtaIdentity {
  double residual = 0;
  double integrand = 0;
  double integrand_imag = 0;
};

/// integrand = (n+1) T.T; residual = |(n+1) R.R - (2/n) s_1^2 - integrand|.
inline EtaIdentity eta_identity_residual(const CurvatureTensor& R) {
  const double dev = R.einstein_defect();
  if (dev > kEinsteinTolerance) {
    throw PreconditionError("curvature tensor is not Einstein: Ricci deviation " + std::to_string(dev));
  }
  const double n = R.n;
  const CurvatureTensor T = t_tensor(R);
  const Complex tt = (n + 1) * curvature_contraction(T);
  const Complex rr = (n + 1) * curvature_contraction(R);
  const Complex s1 = R.scalar();
  EtaIdentity e;
  e.integrand = tt.real();
  e.integrand_imag = tt.imag();
  e.residual = std::abs(rr - (2.0 / n) * s1 * s1 - tt);
  return e;
}

}  // namespace chevgrade::analytic
