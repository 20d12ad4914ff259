// Defining representation of sl(N) built from the generators alone, used as an
// oracle for the Chevalley tables of type A_{N-1}.
#pragma once

#include <vector>

#include "chevgrade/chevalley.hpp"
#include "chevgrade/matrix.hpp"

namespace testing_model {

using chevgrade::AlgebraElement;
using chevgrade::ChevalleyAlgebra;
using chevgrade::Rational;
using chevgrade::RationalMatrix;
using chevgrade::Root;

inline RationalMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  RationalMatrix m(n, n);
  m(i, j) = 1;
  return m;
}

inline RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

/// rho[flat] for every basis element. Simple root vectors go to elementary
/// matrices; the rest are forced by [X_{a_i}, X_eta] = N X_{a_i + eta}.
inline std::vector<RationalMatrix> sl_model(const ChevalleyAlgebra& g) {
  const std::size_t r = g.rank(), n = r + 1;
  const auto& rs = g.root_system();
  const std::size_t P = rs.num_positive();
  std::vector<RationalMatrix> rho(g.dim());
  for (std::size_t i = 0; i < r; ++i) rho[i] = unit(n, i, i) - unit(n, i + 1, i + 1);
  for (std::size_t k = 0; k < P; ++k) {
    const Root& xi = rs.roots()[k];
    std::size_t lo = 0;
    while (xi.coeffs[lo] == 0) ++lo;
    const int h = xi.height();
    if (h == 1) {
      rho[g.root_index(k)] = unit(n, lo, lo + 1);
      rho[g.root_index(P + k)] = unit(n, lo + 1, lo);
      continue;
    }
    const Root a = rs.simple_root(static_cast<int>(lo));
    const Root eta = xi - a;
    const std::size_t ia = *rs.index_of(a), ie = *rs.index_of(eta);
    const Rational np(g.structure_constant(ia, ie));
    const Rational nm(g.structure_constant(rs.negative_index(ia), rs.negative_index(ie)));
    rho[g.root_index(k)] = (1 / np) * commutator(rho[g.root_index(ia)], rho[g.root_index(ie)]);
    rho[g.root_index(P + k)] =
        (1 / nm) * commutator(rho[g.root_index(rs.negative_index(ia))], rho[g.root_index(rs.negative_index(ie))]);
  }
  return rho;
}

inline RationalMatrix represent(const std::vector<RationalMatrix>& rho, const AlgebraElement& x) {
  RationalMatrix m(rho[0].rows(), rho[0].cols());
  for (const auto& [i, c] : x.terms()) m = m + c * rho[i];
  return m;
}

}  // namespace testing_model
