#pragma once

// Invariant tensors of a cominiscule grading and the linear operators acting
// on g_-*-valued chains: the fundamental tensor, barnacle tensors, the
// boundary operator, the torsion operator, the trace, and the Ad action of
// exp(g_+).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chevgrade/algebra_element.hpp"
#include "chevgrade/cominiscule.hpp"
#include "chevgrade/error.hpp"
#include "chevgrade/exact.hpp"
#include "chevgrade/matrix.hpp"
#include "chevgrade/sparse_linear.hpp"
#include "chevgrade/tensor.hpp"

namespace chevgrade {

inline PieceDims piece_dims(const Grading& g) {
  return {g.dim_minus(), g.dim_zero(), g.dim_plus(), g.algebra().dim()};
}

/// Coordinates of an element of g_- in the grading's g_- basis.
inline std::vector<Rational> minus_coords(const Grading& g, const AlgebraElement& x) {
  std::vector<Rational> v(g.dim_minus(), Rational(0));
  for (const auto& [i, c] : x.terms()) {
    if (g.part_of(i) != Grading::Part::Minus) throw ArgumentError("element does not lie in g_-");
    v[g.position(i)] = c;
  }
  return v;
}

/// Matrix of ad z restricted to g_-; z must normalize g_- (z in g_0).
inline GlMinusMap restrict_to_minus(const Grading& g, const AlgebraElement& z) {
  const std::size_t m = g.dim_minus();
  GlMinusMap out(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const AlgebraElement img = g.algebra().bracket(z, AlgebraElement::basis(g.minus()[j]));
    for (const auto& [idx, c] : img.terms()) {
      if (g.part_of(idx) != Grading::Part::Minus) throw ArgumentError("element does not preserve g_-");
      out(g.position(idx), j) = c;
    }
  }
  return out;
}

inline SparseRationalRow flatten(const GlMinusMap& s) {
  SparseRationalRow row;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (s(i, j) != 0) row.emplace_back(static_cast<std::int64_t>(i * s.cols() + j), s(i, j));
    }
  }
  return row;
}

/// ad z|_{g_-} for every basis vector z of g_0, in g.zero() order.
inline std::vector<GlMinusMap> g0_image(const Grading& g) {
  std::vector<GlMinusMap> out;
  for (std::size_t z : g.zero()) out.push_back(restrict_to_minus(g, AlgebraElement::basis(z)));
  return out;
}

/// tau(e_i, e^j) = ad[e_i, Y_j]|_{g_-}, with Y_j the Killing dual of e^j.
inline GlMinusMap tau_value(const Grading& g, std::size_t i, std::size_t j) {
  const AlgebraElement z = g.algebra().bracket(AlgebraElement::basis(g.minus().at(i)), g.dual_plus(j));
  return restrict_to_minus(g, z);
}

/// Slots (e_i, e^j, e_k, e^l): entry is the e_l-coefficient of tau(e_i, e^j) e_k.
inline Tensor fundamental_tensor(const Grading& g) {
  Tensor t(piece_dims(g), {Axis::minus_dual(), Axis::minus(), Axis::minus_dual(), Axis::minus()});
  const std::size_t m = g.dim_minus();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const GlMinusMap v = tau_value(g, i, j);
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) {
          if (v(l, k) != 0) t.set({i, j, k, l}, v(l, k));
        }
      }
    }
  }
  return t;
}

struct TauSpanReport {
  std::size_t span_dim = 0;
  std::size_t g0_dim = 0;
  bool values_in_g0 = false;  // every tau value lies in the image of g_0
  bool pass = false;
};

inline TauSpanReport tau_span_check(const Grading& g) {
  RowEchelon g0;
  for (const auto& s : g0_image(g)) g0.insert(flatten(s));
  RowEchelon span;
  bool inside = true;
  const std::size_t m = g.dim_minus();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto row = flatten(tau_value(g, i, j));
      if (row.empty()) continue;
      if (inside && !g0.contains(row)) inside = false;
      span.insert(row);
    }
  }
  TauSpanReport r;
  r.span_dim = span.rank();
  r.g0_dim = g.dim_zero();
  r.values_in_g0 = inside;
  r.pass = inside && r.span_dim == r.g0_dim && g0.rank() == r.g0_dim;
  return r;
}

struct FaithfulReport {
  std::size_t kernel_dim = 0;
  bool pass = false;
};

/// Kernel of g_0 -> gl(g_-), z -> ad z|_{g_-}, by exact nullspace.
inline FaithfulReport g0_faithful_check(const Grading& g) {
  const auto image = g0_image(g);
  // Unknowns: coefficients of z in the g_0 basis; one equation per matrix entry.
  std::map<std::int64_t, std::map<std::int64_t, Rational>> eq;
  for (std::size_t u = 0; u < image.size(); ++u) {
    for (const auto& [pos, v] : flatten(image[u])) eq[pos][static_cast<std::int64_t>(u)] = v;
  }
  std::vector<SparseIntRow> rows;
  for (const auto& [pos, row] : eq) rows.push_back(to_primitive_row(SparseRationalRow(row.begin(), row.end())));
  FaithfulReport r;
  r.kernel_dim = nullspace(image.size(), rows).size();
  r.pass = r.kernel_dim == 0;
  return r;
}

/// Rank of the map g_+ -> g_-* (x) g_0, X -> ad X|_{g_- -> g_0}.
inline Tensor ad_plus(const Grading& g, const AlgebraElement& x_plus) {
  if (!g.lies_in(x_plus, Grading::Part::Plus)) throw ArgumentError("element does not lie in g_+");
  Tensor a(piece_dims(g), {Axis::minus_dual(), Axis::zero()});
  for (std::size_t i = 0; i < g.dim_minus(); ++i) {
    const AlgebraElement v = g.algebra().bracket(x_plus, AlgebraElement::basis(g.minus()[i]));
    for (const auto& [idx, c] : v.terms()) {
      if (g.part_of(idx) != Grading::Part::Zero) throw InternalError("[g_+, g_-] left g_0");
      a.set({i, g.position(idx)}, c);
    }
  }
  return a;
}

inline std::size_t ad_plus_rank(const Grading& g) {
  RowEchelon e;
  for (std::size_t p : g.plus()) e.insert(ad_plus(g, AlgebraElement::basis(p)).as_row());
  return e.rank();
}

// ---------------------------------------------------------------------------
// Barnacle tensors

enum class BarnacleKind { None, GrassmannianIdeal, QuadricSelfDual };

inline BarnacleKind barnacle_kind(const Grading& g) {
  const auto& t = g.type();
  if (t.family == Family::A && t.rank % 2 == 1 && t.rank >= 3 &&
      g.marked_node() + 1 == static_cast<std::size_t>((t.rank + 1) / 2)) {
    return BarnacleKind::GrassmannianIdeal;
  }
  if (t.family == Family::D && g.marked_node() == 0) return BarnacleKind::QuadricSelfDual;
  return BarnacleKind::None;
}

namespace detail {

inline std::vector<Axis> gl_endomorphism_axes() {
  return {Axis::minus(), Axis::minus_dual(), Axis::minus_dual(), Axis::minus()};
}

/// Flat indices of g_0 spanning the simple ideal generated by the simple
/// roots left of the marked node: H_1..H_{p-1} and compact root vectors
/// supported on those nodes.
inline std::vector<std::size_t> first_ideal_basis(const Grading& g) {
  const auto& alg = g.algebra();
  const std::size_t node = g.marked_node();
  std::vector<std::size_t> out;
  for (std::size_t z : g.zero()) {
    if (alg.is_cartan(z)) {
      if (z < node) out.push_back(z);
      continue;
    }
    const Root& r = alg.root_of(z);
    bool left = true;
    for (std::size_t i = node; i < r.coeffs.size(); ++i) left = left && r.coeffs[i] == 0;
    if (left) out.push_back(z);
  }
  return out;
}

/// Trace-form orthogonal projection of gl(g_-) onto the image of the first
/// simple ideal of g_0. (P A)[a][b] = sum P[a][b][c][d] A[c][d].
inline Tensor grassmannian_barnacle(const Grading& g) {
  const std::size_t m = g.dim_minus();
  std::vector<GlMinusMap> B;
  for (std::size_t z : first_ideal_basis(g)) B.push_back(restrict_to_minus(g, AlgebraElement::basis(z)));
  const std::size_t p = static_cast<std::size_t>((g.type().rank + 1) / 2);
  if (B.size() != p * p - 1 || exact_rank([&] {
        std::vector<SparseRationalRow> rows;
        for (const auto& b : B) rows.push_back(flatten(b));
        return rows;
      }()) != B.size()) {
    throw InternalError("first ideal of g_0 has the wrong image dimension");
  }
  RationalMatrix gram(B.size(), B.size());
  for (std::size_t u = 0; u < B.size(); ++u) {
    for (std::size_t v = 0; v < B.size(); ++v) gram(u, v) = (B[u] * B[v]).trace();
  }
  auto ginv = gram.inverse();
  if (!ginv) throw InternalError("trace form is degenerate on the first ideal");
  // C[u] = sum_v ginv(u,v) B_v^T, so P[a][b][c][d] = sum_u B_u[a][b] C_u[c][d].
  std::vector<RationalMatrix> C;
  for (std::size_t u = 0; u < B.size(); ++u) {
    RationalMatrix acc(m, m);
    for (std::size_t v = 0; v < B.size(); ++v) {
      if ((*ginv)(u, v) != 0) acc = acc + (*ginv)(u, v) * B[v].transpose();
    }
    C.push_back(std::move(acc));
  }
  Tensor t(piece_dims(g), gl_endomorphism_axes());
  for (std::size_t u = 0; u < B.size(); ++u) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (B[u](a, b) == 0) continue;
        for (std::size_t c = 0; c < m; ++c) {
          for (std::size_t d = 0; d < m; ++d) {
            if (C[u](c, d) != 0) t.add({a, b, c, d}, B[u](a, b) * C[u](c, d));
          }
        }
      }
    }
  }
  return t;
}

inline int subset_sign(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> s = a;
  s.insert(s.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] > s[j]) sign = -sign;
    }
  }
  return sign;
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  return Rational(sqrt(n), sqrt(d));
}

}  // namespace detail

/// g_0-invariant symmetric bilinear form on g_- (Q(i, j) = q(e_i, e_j)),
/// unique up to scale; nullopt when there is none. Only the compact root
/// vectors are imposed, since the grading element scales g_-.
inline std::optional<RationalMatrix> invariant_quadratic_form(const Grading& g) {
  const std::size_t m = g.dim_minus();
  auto unknown = [m](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::int64_t>(a * m + b);
  };
  std::vector<SparseIntRow> rows;
  for (std::size_t z : g.zero()) {
    if (g.algebra().is_cartan(z)) continue;
    const GlMinusMap Z = restrict_to_minus(g, AlgebraElement::basis(z));
    // (Z^T Q + Q Z)(x, y) = 0
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x; y < m; ++y) {
        std::map<std::int64_t, Rational> row;
        for (std::size_t c = 0; c < m; ++c) {
          if (Z(c, x) != 0) row[unknown(c, y)] += Z(c, x);
          if (Z(c, y) != 0) row[unknown(x, c)] += Z(c, y);
        }
        std::erase_if(row, [](const auto& e) { return e.second == 0; });
        if (!row.empty()) rows.push_back(to_primitive_row(SparseRationalRow(row.begin(), row.end())));
      }
    }
  }
  std::vector<SparseIntRow> sol;
  for (auto& v : nullspace(m * m, rows)) {
    // Lower-triangle unknowns are never used; drop their unit vectors.
    const auto u = static_cast<std::size_t>(v.front().first);
    if (u / m > u % m) continue;
    sol.push_back(std::move(v));
  }
  if (sol.size() != 1) return std::nullopt;
  RationalMatrix Q(m, m);
  for (const auto& [u, c] : sol.front()) {
    const std::size_t a = static_cast<std::size_t>(u) / m, b = static_cast<std::size_t>(u) % m;
    Q(a, b) = Rational(c);
    Q(b, a) = Rational(c);
  }
  return Q;
}

struct HodgeData {
  RationalMatrix star;       // on Lambda^k g_-*, subset basis
  std::size_t degree = 0;    // k = dim g_- / 2
  std::vector<std::size_t> reference;  // isotropic k-subset I_0
  int reference_sign = 0;    // star e^{I_0} = sign * e^{I_0}
};

/// Hodge star of the invariant form on middle-degree forms, built with the
/// volume element sqrt|det Q| e^1 ^ ... ^ e^m.
inline HodgeData hodge_star(const Grading& g) {
  const std::size_t m = g.dim_minus();
  if (m % 2 != 0) throw ArgumentError("Hodge star needs even-dimensional g_-");
  auto Q = invariant_quadratic_form(g);
  if (!Q) throw ArgumentError("g_- carries no unique invariant quadratic form");
  const Rational det = Q->determinant();
  if (det == 0) throw InternalError("invariant form is degenerate");
  auto s = detail::rational_sqrt(abs(det));
  if (!s) throw InternalError("|det Q| is not a rational square: star is irrational");
  const RationalMatrix Qs = *Q->inverse();

  const std::size_t k = m / 2;
  SubsetIndexer tab(m, k);
  HodgeData h;
  h.degree = k;
  h.star = RationalMatrix(tab.size(), tab.size());
  for (std::size_t J = 0; J < tab.size(); ++J) {
    const auto& js = tab.subset(J);
    std::vector<std::size_t> jc;
    for (std::size_t x = 0; x < m; ++x) {
      if (!std::binary_search(js.begin(), js.end(), x)) jc.push_back(x);
    }
    const std::size_t Jc = tab.index(jc);
    const int sg = detail::subset_sign(js, jc);
    for (std::size_t I = 0; I < tab.size(); ++I) {
      RationalMatrix sub(k, k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = Qs(js[r], tab.subset(I)[c]);
      }
      const Rational d = sub.determinant();
      if (d != 0) h.star(Jc, I) = *s * sg * d;
    }
  }
  if (!(h.star * h.star == RationalMatrix::identity(tab.size()))) {
    throw InternalError("star does not square to the identity");
  }
  for (std::size_t I = 0; I < tab.size() && h.reference.empty(); ++I) {
    const auto& is = tab.subset(I);
    bool isotropic = true;
    for (std::size_t a : is) {
      for (std::size_t b : is) isotropic = isotropic && Qs(a, b) == 0;
    }
    if (!isotropic) continue;
    h.reference = is;
    for (std::size_t J = 0; J < tab.size(); ++J) {
      if (J != I && h.star(J, I) != 0) throw InternalError("isotropic decomposable form is not a star eigenvector");
    }
    h.reference_sign = h.star(I, I) == 1 ? 1 : -1;
    if (h.star(I, I) != h.reference_sign) throw InternalError("isotropic decomposable form is not a star eigenvector");
  }
  if (h.reference.empty()) throw InternalError("no isotropic decomposable middle form");
  return h;
}

namespace detail {

/// Projection of Lambda^k g_-* onto the star eigenspace containing e^{I_0};
/// slots (output form, input k-vector).
inline Tensor quadric_barnacle(const Grading& g) {
  const HodgeData h = hodge_star(g);
  const std::size_t N = h.star.rows();
  RationalMatrix P = Rational(1, 2) * (RationalMatrix::identity(N) + Rational(h.reference_sign) * h.star);
  std::vector<SparseRationalRow> cols;
  for (std::size_t j = 0; j < N; ++j) {
    SparseRationalRow col;
    for (std::size_t i = 0; i < N; ++i) {
      if (P(i, j) != 0) col.emplace_back(static_cast<std::int64_t>(i), P(i, j));
    }
    cols.push_back(std::move(col));
  }
  if (2 * exact_rank(cols) != N) throw InternalError("star eigenspaces have unequal dimension");

  // The image must be the g_0-submodule generated by e^{I_0}.
  const int k = static_cast<int>(h.degree);
  SubsetIndexer tab(g.dim_minus(), h.degree);
  const auto generators = g0_image(g);
  RowEchelon module;
  std::vector<Tensor> frontier;
  Tensor seed(piece_dims(g), {Axis::minus_dual(k)});
  seed.set({tab.index(h.reference)}, 1);
  module.insert(seed.as_row());
  frontier.push_back(seed);
  while (!frontier.empty()) {
    Tensor f = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& z : generators) {
      Tensor next = act(z, f);
      if (!next.is_zero() && module.insert(next.as_row())) frontier.push_back(std::move(next));
    }
  }
  if (2 * module.rank() != N) throw InternalError("g_0-module generated by the reference form has the wrong dimension");
  for (const auto& [lead, row] : module.pivot_rows()) {
    std::vector<Rational> v(N, Rational(0));
    for (const auto& [i, c] : row) v[static_cast<std::size_t>(i)] = Rational(c);
    for (std::size_t i = 0; i < N; ++i) {
      Rational pv = 0;
      for (std::size_t j = 0; j < N; ++j) pv += P(i, j) * v[j];
      if (pv != v[i]) throw InternalError("reference submodule is not the chosen star eigenspace");
    }
  }

  Tensor t(piece_dims(g), {Axis::minus_dual(k), Axis::minus(k)});
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (P(i, j) != 0) t.set({i, j}, P(i, j));
    }
  }
  return t;
}

}  // namespace detail

/// The extra g_0-invariant that is not invariant under the diagram
/// symmetry; the zero endomorphism of gl(g_-) when no such symmetry exists.
inline Tensor barnacle(const Grading& g) {
  switch (barnacle_kind(g)) {
    case BarnacleKind::GrassmannianIdeal: return detail::grassmannian_barnacle(g);
    case BarnacleKind::QuadricSelfDual: return detail::quadric_barnacle(g);
    case BarnacleKind::None: break;
  }
  return Tensor(piece_dims(g), detail::gl_endomorphism_axes());
}

/// Products have one barnacle per factor; only irreducible models are accepted here.
inline Tensor barnacle(std::span<const Grading> factors) {
  if (factors.size() != 1) throw ArgumentError("barnacle of a reducible grading is assembled per factor");
  return barnacle(factors.front());
}

struct StabilizerResult {
  std::size_t dimension = 0;
  std::vector<GlMinusMap> basis;
};

/// Annihilator in gl(g_-) of tau, and of the barnacle when requested.
inline StabilizerResult stabilizer_algebra(const Grading& g, bool include_barnacle) {
  const std::size_t m = g.dim_minus();
  auto rows = annihilator_equations(fundamental_tensor(g));
  if (include_barnacle) {
    const Tensor a = barnacle(g);
    if (!a.is_zero()) {
      auto extra = annihilator_equations(a);
      rows.insert(rows.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    }
  }
  StabilizerResult r;
  for (const auto& v : nullspace(m * m, rows)) {
    GlMinusMap s(m, m);
    for (const auto& [u, c] : v) s(static_cast<std::size_t>(u) / m, static_cast<std::size_t>(u) % m) = Rational(c);
    r.basis.push_back(std::move(s));
  }
  r.dimension = r.basis.size();
  return r;
}

/// Restriction of an algebra map to g_-; fails if g_- is not preserved.
inline GlMinusMap restrict_map_to_minus(const Grading& g, const AlgebraMap& phi) {
  const std::size_t m = g.dim_minus();
  GlMinusMap out(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& [idx, c] : phi.image(g.minus()[j]).terms()) {
      if (g.part_of(idx) != Grading::Part::Minus) throw InternalError("automorphism does not preserve g_-");
      out(g.position(idx), j) = c;
    }
  }
  return out;
}

inline bool preserves_partition(const Grading& g, const AlgebraMap& phi) {
  for (std::size_t x = 0; x < phi.dim(); ++x) {
    for (const auto& [idx, c] : phi.image(x).terms()) {
      if (g.part_of(idx) != g.part_of(x)) return false;
    }
  }
  return true;
}

struct SymmetryBreakingReport {
  DiagramAutomorphism automorphism;
  bool partition_preserved = false;
  bool tau_preserved = false;
  bool barnacle_moved = false;
  bool pass() const { return partition_preserved && tau_preserved && barnacle_moved; }
};

/// Applies the first nontrivial element of Gamma to tau and to the barnacle.
inline SymmetryBreakingReport gamma_symmetry_breaking(const Grading& g) {
  const auto gamma = diagram_automorphisms(g);
  if (gamma.size() < 2) throw PreconditionError("diagram automorphism group is trivial");
  SymmetryBreakingReport r;
  r.automorphism = gamma[1];
  const AlgebraMap phi = lift_automorphism(g, gamma[1]);
  r.partition_preserved = preserves_partition(g, phi);
  const GlMinusMap G = restrict_map_to_minus(g, phi);
  const Tensor tau = fundamental_tensor(g);
  r.tau_preserved = transform(G, tau) == tau;
  const Tensor a = barnacle(g);
  r.barnacle_moved = !(transform(G, a) == a);
  return r;
}

// ---------------------------------------------------------------------------
// Chains Lambda^k g_-* (x) g and the boundary operator

inline Tensor make_chain(const Grading& g, int k) {
  if (k < 0) throw ArgumentError("chain degree must be nonnegative");
  return Tensor(piece_dims(g), {Axis::minus_dual(k), Axis::algebra()});
}

/// delta(beta (x) w) = sum_a (e_a -| beta) (x) ad(Y_a) w. Contraction with
/// the slot at position p carries the sign (-1)^p.
inline Tensor boundary_delta(const Grading& g, int k, const Tensor& chain) {
  if (k < 0) throw ArgumentError("chain degree must be nonnegative");
  chain.require_shape({Axis::minus_dual(k), Axis::algebra()}, "boundary_delta expects a chain of degree k");
  if (k == 0) return make_chain(g, 0);
  const std::size_t m = g.dim_minus();
  const auto& alg = g.algebra();
  SubsetIndexer in(m, static_cast<std::size_t>(k)), out(m, static_cast<std::size_t>(k - 1));
  std::vector<AlgebraElement> dual;
  for (std::size_t a = 0; a < m; ++a) dual.push_back(g.dual_plus(a));
  std::map<std::pair<std::size_t, std::size_t>, AlgebraElement> cache;
  Tensor result = make_chain(g, k - 1);
  for (const auto& [lin, val] : chain.entries()) {
    const auto idx = chain.unravel(lin);
    const auto& subset = in.subset(idx[0]);
    for (std::size_t p = 0; p < subset.size(); ++p) {
      const std::size_t a = subset[p];
      auto it = cache.find({a, idx[1]});
      if (it == cache.end()) {
        it = cache.emplace(std::make_pair(a, idx[1]), alg.bracket(dual[a], AlgebraElement::basis(idx[1]))).first;
      }
      if (it->second.is_zero()) continue;
      std::vector<std::size_t> rest = subset;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      const std::size_t r = out.index(rest);
      const Rational coeff = (p % 2 == 0 ? 1 : -1) * val;
      for (const auto& [w, c] : it->second.terms()) result.add({r, w}, coeff * c);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Torsion operator, trace, and the kernel decomposition

inline std::vector<Axis> cochain_axes() { return {Axis::minus_dual(), Axis::zero()}; }

inline AlgebraElement evaluate_cochain(const Grading& g, const Tensor& a, std::size_t i) {
  AlgebraElement out;
  for (std::size_t z = 0; z < g.dim_zero(); ++z) {
    const Rational c = a.get({i, z});
    if (c != 0) out.add(g.zero()[z], c);
  }
  return out;
}

/// D(a)(e_i ^ e_j) = [a(e_i), e_j] - [a(e_j), e_i]; slots (e^i ^ e^j, e_l).
inline Tensor torsion_D(const Grading& g, const Tensor& a) {
  a.require_shape(cochain_axes(), "torsion_D expects an element of g_-* (x) g_0");
  const std::size_t m = g.dim_minus();
  const auto& alg = g.algebra();
  SubsetIndexer pairs(m, 2);
  std::vector<AlgebraElement> values;
  for (std::size_t i = 0; i < m; ++i) values.push_back(evaluate_cochain(g, a, i));
  Tensor out(piece_dims(g), {Axis::minus_dual(2), Axis::minus()});
  for (std::size_t P = 0; P < pairs.size(); ++P) {
    const std::size_t i = pairs.subset(P)[0], j = pairs.subset(P)[1];
    AlgebraElement v = alg.bracket(values[i], AlgebraElement::basis(g.minus()[j])) -
                       alg.bracket(values[j], AlgebraElement::basis(g.minus()[i]));
    for (const auto& [idx, c] : v.terms()) {
      if (g.part_of(idx) != Grading::Part::Minus) throw InternalError("torsion left g_-");
      out.set({P, g.position(idx)}, c);
    }
  }
  return out;
}

/// Basis of ker D inside g_-* (x) g_0 by exact nullspace.
inline std::vector<Tensor> torsion_kernel_basis(const Grading& g) {
  const std::size_t m = g.dim_minus(), z = g.dim_zero();
  std::map<std::int64_t, std::map<std::int64_t, Rational>> eq;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < z; ++k) {
      Tensor unit(piece_dims(g), cochain_axes());
      unit.set({i, k}, 1);
      const auto u = static_cast<std::int64_t>(i * z + k);
      const Tensor image = torsion_D(g, unit);
      for (const auto& [l, v] : image.entries()) eq[l][u] = v;
    }
  }
  std::vector<SparseIntRow> rows;
  for (const auto& [l, row] : eq) rows.push_back(to_primitive_row(SparseRationalRow(row.begin(), row.end())));
  std::vector<Tensor> basis;
  for (const auto& v : nullspace(m * z, rows)) {
    Tensor t(piece_dims(g), cochain_axes());
    for (const auto& [u, c] : v) t.set({static_cast<std::size_t>(u) / z, static_cast<std::size_t>(u) % z}, Rational(c));
    basis.push_back(std::move(t));
  }
  return basis;
}

/// Sum of H_{beta^-} over the roots of g_-.
inline AlgebraElement trace_grading_element(const Grading& g) {
  const auto& alg = g.algebra();
  AlgebraElement h;
  for (std::size_t i = 0; i < g.dim_minus(); ++i) {
    h += alg.bracket_basis(g.minus()[i], g.plus()[i]);
  }
  return h;
}

/// tr a = sum_{beta, delta} B([a(X_{beta-}), X_{beta+}], X_{delta-}) /
///        (delta-(H) B(X_{delta-}, X_{delta+})) X_{delta+}.
inline AlgebraElement trace_tr(const Grading& g, const Tensor& a) {
  a.require_shape(cochain_axes(), "trace_tr expects an element of g_-* (x) g_0");
  const auto& alg = g.algebra();
  const std::size_t m = g.dim_minus();
  const AlgebraElement H = trace_grading_element(g);
  AlgebraElement numer;  // sum_beta [a(X_{beta-}), X_{beta+}], lies in g_+
  for (std::size_t i = 0; i < m; ++i) {
    const AlgebraElement v = evaluate_cochain(g, a, i);
    if (!v.is_zero()) numer += alg.bracket(v, AlgebraElement::basis(g.plus()[i]));
  }
  AlgebraElement out;
  for (std::size_t d = 0; d < m; ++d) {
    const AlgebraElement xd = AlgebraElement::basis(g.minus()[d]);
    const Rational num = alg.killing(numer, xd);
    if (num == 0) continue;
    const Rational weight = alg.bracket(H, xd).coeff(g.minus()[d]);
    const Rational den = weight * Rational(static_cast<long>(g.dual_pairing(d)));
    if (den == 0) {
      throw ArithmeticError("trace denominator vanishes at " + alg.label(g.minus()[d]));
    }
    out.add(g.plus()[d], num / den);
  }
  return out;
}

inline std::size_t trace_rank(const Grading& g) {
  RowEchelon e;
  const std::size_t z = g.dim_zero();
  std::vector<std::map<std::int64_t, Rational>> rows(g.dim_plus());
  for (std::size_t i = 0; i < g.dim_minus(); ++i) {
    for (std::size_t k = 0; k < z; ++k) {
      Tensor unit(piece_dims(g), cochain_axes());
      unit.set({i, k}, 1);
      const AlgebraElement image = trace_tr(g, unit);
      for (const auto& [idx, c] : image.terms()) {
        rows[g.position(idx)][static_cast<std::int64_t>(i * z + k)] = c;
      }
    }
  }
  for (const auto& r : rows) {
    if (!r.empty()) e.insert(SparseRationalRow(r.begin(), r.end()));
  }
  return e.rank();
}

struct KernelDecomposition {
  AlgebraElement x_plus;
  Tensor b;
};

/// a = ad_{X+} + b with X+ = tr a; requires D(a) = 0.
inline KernelDecomposition decompose_kernel(const Grading& g, const Tensor& a) {
  const Tensor d = torsion_D(g, a);
  if (!d.is_zero()) {
    SubsetIndexer pairs(g.dim_minus(), 2);
    const auto idx = d.unravel(d.entries().begin()->first);
    const auto& w = pairs.subset(idx[0]);
    throw PreconditionError("D(a) != 0 at (" + g.algebra().label(g.minus()[w[0]]) + ", " +
                            g.algebra().label(g.minus()[w[1]]) + ")");
  }
  KernelDecomposition r;
  r.x_plus = trace_tr(g, a);
  r.b = a - ad_plus(g, r.x_plus);
  return r;
}

// ---------------------------------------------------------------------------
// Ad(exp X+) and III_0

/// Ad(e^{X+})Y = Y_- + (Y_0 - [X+, Y_-]) + (Y_+ - [X+, Y_0] + 1/2 [X+, [X+, Y_-]]).
inline AlgebraElement ad_exp(const Grading& g, const AlgebraElement& x_plus, const AlgebraElement& y) {
  if (!g.lies_in(x_plus, Grading::Part::Plus)) throw ArgumentError("X+ has components outside g_+");
  const auto& alg = g.algebra();
  using Part = Grading::Part;
  const AlgebraElement ym = g.component(y, Part::Minus);
  const AlgebraElement y0 = g.component(y, Part::Zero);
  const AlgebraElement yp = g.component(y, Part::Plus);
  const AlgebraElement xym = alg.bracket(x_plus, ym);
  const AlgebraElement z0 = y0 - xym;
  const AlgebraElement zp = yp - alg.bracket(x_plus, y0) + Rational(1, 2) * alg.bracket(x_plus, xym);
  return ym + z0 + zp;
}

struct ObstructionCandidate {
  Tensor s0;      // g_-* (x) g_0
  Tensor s_plus;  // g_-* (x) g_+
};

inline ObstructionCandidate make_obstruction(const Grading& g) {
  return {Tensor(piece_dims(g), cochain_axes()), Tensor(piece_dims(g), {Axis::minus_dual(), Axis::plus()})};
}

struct III0Result {
  bool is_member = false;
  std::size_t dim_iii0 = 0;
};

/// Membership reads only the g_0 component. The dimension uses
/// surjectivity of tr.
inline III0Result iii0(const Grading& g, const ObstructionCandidate& s) {
  s.s0.require_shape(cochain_axes(), "s0 must lie in g_-* (x) g_0");
  s.s_plus.require_shape({Axis::minus_dual(), Axis::plus()}, "s_plus must lie in g_-* (x) g_+");
  III0Result r;
  r.is_member = trace_tr(g, s.s0).is_zero();
  r.dim_iii0 = g.dim_minus() * (g.dim_zero() + g.dim_plus()) - g.dim_plus();
  return r;
}

}  // namespace chevgrade
