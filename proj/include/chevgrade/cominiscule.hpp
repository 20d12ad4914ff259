#pragma once

// Cominiscule gradings g = g_- + g_0 + g_+ of a simple Chevalley algebra,
// their classification, the group of diagram automorphisms fixing the marked
// node and its lift to the algebra, and the Klingler weight.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chevgrade/algebra_element.hpp"
#include "chevgrade/chevalley.hpp"
#include "chevgrade/error.hpp"
#include "chevgrade/root_system.hpp"

namespace chevgrade {

/// Signals that a marked node is not cominiscule; carries the witness
/// bracket [X_a, X_b] != 0 inside the would-be g_+.
class NotCominisculeError : public ArgumentError {
 public:
  NotCominisculeError(std::string msg, std::size_t a, std::size_t b)
      : ArgumentError(std::move(msg)), witness_a(a), witness_b(b) {}
  std::size_t witness_a;  // flat basis indices
  std::size_t witness_b;
};

class Grading {
 public:
  const ChevalleyAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const ChevalleyAlgebra> algebra_ptr() const { return alg_; }
  const SimpleType& type() const { return alg_->root_system().type(); }

  /// Marked simple root, 0-based.
  std::size_t marked_node() const { return node_; }

  /// Flat basis indices. minus()[i] is X_{-beta_i}, plus()[i] is X_{beta_i}
  /// for the same positive noncompact root beta_i.
  const std::vector<std::size_t>& minus() const { return minus_; }
  const std::vector<std::size_t>& zero() const { return zero_; }
  const std::vector<std::size_t>& plus() const { return plus_; }

  std::size_t dim_minus() const { return minus_.size(); }
  std::size_t dim_zero() const { return zero_.size(); }
  std::size_t dim_plus() const { return plus_.size(); }

  enum class Part { Minus, Zero, Plus };
  Part part_of(std::size_t flat) const { return part_.at(flat); }
  /// Position of a flat index inside its part's list.
  std::size_t position(std::size_t flat) const { return pos_.at(flat); }

  /// Killing pairing B(X_{-beta_i}, X_{beta_i}).
  std::int64_t dual_pairing(std::size_t i) const { return alg_->killing(minus_[i], plus_[i]); }

  /// Killing dual Y_i in g_+ of the coordinate covector on g_- dual to
  /// X_{-beta_i}: Y_i = X_{beta_i} / B(X_{-beta_i}, X_{beta_i}).
  AlgebraElement dual_plus(std::size_t i) const {
    return AlgebraElement::basis(plus_[i], Rational(1, 1) / Rational(Integer(static_cast<long>(dual_pairing(i)))));
  }

  /// Components of an element in g_-, g_0, g_+.
  AlgebraElement component(const AlgebraElement& x, Part p) const {
    AlgebraElement out;
    for (const auto& [i, c] : x.terms()) {
      if (part_of(i) == p) out.add(i, c);
    }
    return out;
  }

  bool lies_in(const AlgebraElement& x, Part p) const {
    for (const auto& [i, c] : x.terms()) {
      if (part_of(i) != p) return false;
    }
    return true;
  }

 private:
  friend Grading build_grading(std::shared_ptr<const ChevalleyAlgebra> alg, std::size_t node);

  std::shared_ptr<const ChevalleyAlgebra> alg_;
  std::size_t node_ = 0;
  std::vector<std::size_t> minus_, zero_, plus_;
  std::vector<Part> part_;
  std::vector<std::size_t> pos_;
};

/// True iff the simple root `node` (0-based) has coefficient 1 in the highest root.
inline bool is_cominiscule_node(const RootSystem& rs, std::size_t node) {
  if (node >= static_cast<std::size_t>(rs.rank())) return false;
  return rs.highest_root().coeffs[node] == 1;
}

/// Partitions the basis by the coefficient at the marked node and checks the
/// bracket relations of a depth-one grading exactly. A node whose
/// coefficient in the highest root exceeds 1 is rejected with a witness pair
/// of positive root vectors whose bracket does not vanish.
inline Grading build_grading(std::shared_ptr<const ChevalleyAlgebra> alg, std::size_t node) {
  if (!alg) throw ArgumentError("null algebra");
  const auto& rs = alg->root_system();
  if (node >= alg->rank()) throw ArgumentError("marked node out of range");
  const auto& roots = rs.roots();
  const std::size_t P = rs.num_positive();

  // Abelianness scan over positive roots with nonzero coefficient at the node.
  std::vector<std::size_t> noncompact_pos;
  for (std::size_t k = 0; k < P; ++k) {
    if (roots[k].coeffs[node] > 0) noncompact_pos.push_back(k);
  }
  for (std::size_t a : noncompact_pos) {
    for (std::size_t b : noncompact_pos) {
      if (!alg->bracket_basis(alg->root_index(a), alg->root_index(b)).is_zero()) {
        throw NotCominisculeError("node " + std::to_string(node + 1) + " of " + rs.type().name() +
                                      " is not cominiscule: [" + alg->label(alg->root_index(a)) + ", " +
                                      alg->label(alg->root_index(b)) + "] != 0",
                                  alg->root_index(a), alg->root_index(b));
      }
    }
  }
  if (!is_cominiscule_node(rs, node)) {
    throw InternalError("abelian g_+ but highest-root coefficient is not 1");
  }

  Grading g;
  g.alg_ = alg;
  g.node_ = node;
  const std::size_t n = alg->dim();
  g.part_.assign(n, Grading::Part::Zero);
  g.pos_.assign(n, 0);
  for (std::size_t i = 0; i < alg->rank(); ++i) g.zero_.push_back(i);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const std::size_t flat = alg->root_index(k);
    const int c = roots[k].coeffs[node];
    if (c == 0) g.zero_.push_back(flat);
  }
  for (std::size_t k : noncompact_pos) {
    g.plus_.push_back(alg->root_index(k));
    g.minus_.push_back(alg->root_index(rs.negative_index(k)));
  }
  std::sort(g.zero_.begin(), g.zero_.end());
  for (std::size_t i = 0; i < g.minus_.size(); ++i) {
    g.part_[g.minus_[i]] = Grading::Part::Minus;
    g.pos_[g.minus_[i]] = i;
    g.part_[g.plus_[i]] = Grading::Part::Plus;
    g.pos_[g.plus_[i]] = i;
  }
  for (std::size_t i = 0; i < g.zero_.size(); ++i) g.pos_[g.zero_[i]] = i;

  // Bracket closure: [-,-] = [+,+] = 0, [0,-] in -, [0,+] in +, [+,-] in 0.
  using Part = Grading::Part;
  auto expect = [&](Part a, Part b) -> std::optional<Part> {
    if (a == Part::Zero) return b;
    if (b == Part::Zero) return a;
    if (a == b) return std::nullopt;  // must vanish
    return Part::Zero;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto& r = alg->basis_bracket(x, y);
      if (r.empty()) continue;
      auto want = expect(g.part_[x], g.part_[y]);
      for (const auto& t : r) {
        if (!want || g.part_[t.index] != *want) {
          throw InternalError("grading is not compatible with the bracket at [" + alg->label(x) + ", " +
                              alg->label(y) + "]");
        }
      }
    }
  }
  return g;
}

inline Grading build_grading(const ChevalleyAlgebra& alg, std::size_t node) {
  return build_grading(std::make_shared<const ChevalleyAlgebra>(alg), node);
}

inline Grading build_grading(SimpleType t, std::size_t node) {
  return build_grading(std::make_shared<const ChevalleyAlgebra>(build_chevalley(build_root_system(t))), node);
}

struct CominisculePair {
  SimpleType type;
  std::size_t node;  // 0-based
  std::size_t dim_minus;
};

/// Every (type, node) up to max_rank (plus E6, E7 when max_rank allows)
/// whose node has coefficient 1 in the highest root. Each node's verdict is
/// cross-checked against abelianness of g_+.
inline std::vector<CominisculePair> enumerate_cominiscule(int max_rank) {
  if (max_rank < 1) throw ArgumentError("max_rank must be at least 1");
  std::vector<SimpleType> types;
  for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
    for (int n = 1; n <= max_rank; ++n) {
      SimpleType t{f, n};
      if (t.admissible()) types.push_back(t);
    }
  }
  for (int n : {6, 7}) {
    if (n <= max_rank) types.push_back({Family::E, n});
  }
  std::vector<CominisculePair> out;
  for (const auto& t : types) {
    const RootSystem rs = build_root_system(t);
    for (std::size_t node = 0; node < static_cast<std::size_t>(t.rank); ++node) {
      const bool by_coeff = is_cominiscule_node(rs, node);
      std::size_t count = 0;
      bool abelian = true;
      std::vector<const Root*> nc;
      for (const auto& r : rs.positive_roots()) {
        if (r.coeffs[node] > 0) nc.push_back(&r);
      }
      for (const Root* a : nc) {
        if (a->coeffs[node] == 1) ++count;
        for (const Root* b : nc) {
          if (rs.is_root(*a + *b)) abelian = false;
        }
      }
      if (by_coeff != abelian) {
        throw InternalError("cominiscule criteria disagree on " + t.name() + " node " + std::to_string(node + 1));
      }
      if (by_coeff) out.push_back({t, node, count});
    }
  }
  return out;
}

/// Pairs in the default verification scope: every cominiscule pair with
/// rank <= max_rank for A-D, plus E6 (both nodes) and E7 regardless.
inline std::vector<CominisculePair> default_scope(int max_rank) {
  auto pairs = enumerate_cominiscule(std::max(max_rank, 1));
  std::erase_if(pairs, [](const CominisculePair& p) { return p.type.family == Family::E; });
  for (int n : {6, 7}) {
    const RootSystem rs = build_root_system({Family::E, n});
    for (std::size_t node = 0; node < static_cast<std::size_t>(n); ++node) {
      if (!is_cominiscule_node(rs, node)) continue;
      std::size_t count = 0;
      for (const auto& r : rs.positive_roots()) count += r.coeffs[node] == 1;
      pairs.push_back({{Family::E, n}, node, count});
    }
  }
  return pairs;
}

struct DiagramAutomorphism {
  std::vector<std::size_t> perm;  // perm[i] = image of simple root i

  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (perm[i] != i) return false;
    }
    return true;
  }
  friend bool operator==(const DiagramAutomorphism&, const DiagramAutomorphism&) = default;
};

/// All Cartan-matrix-preserving permutations fixing the marked node,
/// identity first, the rest in lexicographic order.
inline std::vector<DiagramAutomorphism> diagram_automorphisms(const Grading& g) {
  const auto& cartan = g.algebra().root_system().cartan_matrix();
  const std::size_t n = cartan.size();
  std::vector<DiagramAutomorphism> out;
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back({perm});
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      if (i == g.marked_node() && c != i) continue;
      if (c == g.marked_node() && i != c) continue;
      bool ok = cartan[c][c] == cartan[i][i];
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = cartan[c][perm[j]] == cartan[i][j] && cartan[perm[j]][c] == cartan[j][i];
      }
      if (!ok) continue;
      used[c] = true;
      perm[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  rec(rec, 0);
  std::stable_partition(out.begin(), out.end(), [](const DiagramAutomorphism& d) { return d.is_identity(); });
  return out;
}

/// Linear map on the algebra given by the images of the basis vectors.
class AlgebraMap {
 public:
  AlgebraMap() = default;
  explicit AlgebraMap(std::vector<AlgebraElement> images) : images_(std::move(images)) {}

  static AlgebraMap identity(std::size_t dim) {
    std::vector<AlgebraElement> im;
    for (std::size_t i = 0; i < dim; ++i) im.push_back(AlgebraElement::basis(i));
    return AlgebraMap(std::move(im));
  }

  std::size_t dim() const { return images_.size(); }
  const AlgebraElement& image(std::size_t i) const { return images_.at(i); }

  AlgebraElement operator()(const AlgebraElement& x) const {
    AlgebraElement out;
    for (const auto& [i, c] : x.terms()) out += c * images_.at(i);
    return out;
  }

  friend AlgebraMap operator*(const AlgebraMap& a, const AlgebraMap& b) {
    std::vector<AlgebraElement> im;
    for (std::size_t i = 0; i < b.dim(); ++i) im.push_back(a(b.image(i)));
    return AlgebraMap(std::move(im));
  }

  friend bool operator==(const AlgebraMap&, const AlgebraMap&) = default;

  bool is_identity() const { return *this == identity(dim()); }

  /// True iff every basis vector maps to +-itself.
  bool is_diagonal_sign() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto& im = images_[i];
      if (im.size() != 1 || im.terms().begin()->first != i || abs(im.terms().begin()->second) != 1) return false;
    }
    return true;
  }

 private:
  std::vector<AlgebraElement> images_;
};

/// Lifts a diagram automorphism to an algebra automorphism sending
/// X_{+-alpha_i} to X_{+-alpha_perm(i)} and H_i to H_perm(i). Non-simple root
/// vectors are reached through extraspecial decompositions xi = alpha + eta
/// (alpha simple), which fixes the sign of each image. The result is checked
/// to preserve every bracket.
inline AlgebraMap lift_automorphism(const Grading& g, const DiagramAutomorphism& d) {
  const auto& alg = g.algebra();
  const auto& rs = alg.root_system();
  const auto& pos = rs.positive_roots();
  const std::size_t r = alg.rank();
  const std::size_t P = rs.num_positive();
  if (d.perm.size() != r) throw ArgumentError("diagram automorphism has the wrong size");

  auto permute = [&](const Root& a) {
    Root b{std::vector<int>(r, 0)};
    for (std::size_t i = 0; i < r; ++i) b.coeffs[d.perm[i]] += a.coeffs[i];
    return b;
  };

  std::vector<AlgebraElement> images(alg.dim());
  for (std::size_t i = 0; i < r; ++i) images[i] = AlgebraElement::basis(d.perm[i]);
  // sign[k] for positive root k; negative roots receive the same sign.
  std::vector<std::int64_t> sign(P, 0);
  for (std::size_t k = 0; k < P; ++k) {
    const Root target = permute(pos[k]);
    auto t = rs.index_of(target);
    if (!t || *t >= P) throw InternalError("diagram automorphism does not permute the positive roots");
    if (pos[k].height() == 1) {
      sign[k] = 1;
    } else {
      std::optional<std::size_t> a, eta;
      for (std::size_t s = 0; s < r && !a; ++s) {
        auto e = rs.index_of(pos[k] - pos[s]);
        if (e && *e < P) {
          a = s;
          eta = *e;
        }
      }
      if (!a) throw InternalError("no simple decomposition of a positive root");
      const std::size_t ta = *rs.index_of(permute(pos[*a]));
      const std::size_t te = *rs.index_of(permute(pos[*eta]));
      const std::int64_t n_src = alg.structure_constant(*a, *eta);
      const std::int64_t n_img = alg.structure_constant(ta, te);
      if (n_src == 0 || n_img == 0 || (sign[*eta] * n_img) % n_src != 0) {
        throw InternalError("inconsistent lift at root " + pos[k].to_string());
      }
      sign[k] = sign[*eta] * n_img / n_src;
      if (sign[k] != 1 && sign[k] != -1) throw InternalError("lift sign is not +-1 at root " + pos[k].to_string());
    }
    images[alg.root_index(k)] = AlgebraElement::basis(alg.root_index(*t), sign[k]);
    // [X_-a, X_-eta] = N_{-a,-eta} X_-xi = -N_{a,eta} X_-xi: same sign propagation.
    images[alg.root_index(rs.negative_index(k))] =
        AlgebraElement::basis(alg.root_index(rs.negative_index(*t)), sign[k]);
  }
  AlgebraMap phi(std::move(images));

  for (std::size_t x = 0; x < alg.dim(); ++x) {
    for (std::size_t y = x + 1; y < alg.dim(); ++y) {
      AlgebraElement lhs = phi(alg.bracket_basis(x, y));
      AlgebraElement rhs = alg.bracket(phi.image(x), phi.image(y));
      if (lhs != rhs) {
        throw InternalError("lifted diagram automorphism does not preserve [" + alg.label(x) + ", " +
                            alg.label(y) + "]");
      }
    }
  }
  return phi;
}

struct KlinglerWeight {
  std::vector<Rational> gamma;  // simple-root coordinates, factors concatenated
};

/// Lowest weight of g_-: the dominance-minimal root among the roots of g_-,
/// cross-checked against minus the highest root.
inline KlinglerWeight klingler_weight(const Grading& g) {
  const auto& alg = g.algebra();
  const auto& rs = alg.root_system();
  std::optional<Root> lowest;
  for (std::size_t idx : g.minus()) {
    const Root& cand = alg.root_of(idx);
    bool below_all = true;
    for (std::size_t other : g.minus()) {
      const Root diff = alg.root_of(other) - cand;
      if (std::any_of(diff.coeffs.begin(), diff.coeffs.end(), [](int c) { return c < 0; })) {
        below_all = false;
        break;
      }
    }
    if (below_all) {
      if (lowest) throw InternalError("lowest weight of g_- is not unique");
      lowest = cand;
    }
  }
  if (!lowest) throw InternalError("g_- has no dominance-minimal root");
  if (*lowest != -rs.highest_root()) throw InternalError("lowest weight of g_- differs from -(highest root)");
  KlinglerWeight w;
  for (int c : lowest->coeffs) w.gamma.push_back(Rational(c));
  return w;
}

/// Klingler weight of a product model: one summand per simple factor.
inline KlinglerWeight klingler_weight(std::span<const Grading> factors) {
  KlinglerWeight w;
  for (const auto& g : factors) {
    auto part = klingler_weight(g).gamma;
    w.gamma.insert(w.gamma.end(), part.begin(), part.end());
  }
  return w;
}

/// <gamma, lambda> under the normalized form; the quantity tested by the
/// vanishing theorem's hypothesis <gamma, lambda> >= 0.
inline Rational pairing_hypothesis(const Grading& g, const KlinglerWeight& gamma, std::span<const Rational> lambda) {
  const auto& rs = g.algebra().root_system();
  if (gamma.gamma.size() != static_cast<std::size_t>(rs.rank()) || lambda.size() != gamma.gamma.size()) {
    throw ArgumentError("weight of wrong dimension: expected " + std::to_string(rs.rank()));
  }
  return rs.pairing(gamma.gamma, lambda);
}

}  // namespace chevgrade
