#pragma once

// Chevalley basis {H_i, X_alpha} with exact integer structure constants.
//
// Basis order (flat indices): H_1..H_r, then X_alpha for the positive roots in
// root-system order, then X_{-alpha} in the same order. Signs of N_{alpha,beta}
// are fixed by declaring N = +(p+1) on every extraspecial pair; all other
// constants follow from the standard relations between structure constants.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chevgrade/algebra_element.hpp"
#include "chevgrade/error.hpp"
#include "chevgrade/exact.hpp"
#include "chevgrade/root_system.hpp"

namespace chevgrade {

enum class BasisKind { Cartan, RootVector };

struct BasisIndex {
  BasisKind kind;
  std::size_t index;  // simple index for Cartan, root index (RootSystem::roots) otherwise

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// One term of a basis bracket: coefficient times basis vector.
struct Term {
  std::uint32_t index;
  std::int64_t coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

using BracketResult = std::vector<Term>;

/// Sparse table [e_x, e_y] for all basis pairs, integer coefficients.
class StructureTable {
 public:
  StructureTable() = default;
  explicit StructureTable(std::size_t dim) : dim_(dim), table_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  const BracketResult& at(std::size_t x, std::size_t y) const { return table_[x * dim_ + y]; }
  BracketResult& at(std::size_t x, std::size_t y) { return table_[x * dim_ + y]; }

  friend bool operator==(const StructureTable&, const StructureTable&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<BracketResult> table_;
};

class ChevalleyAlgebra {
 public:
  /// Wraps an arbitrary structure table over the basis of `rs` and computes
  /// the Killing form from it. No axiom is checked here.
  ChevalleyAlgebra(RootSystem rs, StructureTable table) : rs_(std::move(rs)), table_(std::move(table)) {
    if (table_.dim() != dim()) throw ArgumentError("structure table has the wrong dimension");
    compute_coroots();
    compute_killing();
  }

  const RootSystem& root_system() const { return rs_; }
  std::size_t rank() const { return static_cast<std::size_t>(rs_.rank()); }
  std::size_t dim() const { return rank() + rs_.roots().size(); }
  const StructureTable& structure() const { return table_; }

  std::size_t cartan_index(std::size_t i) const { return i; }
  std::size_t root_index(std::size_t root) const { return rank() + root; }
  std::size_t root_index(const Root& r) const {
    auto idx = rs_.index_of(r);
    if (!idx) throw ArgumentError("not a root: " + r.to_string());
    return root_index(*idx);
  }

  BasisIndex basis_index(std::size_t flat) const {
    if (flat >= dim()) throw ArgumentError("basis index out of range");
    if (flat < rank()) return {BasisKind::Cartan, flat};
    return {BasisKind::RootVector, flat - rank()};
  }
  bool is_cartan(std::size_t flat) const { return flat < rank(); }
  /// Root of a root-vector basis element.
  const Root& root_of(std::size_t flat) const {
    if (is_cartan(flat)) throw ArgumentError("Cartan basis element has no root");
    return rs_.roots().at(flat - rank());
  }

  std::string label(std::size_t flat) const {
    if (is_cartan(flat)) return "H" + std::to_string(flat + 1);
    return "X" + root_of(flat).to_string();
  }

  /// Coroot H_alpha as an integer combination of H_1..H_r.
  const std::vector<int>& coroot(std::size_t root) const { return coroots_.at(root); }
  AlgebraElement coroot_element(std::size_t root) const {
    AlgebraElement h;
    const auto& c = coroots_.at(root);
    for (std::size_t i = 0; i < c.size(); ++i) h.add(i, c[i]);
    return h;
  }

  const BracketResult& basis_bracket(std::size_t x, std::size_t y) const { return table_.at(x, y); }

  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement out;
    for (const auto& [i, a] : x.terms()) {
      check(i);
      for (const auto& [j, b] : y.terms()) {
        check(j);
        const auto& r = table_.at(i, j);
        if (r.empty()) continue;
        Rational ab = a * b;
        for (const auto& t : r) out.add(t.index, ab * Rational(Integer(static_cast<long>(t.coeff))));
      }
    }
    return out;
  }

  AlgebraElement bracket_basis(std::size_t x, std::size_t y) const {
    check(x);
    check(y);
    AlgebraElement out;
    for (const auto& t : table_.at(x, y)) out.add(t.index, Rational(Integer(static_cast<long>(t.coeff))));
    return out;
  }

  /// Killing form trace(ad x ad y) on basis vectors.
  std::int64_t killing(std::size_t x, std::size_t y) const { return killing_[x * dim() + y]; }

  Rational killing(const AlgebraElement& x, const AlgebraElement& y) const {
    Rational s = 0;
    for (const auto& [i, a] : x.terms()) {
      for (const auto& [j, b] : y.terms()) {
        std::int64_t k = killing(i, j);
        if (k != 0) s += a * b * Rational(Integer(static_cast<long>(k)));
      }
    }
    return s;
  }

  /// Structure constant N_{a,b} read from the table (0 if a+b is not a root).
  std::int64_t structure_constant(std::size_t root_a, std::size_t root_b) const {
    const Root sum = rs_.roots()[root_a] + rs_.roots()[root_b];
    auto s = rs_.index_of(sum);
    if (!s) return 0;
    for (const auto& t : table_.at(root_index(root_a), root_index(root_b))) {
      if (t.index == root_index(*s)) return t.coeff;
    }
    return 0;
  }

  /// Copy with [x,y] := v and [y,x] := -v.
  ChevalleyAlgebra with_bracket(std::size_t x, std::size_t y, const AlgebraElement& v) const {
    StructureTable t = table_;
    BracketResult r, neg;
    for (const auto& [i, c] : v.terms()) {
      std::int64_t k = to_int64(c);
      r.push_back({static_cast<std::uint32_t>(i), k});
      neg.push_back({static_cast<std::uint32_t>(i), -k});
    }
    t.at(x, y) = r;
    t.at(y, x) = neg;
    return ChevalleyAlgebra(rs_, std::move(t));
  }

 private:
  void check(std::size_t i) const {
    if (i >= dim()) throw ArgumentError("basis mismatch: index " + std::to_string(i) + " outside algebra of dimension " + std::to_string(dim()));
  }

  void compute_coroots() {
    const auto& roots = rs_.roots();
    const std::size_t r = rank();
    coroots_.assign(roots.size(), std::vector<int>(r, 0));
    const std::size_t P = rs_.num_positive();
    for (std::size_t k = 0; k < P; ++k) {
      const Root& a = roots[k];
      Rational na = rs_.pairing(a, a);
      for (std::size_t i = 0; i < r; ++i) {
        Rational c = a.coeffs[i] * rs_.symmetrized_form()[i][i] / na;
        coroots_[k][i] = static_cast<int>(to_int64(c));
        coroots_[k + P][i] = -coroots_[k][i];
      }
    }
  }

  void compute_killing() {
    const std::size_t n = dim();
    killing_.assign(n * n, 0);
    // coefficient of e_z in [e_x, e_w]
    auto coeff = [&](std::size_t x, std::size_t w, std::size_t z) -> std::int64_t {
      for (const auto& t : table_.at(x, w)) {
        if (t.index == z) return t.coeff;
      }
      return 0;
    };
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        std::int64_t tr = 0;
        for (std::size_t z = 0; z < n; ++z) {
          for (const auto& t : table_.at(y, z)) {
            tr += t.coeff * coeff(x, t.index, z);
          }
        }
        killing_[x * n + y] = tr;
        killing_[y * n + x] = tr;
      }
    }
  }

  RootSystem rs_;
  StructureTable table_;
  std::vector<std::vector<int>> coroots_;
  std::vector<std::int64_t> killing_;
};

namespace detail {

// Structure constants N_{a,b} for roots given by index into RootSystem::roots.
class StructureConstantSolver {
 public:
  explicit StructureConstantSolver(const RootSystem& rs) : rs_(rs), P_(rs.num_positive()) {
    const auto& pos = rs_.positive_roots();
    extraspecial_.assign(P_, {SIZE_MAX, SIZE_MAX});
    for (std::size_t xi = 0; xi < P_; ++xi) {
      for (std::size_t a = 0; a < xi; ++a) {
        auto b = rs_.index_of(pos[xi] - pos[a]);
        if (b && *b < P_) {
          extraspecial_[xi] = {a, *b};
          break;
        }
      }
    }
  }

  std::int64_t N(std::size_t a, std::size_t b) {
    const auto& roots = rs_.roots();
    const Root sum = roots[a] + roots[b];
    auto s = rs_.index_of(sum);
    if (!s) return 0;
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const bool ap = a < P_, bp = b < P_;
    Rational val;
    if (ap && bp) {
      const std::size_t xi = *s;
      const auto [e1, e2] = extraspecial_[xi];
      if (a == e1 && b == e2) {
        val = rs_.root_string_p(roots[a], roots[b]) + 1;
      } else if (b == e1 && a == e2) {
        val = -(rs_.root_string_p(roots[b], roots[a]) + 1);
      } else if (a > b) {
        val = -N(b, a);
      } else {
        // Four-root relation with alpha + beta - e1 - e2 = 0.
        const std::size_t m1 = rs_.negative_index(e1), m2 = rs_.negative_index(e2);
        Rational n_e = -(rs_.root_string_p(roots[e1], roots[e2]) + 1);  // N_{-e1,-e2}
        Rational acc = 0;
        if (auto t = rs_.index_of(roots[b] - roots[e1]); t) {
          acc += Rational(N(b, m1) * N(a, m2)) / norm(roots[*t]);
        }
        if (auto t = rs_.index_of(roots[a] - roots[e1]); t) {
          acc += Rational(N(m1, a) * N(b, m2)) / norm(roots[*t]);
        }
        val = -norm(sum) * acc / n_e;
      }
    } else if (!ap && !bp) {
      val = -N(rs_.negative_index(a), rs_.negative_index(b));
    } else if (ap && !bp) {
      if (*s < P_) {
        val = norm(sum) / norm(roots[a]) * Rational(-N(rs_.negative_index(b), *s));
      } else {
        val = norm(sum) / norm(roots[b]) * Rational(N(rs_.negative_index(*s), a));
      }
    } else {
      val = -N(b, a);
    }
    std::int64_t v = to_int64(val);
    memo_[key] = v;
    return v;
  }

 private:
  Rational norm(const Root& r) const { return rs_.pairing(r, r); }

  const RootSystem& rs_;
  std::size_t P_;
  std::vector<std::pair<std::size_t, std::size_t>> extraspecial_;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> memo_;
};

}  // namespace detail

inline ChevalleyAlgebra build_chevalley(const RootSystem& rs) {
  const std::size_t r = static_cast<std::size_t>(rs.rank());
  const auto& roots = rs.roots();
  const std::size_t dim = r + roots.size();
  StructureTable t(dim);
  detail::StructureConstantSolver solver(rs);
  const auto& cartan = rs.cartan_matrix();

  std::vector<std::vector<int>> coroots(roots.size(), std::vector<int>(r, 0));
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Rational na = rs.pairing(roots[k], roots[k]);
    for (std::size_t i = 0; i < r; ++i) {
      coroots[k][i] = static_cast<int>(to_int64(Rational(roots[k].coeffs[i] * rs.symmetrized_form()[i][i] / na)));
    }
  }

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < roots.size(); ++k) {
      std::int64_t v = 0;
      for (std::size_t j = 0; j < r; ++j) v += roots[k].coeffs[j] * cartan[j][i];
      if (v == 0) continue;
      t.at(i, r + k).push_back({static_cast<std::uint32_t>(r + k), v});
      t.at(r + k, i).push_back({static_cast<std::uint32_t>(r + k), -v});
    }
  }
  for (std::size_t a = 0; a < roots.size(); ++a) {
    for (std::size_t b = 0; b < roots.size(); ++b) {
      const Root sum = roots[a] + roots[b];
      if (sum.is_zero()) {
        for (std::size_t i = 0; i < r; ++i) {
          if (coroots[a][i] != 0) t.at(r + a, r + b).push_back({static_cast<std::uint32_t>(i), coroots[a][i]});
        }
        continue;
      }
      auto s = rs.index_of(sum);
      if (!s) continue;
      std::int64_t n = solver.N(a, b);
      if (n == 0) throw InternalError("vanishing structure constant for a root sum");
      t.at(r + a, r + b).push_back({static_cast<std::uint32_t>(r + *s), n});
    }
  }
  return ChevalleyAlgebra(rs, std::move(t));
}

inline AlgebraElement bracket(const ChevalleyAlgebra& alg, const AlgebraElement& x, const AlgebraElement& y) {
  return alg.bracket(x, y);
}

struct AxiomCheck {
  std::string name;
  bool pass = true;
  std::string witness;  // first counterexample, empty on pass
};

struct ChevalleyReport {
  std::vector<AxiomCheck> checks;
  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  const AxiomCheck& get(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw ArgumentError("no such axiom check: " + name);
  }
};

namespace detail {

inline std::string triple_label(const ChevalleyAlgebra& alg, std::size_t x, std::size_t y, std::size_t z) {
  return "(" + alg.label(x) + ", " + alg.label(y) + ", " + alg.label(z) + ")";
}

}  // namespace detail

/// Checks antisymmetry, the four Chevalley axioms and the Jacobi identity
/// over every basis triple. Failures are reported, never thrown.
inline ChevalleyReport verify_chevalley_axioms(const ChevalleyAlgebra& alg) {
  ChevalleyReport rep;
  const std::size_t n = alg.dim();
  const std::size_t r = alg.rank();
  const auto& rs = alg.root_system();
  const auto& roots = rs.roots();

  auto fail = [](AxiomCheck& c, std::string w) {
    if (c.pass) {
      c.pass = false;
      c.witness = std::move(w);
    }
  };

  AxiomCheck anti{"antisymmetry", true, {}};
  for (std::size_t x = 0; x < n && anti.pass; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      if (!(alg.bracket_basis(x, y) + alg.bracket_basis(y, x)).is_zero()) {
        fail(anti, "[" + alg.label(x) + ", " + alg.label(y) + "] != -[" + alg.label(y) + ", " + alg.label(x) + "]");
        break;
      }
    }
  }
  rep.checks.push_back(anti);

  // (1) [H, X_a] = a(H) X_a with a(H_i) = 2<a,alpha_i>/<alpha_i,alpha_i>.
  AxiomCheck ax1{"axiom1_cartan_action", true, {}};
  for (std::size_t i = 0; i < r && ax1.pass; ++i) {
    for (std::size_t k = 0; k < roots.size(); ++k) {
      int expected = rs.cartan_integer(roots[k], rs.simple_root(static_cast<int>(i)));
      AlgebraElement want = AlgebraElement::basis(alg.root_index(k), expected);
      if (alg.bracket_basis(i, alg.root_index(k)) != want) {
        fail(ax1, "[H" + std::to_string(i + 1) + ", " + alg.label(alg.root_index(k)) + "]");
        break;
      }
    }
  }
  rep.checks.push_back(ax1);

  // (2) a(H_b) = 2<a,b>/<b,b>, with H_b = [X_b, X_-b]; checked against both the
  // normalized form and the literal Killing form: a(H_b) = 2 B(H_a,H_b)/B(H_a,H_a).
  AxiomCheck ax2{"axiom2_pairing", true, {}};
  for (std::size_t b = 0; b < roots.size() && ax2.pass; ++b) {
    AlgebraElement hb = alg.bracket_basis(alg.root_index(b), alg.root_index(rs.negative_index(b)));
    for (std::size_t a = 0; a < roots.size(); ++a) {
      AlgebraElement act = alg.bracket(hb, AlgebraElement::basis(alg.root_index(a)));
      Rational val = act.coeff(alg.root_index(a));
      Rational normalized = 2 * rs.pairing(roots[a], roots[b]) / rs.pairing(roots[b], roots[b]);
      AlgebraElement ha = alg.bracket_basis(alg.root_index(a), alg.root_index(rs.negative_index(a)));
      Rational via_killing = 2 * alg.killing(ha, hb) / alg.killing(ha, ha);
      if (act != AlgebraElement::basis(alg.root_index(a), val) || val != normalized || val != via_killing) {
        fail(ax2, "alpha=" + roots[a].to_string() + " beta=" + roots[b].to_string());
        break;
      }
    }
  }
  rep.checks.push_back(ax2);

  AxiomCheck ax3{"axiom3_cartan_abelian", true, {}};
  for (std::size_t i = 0; i < r && ax3.pass; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (!alg.bracket_basis(i, j).is_zero()) {
        fail(ax3, "[H" + std::to_string(i + 1) + ", H" + std::to_string(j + 1) + "]");
        break;
      }
    }
  }
  rep.checks.push_back(ax3);

  AxiomCheck ax4{"axiom4_root_brackets", true, {}};
  for (std::size_t a = 0; a < roots.size() && ax4.pass; ++a) {
    for (std::size_t b = 0; b < roots.size(); ++b) {
      const std::size_t xa = alg.root_index(a), xb = alg.root_index(b);
      AlgebraElement got = alg.bracket_basis(xa, xb);
      const Root sum = roots[a] + roots[b];
      std::string w = "[" + alg.label(xa) + ", " + alg.label(xb) + "]";
      if (sum.is_zero()) {
        if (got != alg.coroot_element(a)) fail(ax4, w + " != H_alpha");
        continue;
      }
      auto s = rs.index_of(sum);
      if (!s) {
        if (!got.is_zero()) fail(ax4, w + " should vanish (4d)");
        continue;
      }
      const std::size_t xs = alg.root_index(*s);
      Rational nab = got.coeff(xs);
      if (got != AlgebraElement::basis(xs, nab) || !is_integer(nab)) {
        fail(ax4, w + " is not an integer multiple of X_{alpha+beta} (4a)");
        continue;
      }
      Rational nneg = alg.bracket_basis(alg.root_index(rs.negative_index(a)), alg.root_index(rs.negative_index(b)))
                          .coeff(alg.root_index(rs.negative_index(*s)));
      if (nneg != -nab) fail(ax4, w + ": N_{-a,-b} != -N_{a,b} (4b)");
      int p = rs.root_string_p(roots[a], roots[b]);
      if (abs(nab) != p + 1) fail(ax4, w + ": |N| != p+1 (4c)");
    }
  }
  rep.checks.push_back(ax4);

  AxiomCheck jac{"jacobi", true, {}};
  {
    std::vector<std::int64_t> acc(n, 0);
    std::vector<std::uint32_t> touched;
    auto accumulate = [&](std::size_t u, std::size_t v, std::size_t w) {
      for (const auto& t1 : alg.basis_bracket(u, v)) {
        for (const auto& t2 : alg.basis_bracket(t1.index, w)) {
          if (acc[t2.index] == 0) touched.push_back(t2.index);
          acc[t2.index] += t1.coeff * t2.coeff;
        }
      }
    };
    for (std::size_t x = 0; x < n && jac.pass; ++x) {
      for (std::size_t y = x + 1; y < n && jac.pass; ++y) {
        for (std::size_t z = y + 1; z < n; ++z) {
          accumulate(x, y, z);
          accumulate(y, z, x);
          accumulate(z, x, y);
          bool bad = false;
          for (auto i : touched) {
            if (acc[i] != 0) bad = true;
            acc[i] = 0;
          }
          touched.clear();
          if (bad) {
            fail(jac, detail::triple_label(alg, x, y, z));
            break;
          }
        }
      }
    }
  }
  rep.checks.push_back(jac);
  return rep;
}

}  // namespace chevgrade
