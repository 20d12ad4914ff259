#pragma once

// Root systems of the simple types A_n, B_n, C_n, D_n, E6, E7.
//
// Roots are integer coefficient vectors in the basis of simple roots
// (Bourbaki numbering). The invariant form is the symmetrized Cartan matrix
// normalized so that long roots have norm 2.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chevgrade/error.hpp"
#include "chevgrade/exact.hpp"

namespace chevgrade {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E' };

struct SimpleType {
  Family family;
  int rank;

  static SimpleType make(Family f, int rank) {
    SimpleType t{f, rank};
    t.validate();
    return t;
  }

  static Family parse_family(std::string_view s) {
    if (s.size() == 1) {
      switch (s[0]) {
        case 'A': case 'a': return Family::A;
        case 'B': case 'b': return Family::B;
        case 'C': case 'c': return Family::C;
        case 'D': case 'd': return Family::D;
        case 'E': case 'e': return Family::E;
        default: break;
      }
    }
    throw ConstructionError("unknown family '" + std::string(s) + "' (expected one of A, B, C, D, E)");
  }

  bool admissible() const {
    switch (family) {
      case Family::A: return rank >= 1;
      case Family::B: return rank >= 2;
      case Family::C: return rank >= 2;
      case Family::D: return rank >= 3;
      case Family::E: return rank == 6 || rank == 7;
    }
    return false;
  }

  void validate() const {
    if (!admissible()) {
      throw ConstructionError("inadmissible simple type " + name());
    }
  }

  char family_char() const { return static_cast<char>(family); }
  std::string family_name() const { return std::string(1, family_char()); }
  std::string name() const { return family_name() + std::to_string(rank); }

  friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

/// A root (or any root-lattice vector) in simple-root coordinates.
struct Root {
  std::vector<int> coeffs;

  int height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }
  bool is_positive() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; }) && height() > 0;
  }
  bool is_negative() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c <= 0; }) && height() < 0;
  }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
  }

  Root operator-() const {
    Root r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
  }
  friend Root operator+(Root a, const Root& b) {
    if (a.coeffs.size() != b.coeffs.size()) throw ArgumentError("root dimension mismatch");
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
  }
  friend Root operator-(const Root& a, const Root& b) { return a + (-b); }
  friend Root operator*(int k, Root a) {
    for (auto& c : a.coeffs) c *= k;
    return a;
  }
  friend bool operator==(const Root&, const Root&) = default;
  friend auto operator<=>(const Root&, const Root&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coeffs[i]);
    }
    return s + ")";
  }
};

class RootSystem {
 public:
  const SimpleType& type() const { return type_; }
  int rank() const { return type_.rank; }

  /// Positive roots sorted by height, ties broken so that at each height the
  /// lexicographically larger coefficient vector comes first (simple roots
  /// therefore appear as alpha_1, ..., alpha_n).
  const std::vector<Root>& positive_roots() const { return positive_; }
  std::size_t num_positive() const { return positive_.size(); }

  /// All roots: positive roots in order, followed by their negatives in the
  /// same order. Index r < P is positive, P + r is -(positive r).
  const std::vector<Root>& roots() const { return all_; }

  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<std::vector<Rational>>& symmetrized_form() const { return form_; }

  Root simple_root(int i) const {
    Root r{std::vector<int>(static_cast<std::size_t>(rank()), 0)};
    r.coeffs.at(static_cast<std::size_t>(i)) = 1;
    return r;
  }

  std::optional<std::size_t> index_of(const Root& r) const {
    auto it = index_.find(r.coeffs);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool is_root(const Root& r) const { return index_.contains(r.coeffs); }

  std::size_t negative_index(std::size_t idx) const {
    const std::size_t p = positive_.size();
    return idx < p ? idx + p : idx - p;
  }

  /// Normalized invariant pairing of two root-lattice (or weight) vectors.
  Rational pairing(std::span<const Rational> a, std::span<const Rational> b) const {
    check_dim(a.size());
    check_dim(b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] != 0) s += a[i] * form_[i][j] * b[j];
      }
    }
    return s;
  }

  Rational pairing(const Root& a, const Root& b) const {
    check_dim(a.coeffs.size());
    check_dim(b.coeffs.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      if (a.coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
        if (b.coeffs[j] != 0) s += a.coeffs[i] * form_[i][j] * b.coeffs[j];
      }
    }
    return s;
  }

  /// 2<a,b>/<b,b>, an integer for roots a, b.
  int cartan_integer(const Root& a, const Root& b) const {
    Rational v = 2 * pairing(a, b) / pairing(b, b);
    return static_cast<int>(to_int64(v));
  }

  /// Largest p >= 0 such that b - p*a is a root.
  int root_string_p(const Root& a, const Root& b) const {
    require_root(a);
    require_root(b);
    int p = 0;
    while (is_root(b - (p + 1) * a)) ++p;
    return p;
  }

  /// Largest q >= 0 such that b + q*a is a root.
  int root_string_q(const Root& a, const Root& b) const {
    require_root(a);
    require_root(b);
    int q = 0;
    while (is_root(b + (q + 1) * a)) ++q;
    return q;
  }

  /// The unique root maximal in the dominance order.
  const Root& highest_root() const { return positive_.back(); }

  /// Simple reflection s_i applied to a lattice vector.
  Root reflect(const Root& r, int i) const {
    Root out = r;
    int c = 0;
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) c += r.coeffs[j] * cartan_[j][static_cast<std::size_t>(i)];
    out.coeffs[static_cast<std::size_t>(i)] -= c;
    return out;
  }

  void require_root(const Root& r) const {
    check_dim(r.coeffs.size());
    if (!is_root(r)) throw ArgumentError("not a root of " + type_.name() + ": " + r.to_string());
  }

 private:
  friend RootSystem build_root_system(SimpleType t);

  void check_dim(std::size_t n) const {
    if (n != static_cast<std::size_t>(rank())) {
      throw ArgumentError("dimension mismatch: expected " + std::to_string(rank()) + " coordinates, got " +
                          std::to_string(n));
    }
  }

  SimpleType type_{Family::A, 1};
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Rational>> form_;
  std::vector<Root> positive_;
  std::vector<Root> all_;
  std::map<std::vector<int>, std::size_t> index_;
};

namespace detail {

// <alpha_i, alpha_j> with long roots of norm 2.
inline std::vector<std::vector<Rational>> simple_root_form(const SimpleType& t) {
  const auto n = static_cast<std::size_t>(t.rank);
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
  auto link = [&](std::size_t i, std::size_t j, const Rational& v) {
    g[i][j] = v;
    g[j][i] = v;
  };
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 2;
  switch (t.family) {
    case Family::A:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Family::B:
      g[n - 1][n - 1] = 1;
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Family::C:
      for (std::size_t i = 0; i + 1 < n; ++i) g[i][i] = 1;
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, Rational(-1, 2));
      link(n - 2, n - 1, -1);
      break;
    case Family::D:
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case Family::E:
      link(0, 2, -1);
      link(2, 3, -1);
      link(1, 3, -1);
      for (std::size_t i = 3; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
  }
  return g;
}

}  // namespace detail

inline RootSystem build_root_system(SimpleType t) {
  t.validate();
  RootSystem rs;
  rs.type_ = t;
  const auto n = static_cast<std::size_t>(t.rank);
  rs.form_ = detail::simple_root_form(t);
  rs.cartan_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rs.cartan_[i][j] = static_cast<int>(to_int64(Rational(2 * rs.form_[i][j] / rs.form_[j][j])));
    }
  }

  // Level-by-level closure under root strings: beta + alpha_i is a root iff
  // q > 0 where q = p - <beta, alpha_i^vee>.
  std::map<std::vector<int>, bool> known;
  std::vector<std::vector<int>> level;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    level.push_back(e);
    known[e] = true;
  }
  std::vector<std::vector<int>> all_pos;
  while (!level.empty()) {
    std::sort(level.begin(), level.end(), std::greater<>());
    for (auto& r : level) all_pos.push_back(r);
    std::vector<std::vector<int>> next;
    for (const auto& beta : level) {
      for (std::size_t i = 0; i < n; ++i) {
        int p = 0;
        for (;;) {
          std::vector<int> m = beta;
          m[i] -= p + 1;
          if (!known.contains(m)) break;
          ++p;
        }
        int pair = 0;
        for (std::size_t j = 0; j < n; ++j) pair += beta[j] * rs.cartan_[j][i];
        int q = p - pair;
        if (q > 0) {
          std::vector<int> up = beta;
          up[i] += 1;
          if (!known.contains(up)) {
            known[up] = true;
            next.push_back(up);
          }
        }
      }
    }
    level = std::move(next);
  }
  for (auto& c : all_pos) rs.positive_.push_back(Root{c});
  rs.all_ = rs.positive_;
  for (const auto& r : rs.positive_) rs.all_.push_back(-r);
  for (std::size_t i = 0; i < rs.all_.size(); ++i) rs.index_[rs.all_[i].coeffs] = i;

  const Root& top = rs.positive_.back();
  for (std::size_t i = 0; i + 1 < rs.positive_.size(); ++i) {
    if (rs.positive_[i].height() == top.height()) throw InternalError("highest root is not unique");
  }
  return rs;
}

inline Root highest_root(const RootSystem& rs) { return rs.highest_root(); }

inline int root_string_p(const RootSystem& rs, const Root& a, const Root& b) { return rs.root_string_p(a, b); }

inline Rational pairing(const RootSystem& rs, const Root& a, const Root& b) { return rs.pairing(a, b); }

/// Classical count of positive roots, for cross-checks.
inline std::size_t classical_positive_root_count(SimpleType t) {
  const auto n = static_cast<std::size_t>(t.rank);
  switch (t.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : 63;
  }
  return 0;
}

}  // namespace chevgrade
