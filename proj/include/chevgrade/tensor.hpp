#pragma once

// Sparse exact tensors over the graded pieces of a cominiscule grading, and
// the two actions of gl(g_-) / GL(g_-) on them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "chevgrade/error.hpp"
#include "chevgrade/exact.hpp"
#include "chevgrade/matrix.hpp"
#include "chevgrade/sparse_linear.hpp"

namespace chevgrade {

/// Endomorphism of g_- in the grading's g_- basis; (i, j) is the coefficient
/// of e_i in the image of e_j.
using GlMinusMap = RationalMatrix;

enum class AxisKind { Minus, MinusDual, Zero, Plus, Algebra };

/// One tensor slot. Minus / MinusDual slots carry an exterior degree:
/// degree k means Lambda^k of g_- (or of g_-*), indexed by k-subsets in
/// lexicographic order. Other kinds ignore the degree.
struct Axis {
  AxisKind kind = AxisKind::Minus;
  int degree = 1;

  static Axis minus(int k = 1) { return {AxisKind::Minus, k}; }
  static Axis minus_dual(int k = 1) { return {AxisKind::MinusDual, k}; }
  static Axis zero() { return {AxisKind::Zero, 1}; }
  static Axis plus() { return {AxisKind::Plus, 1}; }
  static Axis algebra() { return {AxisKind::Algebra, 1}; }

  bool is_gl_module() const { return kind == AxisKind::Minus || kind == AxisKind::MinusDual; }
  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Bijection between k-subsets of {0..m-1} (sorted) and 0..C(m,k)-1,
/// lexicographic.
class SubsetIndexer {
 public:
  SubsetIndexer(std::size_t m, std::size_t k) : m_(m), k_(k) {
    if (k > m) return;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
      index_[cur] = subsets_.size();
      subsets_.push_back(cur);
      std::size_t i = k;
      while (i > 0 && cur[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
  }

  std::size_t size() const { return subsets_.size(); }
  const std::vector<std::size_t>& subset(std::size_t i) const { return subsets_.at(i); }
  std::size_t index(const std::vector<std::size_t>& s) const { return index_.at(s); }

 private:
  std::size_t m_, k_;
  std::vector<std::vector<std::size_t>> subsets_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

/// Sizes of the graded pieces a tensor is built over.
struct PieceDims {
  std::size_t minus = 0, zero = 0, plus = 0, algebra = 0;
  friend bool operator==(const PieceDims&, const PieceDims&) = default;
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class Tensor {
 public:
  using Index = std::vector<std::size_t>;

  Tensor() = default;
  Tensor(PieceDims dims, std::vector<Axis> axes) : dims_(dims), axes_(std::move(axes)) {
    for (const auto& a : axes_) extents_.push_back(extent(a));
  }

  const PieceDims& dims() const { return dims_; }
  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<std::size_t>& extents() const { return extents_; }
  std::size_t rank() const { return axes_.size(); }

  std::size_t extent(const Axis& a) const {
    switch (a.kind) {
      case AxisKind::Minus:
      case AxisKind::MinusDual: return binomial(dims_.minus, static_cast<std::size_t>(a.degree));
      case AxisKind::Zero: return dims_.zero;
      case AxisKind::Plus: return dims_.plus;
      case AxisKind::Algebra: return dims_.algebra;
    }
    return 0;
  }

  std::int64_t linear(const Index& idx) const {
    if (idx.size() != axes_.size()) throw ArgumentError("tensor index of wrong arity");
    std::int64_t l = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= extents_[i]) throw ArgumentError("tensor index out of range");
      l = l * static_cast<std::int64_t>(extents_[i]) + static_cast<std::int64_t>(idx[i]);
    }
    return l;
  }

  Index unravel(std::int64_t l) const {
    Index idx(axes_.size());
    for (std::size_t i = axes_.size(); i-- > 0;) {
      idx[i] = static_cast<std::size_t>(l % static_cast<std::int64_t>(extents_[i]));
      l /= static_cast<std::int64_t>(extents_[i]);
    }
    return idx;
  }

  Rational get(const Index& idx) const {
    auto it = entries_.find(linear(idx));
    return it == entries_.end() ? Rational(0) : it->second;
  }

  void add(const Index& idx, const Rational& v) { add_linear(linear(idx), v); }
  void set(const Index& idx, const Rational& v) {
    const auto l = linear(idx);
    if (v == 0) {
      entries_.erase(l);
    } else {
      entries_[l] = v;
    }
  }
  void add_linear(std::int64_t l, const Rational& v) {
    if (v == 0) return;
    auto [it, fresh] = entries_.emplace(l, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }

  const std::map<std::int64_t, Rational>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  bool same_shape(const Tensor& o) const { return dims_ == o.dims_ && axes_ == o.axes_; }
  void require_shape(const std::vector<Axis>& axes, const char* what) const {
    if (axes_ != axes) throw ArgumentError(std::string("shape mismatch: ") + what);
  }

  Tensor& operator+=(const Tensor& o) {
    if (!same_shape(o)) throw ArgumentError("adding tensors of different shape");
    for (const auto& [l, v] : o.entries_) add_linear(l, v);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    if (!same_shape(o)) throw ArgumentError("subtracting tensors of different shape");
    for (const auto& [l, v] : o.entries_) add_linear(l, -v);
    return *this;
  }
  Tensor& operator*=(const Rational& s) {
    if (s == 0) {
      entries_.clear();
    } else {
      for (auto& [l, v] : entries_) v *= s;
    }
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Rational& s, Tensor a) { return a *= s; }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.same_shape(b) && a.entries_ == b.entries_;
  }

  /// Entries as a sparse rational row (for rank computations).
  SparseRationalRow as_row() const { return {entries_.begin(), entries_.end()}; }

 private:
  PieceDims dims_;
  std::vector<Axis> axes_;
  std::vector<std::size_t> extents_;
  std::map<std::int64_t, Rational> entries_;
};

namespace detail {

/// Subset indexers shared by the gl(g_-) actions, cached per degree.
class WedgeTables {
 public:
  explicit WedgeTables(std::size_t m) : m_(m) {}
  const SubsetIndexer& get(int k) {
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, SubsetIndexer(m_, static_cast<std::size_t>(k))).first;
    return it->second;
  }

 private:
  std::size_t m_;
  std::map<int, SubsetIndexer> cache_;
};

/// Replaces element `from` of sorted subset s by `to`; returns the sign of
/// the resorting permutation, or 0 when `to` already occurs.
inline int replace_in_subset(std::vector<std::size_t>& s, std::size_t from, std::size_t to) {
  if (from == to) return 1;
  if (std::find(s.begin(), s.end(), to) != s.end()) return 0;
  auto it = std::find(s.begin(), s.end(), from);
  std::size_t pos = static_cast<std::size_t>(it - s.begin());
  *it = to;
  int sign = 1;
  while (pos + 1 < s.size() && s[pos] > s[pos + 1]) {
    std::swap(s[pos], s[pos + 1]);
    ++pos;
    sign = -sign;
  }
  while (pos > 0 && s[pos - 1] > s[pos]) {
    std::swap(s[pos - 1], s[pos]);
    --pos;
    sign = -sign;
  }
  return sign;
}

/// Calls emit(out_linear, a, b, coeff) for every contribution of the
/// elementary matrix E_ab (e_b -> e_a) acting as a derivation on T.
/// Sign conventions: E_ab e_b = e_a on g_-; E_ab e^a = -e^b on g_-*.
template <typename Emit>
void for_each_elementary_action(const Tensor& t, Emit&& emit) {
  const std::size_t m = t.dims().minus;
  WedgeTables tables(m);
  std::vector<std::int64_t> stride(t.rank(), 1);
  for (std::size_t i = t.rank(); i-- > 1;) {
    stride[i - 1] = stride[i] * static_cast<std::int64_t>(t.extents()[i]);
  }
  for (const auto& [lin, val] : t.entries()) {
    const auto idx = t.unravel(lin);
    for (std::size_t ax = 0; ax < t.rank(); ++ax) {
      const Axis& axis = t.axes()[ax];
      if (!axis.is_gl_module()) continue;
      const auto& tab = tables.get(axis.degree);
      const auto& subset = tab.subset(idx[ax]);
      const std::int64_t base = lin - static_cast<std::int64_t>(idx[ax]) * stride[ax];
      for (std::size_t c : subset) {
        for (std::size_t other = 0; other < m; ++other) {
          std::vector<std::size_t> s = subset;
          if (axis.kind == AxisKind::Minus) {
            // E_{other,c}: e_c -> e_other
            int sg = replace_in_subset(s, c, other);
            if (sg == 0) continue;
            emit(base + static_cast<std::int64_t>(tab.index(s)) * stride[ax], other, c, sg * val);
          } else {
            // E_{c,other}: e^c -> -e^other
            int sg = replace_in_subset(s, c, other);
            if (sg == 0) continue;
            emit(base + static_cast<std::int64_t>(tab.index(s)) * stride[ax], c, other, -sg * val);
          }
        }
      }
    }
  }
}

}  // namespace detail

/// Derivation action s . T of s in gl(g_-) on every Minus / MinusDual slot.
inline Tensor act(const GlMinusMap& s, const Tensor& t) {
  const std::size_t m = t.dims().minus;
  if (s.rows() != m || s.cols() != m) throw ArgumentError("gl(g_-) element of wrong size");
  Tensor out(t.dims(), t.axes());
  detail::for_each_elementary_action(t, [&](std::int64_t l, std::size_t a, std::size_t b, const Rational& c) {
    const Rational& sab = s(a, b);
    if (sab != 0) out.add_linear(l, sab * c);
  });
  return out;
}

/// Linear equations (over the m*m unknowns s_ab, unknown index a*m+b) whose
/// solution set is the annihilator of T in gl(g_-).
inline std::vector<SparseIntRow> annihilator_equations(const Tensor& t) {
  const std::size_t m = t.dims().minus;
  std::map<std::int64_t, std::map<std::int64_t, Rational>> eq;
  detail::for_each_elementary_action(t, [&](std::int64_t l, std::size_t a, std::size_t b, const Rational& c) {
    auto& row = eq[l];
    const auto u = static_cast<std::int64_t>(a * m + b);
    auto [it, fresh] = row.emplace(u, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) row.erase(it);
    }
  });
  std::vector<SparseIntRow> rows;
  for (auto& [l, row] : eq) {
    if (row.empty()) continue;
    rows.push_back(to_primitive_row(SparseRationalRow(row.begin(), row.end())));
  }
  return rows;
}

namespace detail {

/// Matrix of Lambda^k(g) on Lambda^k(g_-) in the subset basis (k x k minors).
inline RationalMatrix exterior_power(const RationalMatrix& g, std::size_t k) {
  const std::size_t m = g.rows();
  SubsetIndexer tab(m, k);
  RationalMatrix out(tab.size(), tab.size());
  for (std::size_t I = 0; I < tab.size(); ++I) {
    for (std::size_t J = 0; J < tab.size(); ++J) {
      RationalMatrix sub(k, k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = g(tab.subset(I)[r], tab.subset(J)[c]);
      }
      out(I, J) = k == 0 ? Rational(1) : sub.determinant();
    }
  }
  return out;
}

}  // namespace detail

/// Group action g . T of g in GL(g_-): g on Minus slots, g^{-T} on MinusDual
/// slots, extended to exterior powers through minors.
inline Tensor transform(const GlMinusMap& g, const Tensor& t) {
  const std::size_t m = t.dims().minus;
  if (g.rows() != m || g.cols() != m) throw ArgumentError("GL(g_-) element of wrong size");
  auto ginv = g.inverse();
  if (!ginv) throw ArgumentError("transform by a singular map");
  const RationalMatrix gdual = ginv->transpose();

  Tensor cur = t;
  std::map<std::pair<int, int>, RationalMatrix> mats;  // (kind, degree)
  for (std::size_t ax = 0; ax < t.rank(); ++ax) {
    const Axis& axis = t.axes()[ax];
    if (!axis.is_gl_module()) continue;
    const auto key = std::make_pair(static_cast<int>(axis.kind), axis.degree);
    if (!mats.contains(key)) {
      const auto& base = axis.kind == AxisKind::Minus ? g : gdual;
      mats.emplace(key, detail::exterior_power(base, static_cast<std::size_t>(axis.degree)));
    }
    const RationalMatrix& M = mats.at(key);
    Tensor next(t.dims(), t.axes());
    for (const auto& [lin, val] : cur.entries()) {
      auto idx = cur.unravel(lin);
      const std::size_t j = idx[ax];
      for (std::size_t i = 0; i < M.rows(); ++i) {
        const Rational& mij = M(i, j);
        if (mij == 0) continue;
        idx[ax] = i;
        next.add(idx, mij * val);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace chevgrade
