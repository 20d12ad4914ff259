#pragma once

// Exact sparse linear algebra over the integers.
//
// Rows are stored fraction-free: a row is a sorted list of (column, integer)
// pairs with no zero entries, kept primitive (content 1, positive leading
// coefficient). Elimination combines two rows by integer multiples and then
// divides out the content, so no rational arithmetic ever happens during
// reduction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "chevgrade/exact.hpp"

namespace chevgrade {

using SparseIntRow = std::vector<std::pair<std::int64_t, Integer>>;
using SparseRationalRow = std::vector<std::pair<std::int64_t, Rational>>;

namespace detail {

inline void sort_and_merge(SparseIntRow& row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseIntRow out;
  out.reserve(row.size());
  for (auto& [col, val] : row) {
    if (!out.empty() && out.back().first == col) {
      out.back().second += val;
    } else {
      out.emplace_back(col, std::move(val));
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  row = std::move(out);
}

// a*x - b*y, both sorted.
inline SparseIntRow combine(const Integer& a, const SparseIntRow& x, const Integer& b,
                            const SparseIntRow& y) {
  SparseIntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -(b * y[j].second));
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Divides a row by the gcd of its entries and makes the leading entry positive.
inline void make_primitive(SparseIntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1) {
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }
}

/// Clears denominators of a rational row (any order, duplicates summed) and
/// returns the primitive integer row spanning the same line.
inline SparseIntRow to_primitive_row(const SparseRationalRow& row) {
  Integer l = 1;
  for (const auto& e : row) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  }
  SparseIntRow out;
  out.reserve(row.size());
  for (const auto& [col, q] : row) {
    Integer v = q.get_num() * (l / q.get_den());
    out.emplace_back(col, std::move(v));
  }
  detail::sort_and_merge(out);
  make_primitive(out);
  return out;
}

inline SparseIntRow to_primitive_row(SparseIntRow row) {
  detail::sort_and_merge(row);
  make_primitive(row);
  return row;
}

/// Incremental row-echelon basis of a subspace of Q^N (N implicit).
class RowEchelon {
 public:
  /// Reduces `row` by the stored pivots until its leading column is not a
  /// pivot column. Returns the remainder (empty iff the row is in the span).
  SparseIntRow reduce(SparseIntRow row) const {
    row = to_primitive_row(std::move(row));
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) break;
      const SparseIntRow& p = it->second;
      Integer g;
      mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), row.front().second.get_mpz_t());
      Integer a = p.front().second / g;
      Integer b = row.front().second / g;
      row = detail::combine(a, row, b, p);
      make_primitive(row);
    }
    return row;
  }

  /// Adds a row; returns true iff it was independent of the current span.
  bool insert(SparseIntRow row) {
    SparseIntRow rem = reduce(std::move(row));
    if (rem.empty()) return false;
    std::int64_t lead = rem.front().first;
    pivots_.emplace(lead, std::move(rem));
    return true;
  }

  bool insert(const SparseRationalRow& row) { return insert(to_primitive_row(row)); }

  bool contains(SparseIntRow row) const { return reduce(std::move(row)).empty(); }
  bool contains(const SparseRationalRow& row) const { return contains(to_primitive_row(row)); }

  std::size_t rank() const { return pivots_.size(); }

  const std::map<std::int64_t, SparseIntRow>& pivot_rows() const { return pivots_; }

 private:
  std::map<std::int64_t, SparseIntRow> pivots_;
};

template <typename Rows>
std::size_t exact_rank(const Rows& rows) {
  RowEchelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Nullspace of a small system in local coordinates 0..m-1, rows already
// primitive. Returns integer basis vectors.
inline std::vector<std::vector<Integer>> local_nullspace(std::size_t m,
                                                         const std::vector<SparseIntRow>& rows) {
  RowEchelon ech;
  for (const auto& r : rows) {
    ech.insert(r);
    if (ech.rank() == m) return {};
  }
  // Gauss-Jordan on the echelon rows (dense, rational).
  std::vector<std::vector<Rational>> mat;
  std::vector<std::size_t> pivot_cols;
  for (const auto& [lead, row] : ech.pivot_rows()) {
    std::vector<Rational> dense(m, Rational(0));
    for (const auto& [c, v] : row) dense[static_cast<std::size_t>(c)] = Rational(v);
    mat.push_back(std::move(dense));
    pivot_cols.push_back(static_cast<std::size_t>(lead));
  }
  // Rows are sorted by leading column (std::map order), so back-substitute
  // from the bottom.
  for (std::size_t i = mat.size(); i-- > 0;) {
    std::size_t pc = pivot_cols[i];
    Rational inv = 1 / mat[i][pc];
    for (auto& x : mat[i]) x *= inv;
    for (std::size_t r = 0; r < i; ++r) {
      if (mat[r][pc] == 0) continue;
      Rational f = mat[r][pc];
      for (std::size_t c = pc; c < m; ++c) mat[r][c] -= f * mat[i][c];
    }
  }
  std::vector<bool> is_pivot(m, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Integer>> basis;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    SparseRationalRow v;
    v.emplace_back(static_cast<std::int64_t>(f), Rational(1));
    for (std::size_t i = 0; i < mat.size(); ++i) {
      if (mat[i][f] != 0) v.emplace_back(static_cast<std::int64_t>(pivot_cols[i]), -mat[i][f]);
    }
    SparseIntRow iv = to_primitive_row(v);
    std::vector<Integer> dense(m, Integer(0));
    for (auto& [c, x] : iv) dense[static_cast<std::size_t>(c)] = x;
    basis.push_back(std::move(dense));
  }
  return basis;
}

}  // namespace detail

/// Exact nullspace of the homogeneous system `rows` over unknowns
/// 0..num_unknowns-1. The system is split into connected components (unknowns
/// sharing an equation), each solved independently; weight-graded systems
/// therefore decompose into their weight blocks automatically. Returned basis
/// vectors are primitive integer rows, ordered by their first unknown.
inline std::vector<SparseIntRow> nullspace(std::size_t num_unknowns,
                                           const std::vector<SparseIntRow>& rows) {
  detail::UnionFind uf(num_unknowns);
  std::vector<bool> touched(num_unknowns, false);
  for (const auto& r : rows) {
    for (const auto& [c, v] : r) {
      if (c < 0 || static_cast<std::size_t>(c) >= num_unknowns) {
        throw ArgumentError("nullspace: column out of range");
      }
      touched[static_cast<std::size_t>(c)] = true;
      uf.unite(static_cast<std::size_t>(r.front().first), static_cast<std::size_t>(c));
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t u = 0; u < num_unknowns; ++u) {
    if (touched[u]) members[uf.find(u)].push_back(u);
  }
  std::map<std::size_t, std::vector<const SparseIntRow*>> comp_rows;
  for (const auto& r : rows) {
    if (r.empty()) continue;
    comp_rows[uf.find(static_cast<std::size_t>(r.front().first))].push_back(&r);
  }

  std::vector<SparseIntRow> basis;
  for (std::size_t u = 0; u < num_unknowns; ++u) {
    if (!touched[u]) basis.push_back({{static_cast<std::int64_t>(u), Integer(1)}});
  }
  for (const auto& [root, vars] : members) {
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < vars.size(); ++i) local[vars[i]] = i;
    std::vector<SparseIntRow> lrows;
    for (const SparseIntRow* r : comp_rows[root]) {
      SparseIntRow lr;
      lr.reserve(r->size());
      for (const auto& [c, v] : *r) {
        lr.emplace_back(static_cast<std::int64_t>(local[static_cast<std::size_t>(c)]), v);
      }
      lrows.push_back(to_primitive_row(std::move(lr)));
    }
    for (auto& v : detail::local_nullspace(vars.size(), lrows)) {
      SparseIntRow g;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) g.emplace_back(static_cast<std::int64_t>(vars[i]), v[i]);
      }
      basis.push_back(std::move(g));
    }
  }
  std::sort(basis.begin(), basis.end(),
            [](const SparseIntRow& a, const SparseIntRow& b) { return a.front().first < b.front().first; });
  return basis;
}

}  // namespace chevgrade
