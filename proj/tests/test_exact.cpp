#include <random>

#include <catch_amalgamated.hpp>

#include "chevgrade/matrix.hpp"
#include "chevgrade/sparse_linear.hpp"

using namespace chevgrade;

namespace {

// Plain rational Gauss-Jordan, kept deliberately naive as an oracle.
std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

SparseIntRow sparse(const std::vector<Rational>& v) {
  SparseRationalRow r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) r.emplace_back(static_cast<std::int64_t>(i), v[i]);
  }
  return to_primitive_row(r);
}

}  // namespace

TEST_CASE("echelon rank agrees with dense elimination on random low-rank systems") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 3 + rng() % 6, cols = 3 + rng() % 6, inner = 1 + rng() % 4;
    std::vector<std::vector<Rational>> left(rows, std::vector<Rational>(inner)), right(inner, std::vector<Rational>(cols));
    for (auto& r : left)
      for (auto& x : r) x = d(rng);
    for (auto& r : right)
      for (auto& x : r) x = Rational(d(rng)) / static_cast<int>(1 + rng() % 3);
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < inner; ++k)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] += left[i][k] * right[k][j];
    std::vector<SparseIntRow> sp;
    for (const auto& r : a) sp.push_back(sparse(r));
    REQUIRE(exact_rank(sp) == dense_rank(a));

    const auto ns = nullspace(cols, sp);
    CHECK(ns.size() + dense_rank(a) == cols);
    for (const auto& v : ns) {
      for (const auto& r : a) {
        Rational dot = 0;
        for (const auto& [c, x] : v) dot += r[static_cast<std::size_t>(c)] * Rational(x);
        CHECK(dot == 0);
      }
    }
  }
}

TEST_CASE("nullspace keeps untouched unknowns as unit vectors") {
  std::vector<SparseIntRow> rows{{{0, Integer(1)}, {2, Integer(-1)}}};
  const auto ns = nullspace(4, rows);
  REQUIRE(ns.size() == 3);
  CHECK(ns[0] == SparseIntRow{{0, Integer(1)}, {2, Integer(1)}});
  CHECK(ns[1] == SparseIntRow{{1, Integer(1)}});
  CHECK(ns[2] == SparseIntRow{{3, Integer(1)}});
  CHECK_THROWS_AS(nullspace(2, rows), ArgumentError);
}

TEST_CASE("primitive rows divide out content and fix the leading sign") {
  SparseRationalRow r{{1, Rational(-2, 3)}, {4, Rational(4, 9)}};
  const auto p = to_primitive_row(r);
  REQUIRE(p.size() == 2);
  CHECK(abs(p[0].second) == 3);
  CHECK(abs(p[1].second) == 2);
  RowEchelon e;
  CHECK(e.insert(r));
  CHECK_FALSE(e.insert(SparseRationalRow{{1, Rational(3)}, {4, Rational(-2)}}));
  CHECK(e.contains(SparseRationalRow{{1, Rational(6)}, {4, Rational(-4)}}));
}

TEST_CASE("dense matrix inverse and determinant") {
  RationalMatrix m(3, 3);
  const int v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
  CHECK(m.determinant() == 18);
  const auto inv = m.inverse();
  REQUIRE(inv);
  CHECK(m * *inv == RationalMatrix::identity(3));
  m(2, 0) = 2;
  m(2, 1) = 6;
  m(2, 2) = 2;  // twice row 1
  CHECK(m.determinant() == 0);
  CHECK_FALSE(m.inverse());
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), ArithmeticError);
  CHECK_THROWS_AS(parse_rational("x"), ArgumentError);
  CHECK_THROWS_AS(to_int64(Rational(1, 2)), ArithmeticError);
}
