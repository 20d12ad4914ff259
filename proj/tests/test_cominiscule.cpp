#include <map>

#include <catch_amalgamated.hpp>

#include "chevgrade/cominiscule.hpp"

using namespace chevgrade;

namespace {

// Cominiscule nodes (1-based) with dim g_-, from the classical list of
// compact Hermitian symmetric spaces.
std::map<std::pair<std::string, std::size_t>, std::size_t> classical_table(int max_rank) {
  std::map<std::pair<std::string, std::size_t>, std::size_t> t;
  for (int n = 1; n <= max_rank; ++n) {
    for (int k = 1; k <= n; ++k) t[{"A" + std::to_string(n), k}] = static_cast<std::size_t>(k * (n + 1 - k));
    if (n >= 2) t[{"B" + std::to_string(n), 1}] = static_cast<std::size_t>(2 * n - 1);
    if (n >= 2) t[{"C" + std::to_string(n), n}] = static_cast<std::size_t>(n * (n + 1) / 2);
    if (n >= 3) {
      t[{"D" + std::to_string(n), 1}] = static_cast<std::size_t>(2 * n - 2);
      t[{"D" + std::to_string(n), n - 1}] = static_cast<std::size_t>(n * (n - 1) / 2);
      t[{"D" + std::to_string(n), n}] = static_cast<std::size_t>(n * (n - 1) / 2);
    }
  }
  t[{"E6", 1}] = 16;
  t[{"E6", 6}] = 16;
  t[{"E7", 7}] = 27;
  return t;
}

}  // namespace

TEST_CASE("enumeration reproduces the classical list") {
  auto expected = classical_table(7);
  std::map<std::pair<std::string, std::size_t>, std::size_t> got;
  for (const auto& p : enumerate_cominiscule(7)) got[{p.type.name(), p.node + 1}] = p.dim_minus;
  CHECK(got == expected);
}

TEST_CASE("enumeration at rank 1 is sl2 alone") {
  const auto pairs = enumerate_cominiscule(1);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].type.name() == "A1");
  CHECK(pairs[0].dim_minus == 1);
  CHECK_THROWS_AS(enumerate_cominiscule(0), ArgumentError);
}

TEST_CASE("default scope always carries E6 and E7") {
  const auto pairs = default_scope(2);
  std::size_t e = 0;
  for (const auto& p : pairs) e += p.type.family == Family::E;
  CHECK(e == 3);
}

TEST_CASE("grading dimensions and bracket relations") {
  const Grading g = build_grading({Family::A, 3}, 1);
  CHECK(g.dim_minus() == 4);
  CHECK(g.dim_zero() == 7);
  CHECK(g.dim_plus() == 4);
  const auto& alg = g.algebra();
  using Part = Grading::Part;
  for (std::size_t a : g.minus())
    for (std::size_t b : g.minus()) CHECK(alg.bracket_basis(a, b).is_zero());
  for (std::size_t a : g.minus())
    for (std::size_t b : g.plus()) CHECK(g.lies_in(alg.bracket_basis(a, b), Part::Zero));
  for (std::size_t i = 0; i < g.dim_minus(); ++i) {
    CHECK(alg.root_of(g.minus()[i]) == -alg.root_of(g.plus()[i]));
    CHECK(g.dual_pairing(i) != 0);
    CHECK(alg.killing(AlgebraElement::basis(g.minus()[i]), g.dual_plus(i)) == 1);
  }
}

TEST_CASE("ad of a g_+ element cubes to zero") {
  const Grading g = build_grading({Family::C, 3}, 2);
  const auto& alg = g.algebra();
  AlgebraElement x;
  for (std::size_t i = 0; i < g.dim_plus(); ++i) x.add(g.plus()[i], Rational(static_cast<long>(i + 1)));
  for (std::size_t y = 0; y < alg.dim(); ++y) {
    const auto once = alg.bracket(x, AlgebraElement::basis(y));
    const auto thrice = alg.bracket(x, alg.bracket(x, once));
    CHECK(thrice.is_zero());
  }
}

TEST_CASE("non-cominiscule node is rejected with a witness") {
  try {
    (void)build_grading({Family::B, 3}, 1);
    FAIL("expected NotCominisculeError");
  } catch (const NotCominisculeError& e) {
    const auto alg = build_chevalley(build_root_system({Family::B, 3}));
    // Both witnesses sit in the same +-1 eigenspace, yet their bracket does not vanish.
    const int ca = alg.root_of(e.witness_a).coeffs[1], cb = alg.root_of(e.witness_b).coeffs[1];
    CHECK(std::abs(ca) == 1);
    CHECK(ca == cb);
    CHECK_FALSE(alg.bracket_basis(e.witness_a, e.witness_b).is_zero());
  }
  CHECK_THROWS_AS(build_grading({Family::A, 2}, 2), ArgumentError);
}

TEST_CASE("diagram automorphisms fixing the marked node") {
  auto order = [](SimpleType t, std::size_t node) { return diagram_automorphisms(build_grading(t, node)).size(); };
  CHECK(order({Family::A, 3}, 1) == 2);
  CHECK(order({Family::A, 3}, 0) == 1);
  CHECK(order({Family::A, 5}, 2) == 2);
  CHECK(order({Family::D, 4}, 0) == 2);
  CHECK(order({Family::D, 5}, 0) == 2);
  CHECK(order({Family::D, 5}, 4) == 1);
  CHECK(order({Family::E, 6}, 0) == 1);
  CHECK(order({Family::E, 7}, 6) == 1);
  const auto d4 = diagram_automorphisms(build_grading({Family::D, 4}, 0));
  CHECK(d4[0].is_identity());
  CHECK(d4[1].perm == std::vector<std::size_t>{0, 1, 3, 2});
}

TEST_CASE("lifted automorphisms are Lie algebra automorphisms") {
  for (auto [t, node] : {std::pair{SimpleType{Family::A, 3}, std::size_t{1}}, std::pair{SimpleType{Family::D, 4}, std::size_t{0}},
                         std::pair{SimpleType{Family::A, 5}, std::size_t{2}}}) {
    const Grading g = build_grading(t, node);
    const auto& alg = g.algebra();
    for (const auto& d : diagram_automorphisms(g)) {
      const AlgebraMap phi = lift_automorphism(g, d);
      CHECK(phi.is_identity() == d.is_identity());
      CHECK((phi * phi).is_diagonal_sign());
      for (std::size_t x = 0; x < alg.dim(); ++x) {
        for (std::size_t y = 0; y < alg.dim(); ++y) {
          const auto px = phi(AlgebraElement::basis(x)), py = phi(AlgebraElement::basis(y));
          REQUIRE(phi(alg.bracket_basis(x, y)) == alg.bracket(px, py));
          CHECK(alg.killing(px, py) == alg.killing(x, y));
        }
      }
    }
  }
}

TEST_CASE("Klingler weight is minus the highest root") {
  const Grading g = build_grading({Family::D, 5}, 0);
  const auto w = klingler_weight(g);
  CHECK(w.gamma == std::vector<Rational>{-1, -2, -2, -1, -1});
  CHECK(pairing_hypothesis(g, w, w.gamma) == 2);
  std::vector<Rational> lambda{1, 0, 0, 0, 0};
  CHECK(pairing_hypothesis(g, w, lambda) == 0);
  std::vector<Rational> bad{1, 0};
  CHECK_THROWS_AS(pairing_hypothesis(g, w, bad), ArgumentError);

  std::vector<Grading> two{build_grading({Family::A, 1}, 0), build_grading({Family::A, 2}, 0)};
  CHECK(klingler_weight(two).gamma == std::vector<Rational>{-1, -1, -1});
}
