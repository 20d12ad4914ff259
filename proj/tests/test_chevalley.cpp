#include <catch_amalgamated.hpp>

#include "chevgrade/chevalley.hpp"
#include "matrix_model.hpp"

using namespace chevgrade;
using testing_model::represent;
using testing_model::commutator;

TEST_CASE("Chevalley axioms hold for every supported type up to rank 5 and E6, E7") {
  std::vector<SimpleType> types;
  for (Family f : {Family::A, Family::B, Family::C, Family::D})
    for (int n = 1; n <= 5; ++n)
      if (SimpleType{f, n}.admissible()) types.push_back({f, n});
  types.push_back({Family::E, 6});
  types.push_back({Family::E, 7});
  for (const auto& t : types) {
    INFO(t.name());
    const auto g = build_chevalley(build_root_system(t));
    const auto rep = verify_chevalley_axioms(g);
    for (const auto& c : rep.checks) {
      INFO(c.name << " " << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("sl2 by hand") {
  const auto g = build_chevalley(build_root_system({Family::A, 1}));
  REQUIRE(g.dim() == 3);
  const std::size_t H = 0, X = g.root_index(0), Y = g.root_index(1);
  CHECK(g.bracket_basis(X, Y) == AlgebraElement::basis(H));
  CHECK(g.bracket_basis(H, X) == AlgebraElement::basis(X, 2));
  CHECK(g.bracket_basis(H, Y) == AlgebraElement::basis(Y, -2));
  CHECK(g.killing(H, H) == 8);
  CHECK(g.killing(X, Y) == 4);
  CHECK(g.killing(X, X) == 0);
}

TEST_CASE("type A tables agree with matrix commutators in the defining representation") {
  for (int n = 1; n <= 4; ++n) {
    INFO("A" << n);
    const auto g = build_chevalley(build_root_system({Family::A, n}));
    const auto rho = testing_model::sl_model(g);
    for (std::size_t x = 0; x < g.dim(); ++x) {
      for (std::size_t y = 0; y < g.dim(); ++y) {
        const auto lhs = represent(rho, g.bracket_basis(x, y));
        REQUIRE(lhs == commutator(rho[x], rho[y]));
        // Killing form of sl(N) is 2N tr(xy).
        CHECK(Rational(g.killing(x, y)) == Rational(2 * (n + 1)) * (rho[x] * rho[y]).trace());
      }
    }
  }
}

TEST_CASE("structure constants satisfy |N_{a,b}| = p + 1") {
  for (SimpleType t : {SimpleType{Family::B, 3}, SimpleType{Family::C, 3}, SimpleType{Family::D, 4}}) {
    const auto g = build_chevalley(build_root_system(t));
    const auto& rs = g.root_system();
    const auto& roots = rs.roots();
    for (std::size_t a = 0; a < roots.size(); ++a) {
      for (std::size_t b = 0; b < roots.size(); ++b) {
        if (a == b || !rs.is_root(roots[a] + roots[b])) continue;
        int p = 0;
        while (rs.is_root(roots[b] - (p + 1) * roots[a])) ++p;
        CHECK(std::abs(g.structure_constant(a, b)) == p + 1);
      }
    }
  }
}

TEST_CASE("corrupting one bracket is detected") {
  const auto g = build_chevalley(build_root_system({Family::A, 2}));
  const auto& rs = g.root_system();
  const std::size_t a1 = g.root_index(rs.simple_root(0)), a2 = g.root_index(rs.simple_root(1));
  const std::size_t s = g.root_index(rs.simple_root(0) + rs.simple_root(1));
  const auto flipped = g.with_bracket(a1, a2, -g.bracket_basis(a1, a2));
  CHECK_FALSE(verify_chevalley_axioms(flipped).pass());
  const auto doubled = g.with_bracket(a1, a2, AlgebraElement::basis(s, 2));
  const auto rep = verify_chevalley_axioms(doubled);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.get("axiom4_root_brackets").pass);
  const auto wrong_h = g.with_bracket(0, a1, AlgebraElement::basis(a1, 3));
  CHECK_FALSE(verify_chevalley_axioms(wrong_h).get("axiom1_cartan_action").pass);
}

TEST_CASE("basis mismatch is an argument error") {
  const auto g = build_chevalley(build_root_system({Family::A, 1}));
  CHECK_THROWS_AS(g.bracket_basis(0, 3), ArgumentError);
  CHECK_THROWS_AS(g.bracket(AlgebraElement::basis(7), AlgebraElement::basis(0)), ArgumentError);
  CHECK_THROWS_AS(g.root_of(0), ArgumentError);
}
