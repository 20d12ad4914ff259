#include <Eigen/Dense>
#include <catch_amalgamated.hpp>

#include "chevgrade/analytic/curvature.hpp"
#include "chevgrade/analytic/samplers.hpp"
#include "chevgrade/analytic/schwarzian.hpp"

using namespace chevgrade;
using namespace chevgrade::analytic;
using Catch::Matchers::WithinAbs;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial one(std::size_t n) { return Polynomial::constant(n, {1, 0}); }

RationalMap make_map(std::size_t n, std::vector<RationalFunction> comps, std::optional<std::size_t> leaf = {}) {
  RationalMap f;
  f.dimension = n;
  f.leaf_dimension = leaf;
  f.components = std::move(comps);
  f.validate();
  return f;
}

RationalMap power_map(int k) { return make_map(1, {RationalFunction::from(var(1, 0).pow(k), one(1))}); }

// Schwarzian from finite-difference jets (central differences, one Richardson step).
std::vector<Complex> fd_schwarzian(const RationalMap& f, const std::vector<Complex>& z, double h) {
  const std::size_t p = f.dimension;
  auto shifted = [&](std::size_t i, double si, std::size_t j, double sj) {
    auto w = z;
    w[i] += si;
    w[j] += sj;
    return f.evaluate(w);
  };
  auto d1 = [&](std::size_t i, double s) {
    const auto a = shifted(i, s, i, 0), b = shifted(i, -s, i, 0);
    std::vector<Complex> out(p);
    for (std::size_t l = 0; l < p; ++l) out[l] = (a[l] - b[l]) / (2 * s);
    return out;
  };
  auto d2 = [&](std::size_t i, std::size_t j, double s) {
    const auto a = shifted(i, s, j, s), b = shifted(i, s, j, -s), cc = shifted(i, -s, j, s), d = shifted(i, -s, j, -s);
    std::vector<Complex> out(p);
    for (std::size_t l = 0; l < p; ++l) out[l] = (a[l] - b[l] - cc[l] + d[l]) / (4 * s * s);
    return out;
  };
  Eigen::MatrixXcd J(p, p);
  std::vector<Eigen::MatrixXcd> H(p, Eigen::MatrixXcd(p, p));  // H[l](i,j) = d_i d_j Z^l
  for (std::size_t i = 0; i < p; ++i) {
    const auto coarse = d1(i, h), fine = d1(i, h / 2);
    for (std::size_t l = 0; l < p; ++l) J(l, i) = (4.0 * fine[l] - coarse[l]) / 3.0;
    for (std::size_t j = 0; j < p; ++j) {
      const auto c2 = d2(i, j, h), f2 = d2(i, j, h / 2);
      for (std::size_t l = 0; l < p; ++l) H[l](i, j) = (4.0 * f2[l] - c2[l]) / 3.0;
    }
  }
  const Eigen::MatrixXcd inv = J.inverse();
  std::vector<Complex> dlog(p, 0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t l = 0; l < p; ++l)
      for (std::size_t m = 0; m < p; ++m) dlog[i] += inv(m, l) * H[l](m, i);
  std::vector<Complex> s(p * p * p, 0);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        Complex v = 0;
        for (std::size_t l = 0; l < p; ++l) v += inv(k, l) * H[l](i, j);
        if (k == i) v -= dlog[j] / double(p + 1);
        if (k == j) v -= dlog[i] / double(p + 1);
        s[(k * p + i) * p + j] = v;
      }
  return s;
}

}  // namespace

TEST_CASE("one-variable Schwarzian of powers") {
  // S(z^k) = (1 - k^2) / (2 z^2)
  CHECK_THAT(schwarzian_1d(power_map(2), 1.0).real(), WithinAbs(-1.5, 1e-12));
  const Complex z(0.3, -0.7);
  const Complex expect = (1.0 - 9.0) / (2.0 * z * z);
  CHECK(std::abs(schwarzian_1d(power_map(3), z) - expect) < 1e-12 * std::abs(expect));
  CHECK_THROWS_AS(schwarzian_1d(power_map(2), 0.0), EvaluationError);
  const auto inv = make_map(1, {RationalFunction::from(one(1), var(1, 0))});
  CHECK_THROWS_AS(schwarzian_1d(inv, 0.0), EvaluationError);
}

TEST_CASE("Mobius maps have vanishing one-variable Schwarzian") {
  MapSampler s(3);
  for (int t = 0; t < 20; ++t) {
    const auto f = s.projective(1);
    CHECK(std::abs(schwarzian_1d(f, s.point(1, 0.5)[0])) < 1e-9);
  }
}

TEST_CASE("one-variable cocycle relation") {
  MapSampler s(4);
  for (int t = 0; t < 10; ++t) {
    const auto f = s.polynomial(1, 3), g = s.rational_1d(2);
    const Complex z = s.point(1, 0.2)[0];
    const Complex fz = f.evaluate({z})[0];
    const Complex df = f.components[0].derivative(0).evaluate({z});
    const Complex lhs = schwarzian_1d(compose_1d(g, f), z);
    const Complex rhs = schwarzian_1d(g, fz) * df * df + schwarzian_1d(f, z);
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("projective maps in several variables have vanishing Schwarzian") {
  MapSampler s(5);
  for (std::size_t p : {2u, 3u}) {
    for (int t = 0; t < 10; ++t) {
      const auto sv = schwarzian_nd(s.projective(p), s.point(p, 0.5));
      CHECK(sv.max_abs() < 1e-9);
    }
  }
  const auto id = schwarzian_nd(RationalMap::identity(3), {0.1, 0.2, 0.3});
  CHECK(id.max_abs() == 0.0);
}

TEST_CASE("Schwarzian of a cubic map agrees with finite differences") {
  MapSampler s(6);
  for (std::size_t p : {2u, 3u}) {
    for (int t = 0; t < 5; ++t) {
      const auto f = s.polynomial(p, 3);
      const auto z = s.point(p, 0.3);
      const auto exact = schwarzian_nd(f, z);
      const auto approx = fd_schwarzian(f, z, 1e-3);
      double scale = std::max(1.0, exact.max_abs()), err = 0;
      for (std::size_t u = 0; u < approx.size(); ++u) err = std::max(err, std::abs(approx[u] - exact.data[u]));
      CHECK(err < 1e-6 * scale);
      CHECK(exact.symmetry_defect() < 1e-12);
      CHECK(exact.trace_defect() < 1e-12);
    }
  }
}

TEST_CASE("foliated Schwarzian") {
  // (z, w) -> (z^2, w) with one-dimensional leaves: the leafwise value is -3/2 at z = 1.
  const auto f = make_map(2, {RationalFunction::from(var(2, 0).pow(2), one(2)), RationalFunction::from(var(2, 1), one(2))}, 1);
  CHECK_THAT(schwarzian_foliated(f, {1.0, 0.4}).scalar().real(), WithinAbs(-1.5, 1e-12));

  const auto bad = make_map(2, {RationalFunction::from(var(2, 0), one(2)), RationalFunction::from(var(2, 1) + var(2, 0), one(2))}, 1);
  CHECK(foliation_defect(bad, {0.1, 0.1}) == 1.0);
  CHECK_THROWS_AS(schwarzian_foliated(bad, {0.1, 0.1}), ArgumentError);

  MapSampler s(7);
  for (int t = 0; t < 5; ++t) {
    const auto m = s.foliated_projective(2, 2);
    CHECK(schwarzian_foliated(m, s.point(4, 0.4)).max_abs() < 1e-9);
  }
}

TEST_CASE("cochain identity for the leafwise Schwarzian") {
  MapSampler s(8);
  for (int t = 0; t < 10; ++t) {
    const auto f = s.foliated_polynomial(2, 1, 3);
    CHECK(atiyah_identity_residual(f, s.point(3, 0.3)) < 1e-8);
  }
  CHECK(atiyah_identity_residual(RationalMap::identity(2), {0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(atiyah_identity_residual(power_map(2), {1.0}), ArgumentError);
}

TEST_CASE("singular Jacobian and malformed points") {
  const auto f = make_map(2, {RationalFunction::from(var(2, 0).pow(2), one(2)), RationalFunction::from(var(2, 1), one(2))});
  CHECK_THROWS_AS(schwarzian_nd(f, {0.0, 0.5}), EvaluationError);
  CHECK_THROWS_AS(schwarzian_nd(f, {0.5}), ArgumentError);
  CHECK_THROWS_AS(schwarzian_1d(f, 1.0), ArgumentError);
}

TEST_CASE("rational map JSON round trip") {
  MapSampler s(9);
  const auto f = s.foliated_polynomial(2, 1, 2);
  const auto j = rational_map_to_json(f);
  CHECK(rational_map_to_json(rational_map_from_json(j)) == j);

  const auto parsed = rational_map_from_json(nlohmann::json::parse(
      R"({"dimension":1,"components":[{"numerator":[{"monomial":[2],"re":"1/2"}]}]})"));
  CHECK(parsed.evaluate({2.0})[0] == Complex(2.0, 0.0));
  CHECK_THROWS_AS(rational_map_from_json(nlohmann::json::parse(R"({"dimension":2,"components":[]})")), ArgumentError);
  CHECK_THROWS_AS(rational_map_from_json(nlohmann::json::parse(R"({"components":[]})")), ArgumentError);
  CHECK_THROWS_AS(rational_map_from_json(nlohmann::json::parse(
                      R"({"dimension":1,"components":[{"numerator":[{"monomial":[1],"re":1.5}]}]})")),
                  ArgumentError);
}

TEST_CASE("constant holomorphic sectional curvature") {
  const int n = 3;
  const double k = 0.7;
  const auto R = constant_curvature(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double expect = k * ((i == j) * (a == b) + (i == b) * (a == j));
          CHECK(std::abs(R(i, j, a, b) - expect) < 1e-15);
        }
  const auto ric = R.ricci();
  CHECK(std::abs(ric[0] - Complex(k * (n + 1))) < 1e-14);
  CHECK(std::abs(R.scalar() - Complex(k * n * (n + 1))) < 1e-13);
  const auto e = eta_identity_residual(R);
  CHECK(e.residual < 1e-12);
  CHECK(std::abs(e.integrand) < 1e-12);
}

TEST_CASE("Einstein samples and the curvature identity") {
  for (int n : {2, 3, 4}) {
    const auto R = make_einstein_curvature(n, 1.3, 42);
    CHECK(R.einstein_defect() < kEinsteinTolerance);
    CHECK(R.symmetry_defect() < 1e-12);
    CHECK(make_einstein_curvature(n, 1.3, 42).R == R.R);
    const auto e = eta_identity_residual(R);
    CHECK(e.residual < 1e-9);
    CHECK(e.integrand > 0);
    CHECK(std::abs(e.integrand_imag) < 1e-9);
    const auto e2 = eta_identity_residual(2.0 * R);
    CHECK(std::abs(e2.integrand - 4 * e.integrand) < 1e-9 * std::max(1.0, e.integrand));
  }
  auto R = make_einstein_curvature(3, 1.0, 1);
  R(0, 0, 0, 0) += 1.0;
  CHECK_THROWS_AS(eta_identity_residual(R), PreconditionError);
  CHECK_THROWS_AS(make_einstein_curvature(1, 1.0, 1), ArgumentError);
}
