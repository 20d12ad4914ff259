#pragma once

// Rational self-maps of C^n given by exact coefficients, with an optional
// split into leaf coordinates z (first p) and transverse coordinates w.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chevgrade/analytic/polynomial.hpp"
#include "chevgrade/error.hpp"

namespace chevgrade::analytic {

struct RationalMap {
  std::size_t dimension = 0;
  std::optional<std::size_t> leaf_dimension;
  std::vector<RationalFunction> components;  // one per output coordinate

  void validate() const {
    if (dimension == 0) throw ArgumentError("map dimension must be positive");
    if (components.size() != dimension) {
      throw ArgumentError("map has " + std::to_string(components.size()) + " components, expected " +
                          std::to_string(dimension));
    }
    for (const auto& c : components) {
      if (c.num.num_vars() != dimension || c.den.num_vars() != dimension) {
        throw ArgumentError("component polynomial over the wrong number of variables");
      }
      if (c.den.is_zero()) throw ArgumentError("denominator is identically zero");
    }
    if (leaf_dimension && (*leaf_dimension == 0 || *leaf_dimension > dimension)) {
      throw ArgumentError("leaf dimension out of range");
    }
  }

  std::size_t leaf() const { return leaf_dimension.value_or(dimension); }

  std::vector<Complex> evaluate(const std::vector<Complex>& z) const {
    std::vector<Complex> out;
    for (const auto& c : components) out.push_back(c.evaluate(z));
    return out;
  }

  static RationalMap identity(std::size_t n) {
    RationalMap f;
    f.dimension = n;
    for (std::size_t i = 0; i < n; ++i) {
      f.components.push_back(RationalFunction::from(Polynomial::variable(n, i), Polynomial::constant(n, {1, 0})));
    }
    return f;
  }
};

namespace detail {

inline Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.get<long>()));
  throw ArgumentError("coefficient must be an integer or a \"num/den\" string");
}

inline Polynomial json_polynomial(const nlohmann::json& j, std::size_t n) {
  if (!j.is_array()) throw ArgumentError("polynomial must be a list of terms");
  Polynomial p(n);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("monomial")) throw ArgumentError("term needs a \"monomial\" field");
    Monomial m = t.at("monomial").get<Monomial>();
    ComplexRational c{t.contains("re") ? json_rational(t.at("re")) : Rational(0),
                      t.contains("im") ? json_rational(t.at("im")) : Rational(0)};
    p.add_term(m, c);
  }
  return p;
}

inline nlohmann::json polynomial_json(const Polynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    out.push_back({{"monomial", m}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  }
  return out;
}

}  // namespace detail

/// {"dimension": n, "leaf_dimension": p (optional), "components":
///  [{"numerator": [terms], "denominator": [terms]}]}; a missing
/// denominator means 1.
inline RationalMap rational_map_from_json(const nlohmann::json& j) {
  try {
    RationalMap f;
    f.dimension = j.at("dimension").get<std::size_t>();
    if (j.contains("leaf_dimension")) f.leaf_dimension = j.at("leaf_dimension").get<std::size_t>();
    for (const auto& c : j.at("components")) {
      Polynomial num = detail::json_polynomial(c.at("numerator"), f.dimension);
      Polynomial den = c.contains("denominator") ? detail::json_polynomial(c.at("denominator"), f.dimension)
                                                 : Polynomial::constant(f.dimension, {1, 0});
      f.components.push_back(RationalFunction::from(std::move(num), std::move(den)));
    }
    f.validate();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed rational map: ") + e.what());
  }
}

inline nlohmann::json rational_map_to_json(const RationalMap& f) {
  nlohmann::json j;
  j["dimension"] = f.dimension;
  if (f.leaf_dimension) j["leaf_dimension"] = *f.leaf_dimension;
  j["components"] = nlohmann::json::array();
  for (const auto& c : f.components) {
    if (c.power != 1) throw ArgumentError("only undifferentiated maps are serializable");
    j["components"].push_back(
        {{"numerator", detail::polynomial_json(c.num)}, {"denominator", detail::polynomial_json(c.den)}});
  }
  return j;
}

/// g o f for one-variable maps, by homogenized substitution.
inline RationalMap compose_1d(const RationalMap& g, const RationalMap& f) {
  if (g.dimension != 1 || f.dimension != 1) throw ArgumentError("compose_1d needs one-variable maps");
  const auto& G = g.components[0];
  const auto& F = f.components[0];
  if (G.power != 1 || F.power != 1) throw ArgumentError("compose_1d needs undifferentiated maps");
  const int d = std::max(G.num.degree(), G.den.degree());
  // P(N/D) * D^d = sum c_e N^e D^(d-e)
  auto substitute = [&](const Polynomial& P) {
    Polynomial out(1);
    for (const auto& [m, c] : P.terms()) out += c * (F.num.pow(m[0]) * F.den.pow(d - m[0]));
    return out;
  };
  RationalMap h;
  h.dimension = 1;
  h.components.push_back(RationalFunction::from(substitute(G.num), substitute(G.den)));
  return h;
}

}  // namespace chevgrade::analytic
