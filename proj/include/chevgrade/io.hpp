#pragma once

// JSON views of root systems, structure constants and gradings.
// Object keys serialize in sorted order, so output is byte-stable.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chevgrade/chevalley.hpp"
#include "chevgrade/cominiscule.hpp"
#include "chevgrade/error.hpp"
#include "chevgrade/root_system.hpp"

namespace chevgrade {

using Json = nlohmann::json;

inline Json root_system_to_json(const RootSystem& rs) {
  Json roots = Json::array();
  for (const auto& r : rs.positive_roots()) roots.push_back(r.coeffs);
  return {{"type", rs.type().family_name()},
          {"rank", rs.rank()},
          {"positive_roots", roots},
          {"cartan_matrix", rs.cartan_matrix()}};
}

inline SimpleType simple_type_from_json(const Json& j) {
  SimpleType t{SimpleType::parse_family(j.at("type").get<std::string>()), j.at("rank").get<int>()};
  t.validate();
  return t;
}

/// {"type", "rank", "dimension", "basis": [labels], "structure_constants":
///  [{"x": i, "y": j, "result": [[k, c], ...]}]} listing nonzero [e_i, e_j], i < j.
inline Json structure_constants_to_json(const ChevalleyAlgebra& alg) {
  Json labels = Json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i) labels.push_back(alg.label(i));
  Json entries = Json::array();
  for (std::size_t x = 0; x < alg.dim(); ++x) {
    for (std::size_t y = x + 1; y < alg.dim(); ++y) {
      const auto& r = alg.basis_bracket(x, y);
      if (r.empty()) continue;
      Json res = Json::array();
      for (const auto& t : r) res.push_back({t.index, t.coeff});
      entries.push_back({{"x", x}, {"y", y}, {"result", res}});
    }
  }
  return {{"type", alg.root_system().type().family_name()},
          {"rank", alg.rank()},
          {"dimension", alg.dim()},
          {"basis", labels},
          {"structure_constants", entries}};
}

/// Rebuilds the algebra from exported constants. The basis labels must match
/// the canonical basis of the stated type; brackets are taken as given
/// (antisymmetry fills the transposed entries).
inline ChevalleyAlgebra structure_constants_from_json(const Json& j) {
  try {
    RootSystem rs = build_root_system(simple_type_from_json(j));
    const std::size_t dim = static_cast<std::size_t>(rs.rank()) + rs.roots().size();
    if (j.at("dimension").get<std::size_t>() != dim) throw ArgumentError("dimension does not match the type");
    StructureTable table(dim);
    for (const auto& e : j.at("structure_constants")) {
      const auto x = e.at("x").get<std::size_t>(), y = e.at("y").get<std::size_t>();
      if (x >= dim || y >= dim || x >= y) throw ArgumentError("structure constant index out of order or range");
      BracketResult r, neg;
      for (const auto& t : e.at("result")) {
        const auto k = t.at(0).get<std::size_t>();
        const auto c = t.at(1).get<std::int64_t>();
        if (k >= dim) throw ArgumentError("bracket result index out of range");
        if (c == 0) continue;
        r.push_back({static_cast<std::uint32_t>(k), c});
        neg.push_back({static_cast<std::uint32_t>(k), -c});
      }
      table.at(x, y) = std::move(r);
      table.at(y, x) = std::move(neg);
    }
    ChevalleyAlgebra alg(std::move(rs), std::move(table));
    const auto& labels = j.at("basis");
    if (labels.size() != dim) throw ArgumentError("basis label count does not match the dimension");
    for (std::size_t i = 0; i < dim; ++i) {
      if (labels[i].get<std::string>() != alg.label(i)) {
        throw ArgumentError("basis label " + std::to_string(i) + " is '" + labels[i].get<std::string>() +
                            "', expected '" + alg.label(i) + "'");
      }
    }
    return alg;
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("malformed structure constants: ") + e.what());
  }
}

inline Json grading_to_json(const Grading& g) {
  Json gamma = Json::array();
  for (const auto& c : klingler_weight(g).gamma) {
    if (is_integer(c)) {
      gamma.push_back(to_int64(c));
    } else {
      gamma.push_back(to_string(c));
    }
  }
  return {{"type", g.type().family_name()},
          {"rank", g.type().rank},
          {"node", g.marked_node() + 1},
          {"dims", {{"minus", g.dim_minus()}, {"zero", g.dim_zero()}, {"plus", g.dim_plus()}}},
          {"gamma", gamma},
          {"Gamma_order", diagram_automorphisms(g).size()}};
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ArgumentError("invalid JSON in " + path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  out << text;
  if (!out) throw ArgumentError("write failed for " + path);
}

}  // namespace chevgrade
